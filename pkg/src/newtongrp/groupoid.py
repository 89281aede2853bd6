"""The Newton groupoid in its explicit chart.

An arrow of level ``r`` based at ``(x, y)`` on X is a pair ``(xi, eta)`` with

    eta + Chat(x, y) u(x, y, xi, eta) = 0,    v(x, y, xi, eta) a unit,

and goes to ``(x + Q^r xi, y + Q^(r-1) eta)``.  Composition, unit and inverse
are explicit in these coordinates; ``v`` is the ratio ``Q(target)/Q(base)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .algebra.linalg import solve_local
from .algebra.scalars import truncated_polynomial_ring
from .errors import (
    EndpointMismatch,
    InvalidArrow,
    NotInNormalForm,
    NotOnDifferent,
    NotOnX,
    OnTheDifferent,
    PreconditionViolated,
    SearchSpaceTooLarge,
)
from .system import SystemF


def _vec(ring, values):
    return tuple(ring(v) for v in values)


def chart_point(S: SystemF, r, x, y, xi, eta):
    ch = S.chart(r)
    return dict(zip(S.xvars, x)) | dict(zip(S.yvars, y)) | dict(zip(ch.xi, xi)) | dict(zip(ch.eta, eta))


def _chart_values(S, r, x, y, xi, eta):
    ch = S.chart(r)
    pt = chart_point(S, r, x, y, xi, eta)
    return [u.eval(pt) for u in ch.u], ch.v.eval(pt)


@dataclass(frozen=True, eq=False)
class Arrow:
    S: SystemF
    r: int
    x: tuple
    y: tuple
    xi: tuple
    eta: tuple
    v: object

    @classmethod
    def make(cls, S: SystemF, r: int, x, y, xi, eta) -> "Arrow":
        """Validate the defining equations and compute ``v``."""
        R = S.ring
        x, y, xi, eta = (_vec(R, t) for t in (x, y, xi, eta))
        if len(x) != S.n or len(xi) != S.n or len(y) != S.l or len(eta) != S.l:
            raise PreconditionViolated("coordinate vectors have the wrong length")
        if not all(v.is_zero() for v in S.f_at(x, y)):
            raise NotOnX(f"base point {[str(c) for c in x + y]} is not on X")
        us, v = _chart_values(S, r, x, y, xi, eta)
        Chat = S.Chat_at(x, y)
        resid = [e + c for e, c in zip(eta, Chat.apply(us))]
        if not all(c.is_zero() for c in resid):
            raise InvalidArrow("eta + Chat u != 0")
        if not v.is_unit():
            raise InvalidArrow(f"v = {v} is not a unit")
        return cls(S, r, x, y, xi, eta, v)

    @property
    def ring(self):
        return self.S.ring

    def key(self):
        return (self.r, tuple(c.data for c in self.x + self.y + self.xi + self.eta))

    def __eq__(self, other):
        return isinstance(other, Arrow) and self.S is other.S and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    @property
    def base(self):
        return (self.x, self.y)

    def to_json(self):
        s = lambda vs: [str(c) for c in vs]
        return {"base": {"x": s(self.x), "y": s(self.y)}, "xi": s(self.xi), "eta": s(self.eta),
                "r": self.r, "v": str(self.v)}

    def __repr__(self):
        return f"Arrow({self.to_json()})"


def target(a: Arrow):
    Q = a.S.Q_at(a.x, a.y)
    Qr, Qr1 = Q ** a.r, Q ** (a.r - 1)
    return (tuple(x + Qr * s for x, s in zip(a.x, a.xi)),
            tuple(y + Qr1 * e for y, e in zip(a.y, a.eta)))


def target_chart(a: Arrow):
    """The coordinates ``(v^-r xi, v^(1-r) eta)`` of the same arrow seen from its target."""
    vi = a.v.inverse()
    return (tuple(vi ** a.r * s for s in a.xi), tuple(vi ** (a.r - 1) * e for e in a.eta))


def _check_on_X(S, x, y):
    if not all(v.is_zero() for v in S.f_at(x, y)):
        raise NotOnX(f"point {[str(c) for c in tuple(x) + tuple(y)]} is not on X")


def arrow_from_endpoints(S: SystemF, r: int, p, ptilde) -> Arrow:
    """The unique arrow between two points of U = X minus the different."""
    R = S.ring
    x, y = _vec(R, p[0]), _vec(R, p[1])
    xt, yt = _vec(R, ptilde[0]), _vec(R, ptilde[1])
    _check_on_X(S, x, y)
    _check_on_X(S, xt, yt)
    Q, Qt = S.Q_at(x, y), S.Q_at(xt, yt)
    if not Q.is_unit() or not Qt.is_unit():
        raise OnTheDifferent("Q is not a unit at an endpoint")
    Qi = Q.inverse()
    xi = [(b - a) * Qi ** r for a, b in zip(x, xt)]
    eta = [(b - a) * Qi ** (r - 1) for a, b in zip(y, yt)]
    return Arrow.make(S, r, x, y, xi, eta)


def unit(S: SystemF, r: int, p) -> Arrow:
    R = S.ring
    return Arrow.make(S, r, p[0], p[1], [R.zero] * S.n, [R.zero] * S.l)


def compose(a1: Arrow, a2: Arrow) -> Arrow:
    """``a2 after a1``: first ``a1`` from its base, then ``a2`` from ``target(a1)``."""
    if a1.S is not a2.S or a1.r != a2.r:
        raise EndpointMismatch("arrows belong to different groupoids")
    tx, ty = target(a1)
    if (tx, ty) != (a2.x, a2.y):
        raise EndpointMismatch("a2 does not start where a1 ends")
    v1, r = a1.v, a1.r
    xi = [s + v1 ** r * s2 for s, s2 in zip(a1.xi, a2.xi)]
    eta = [e + v1 ** (r - 1) * e2 for e, e2 in zip(a1.eta, a2.eta)]
    return Arrow.make(a1.S, r, a1.x, a1.y, xi, eta)


def inverse(a: Arrow) -> Arrow:
    tx, ty = target(a)
    vi = a.v.inverse()
    xi = [-(vi ** a.r) * s for s in a.xi]
    eta = [-(vi ** (a.r - 1)) * e for e in a.eta]
    return Arrow.make(a.S, a.r, tx, ty, xi, eta)


def level_map(a: Arrow) -> Arrow:
    """Level ``r+1`` to level ``r``: same base, coordinates multiplied by ``Q(base)``."""
    if a.r < 3:
        raise PreconditionViolated("level_map needs an arrow of level >= 3")
    Q = a.S.Q_at(a.x, a.y)
    return Arrow.make(a.S, a.r - 1, a.x, a.y, [Q * s for s in a.xi], [Q * e for e in a.eta])


# -- enumeration over finite fields -------------------------------------------------------

ENUM_LIMIT = 10 ** 6


def enumerate_X(S: SystemF):
    """All F_p-points of X, by brute force over F_p^(n+l)."""
    F = S.ring
    elems = F.elements()
    if len(elems) ** (S.n + S.l) > ENUM_LIMIT:
        raise SearchSpaceTooLarge("too many candidate points")
    pts = []
    for xs in product(elems, repeat=S.n):
        for ys in product(elems, repeat=S.l):
            if all(v.is_zero() for v in S.f_at(xs, ys)):
                pts.append((tuple(xs), tuple(ys)))
    return pts


def split_U_Delta(S: SystemF, points):
    U, D = [], []
    for p in points:
        (U if S.Q_at(*p).is_unit() else D).append(p)
    return U, D


def arrows_at(S: SystemF, r: int, p):
    """All F_p-arrows based at ``p`` (brute force over the chart coordinates)."""
    F = S.ring
    elems = F.elements()
    if len(elems) ** (S.n + S.l) > ENUM_LIMIT:
        raise SearchSpaceTooLarge("too many candidate arrows")
    out = []
    for xi in product(elems, repeat=S.n):
        for eta in product(elems, repeat=S.l):
            try:
                out.append(Arrow.make(S, r, p[0], p[1], xi, eta))
            except InvalidArrow:
                pass
    return out


# -- fiber groups over the different -----------------------------------------------------

ADDITIVE = "additive"
MULTIPLICATIVE = "multiplicative-semidirect"
TWO_TORSION = "two-torsion-times-additive"


@dataclass(frozen=True, eq=False)
class FiberGroupReport:
    S: SystemF
    r: int
    z: tuple
    kind: str
    n: int
    m: object  # int, or None when not computed
    a: object  # the eta^2 coefficient (l = 1) or None
    fx: tuple  # df/dx at z (l = 1)
    characteristic: int
    singular: bool
    u: tuple  # u(z, xi, eta)
    v: object  # v(z, xi, eta)
    derived_only: bool = False

    def to_json(self):
        return {
            "kind": self.kind,
            "n": self.n,
            "m": self.m,
            "a": None if self.a is None else str(self.a),
            "fx": [str(c) for c in self.fx],
            "characteristic": self.characteristic,
            "singular": self.singular,
            "u": [str(p) for p in self.u],
            "v": str(self.v),
            "constraint": self.constraints(),
            "derived_only": self.derived_only,
        }

    def constraints(self):
        ch = self.S.chart(self.r)
        Chat = self.S.Chat_at(*self.z)
        out = []
        for i, e in enumerate(ch.eta):
            expr = None
            for j, u in enumerate(self.u):
                term = u * Chat[i, j]
                expr = term if expr is None else expr + term
            out.append(str(expr + _var(self.u[0], e)))
        return out


def _var(poly, name):
    from .algebra.mpoly import MPoly

    return MPoly.var(poly.ring, poly.vars, name)


def _restrict_to_z(S, r, z):
    """u and v with the base point substituted, as polynomials in (xi, eta)."""
    ch = S.chart(r)
    chart_vars = ch.xi + ch.eta
    from .algebra.mpoly import MPoly

    R = S.ring
    mapping = {}
    for name, val in zip(S.xvars + S.yvars, tuple(z[0]) + tuple(z[1])):
        mapping[name] = MPoly.const(R, chart_vars, val)
    for name in chart_vars:
        mapping[name] = MPoly.var(R, chart_vars, name)
    uz = tuple(u.eval(mapping) for u in ch.u)
    vz = ch.v.eval(mapping)
    return uz, vz


def fiber_group(S: SystemF, r: int, z) -> FiberGroupReport:
    R = S.ring
    z = (_vec(R, z[0]), _vec(R, z[1]))
    if not all(v.is_zero() for v in S.f_at(*z)) or not S.Q_at(*z).is_zero():
        raise NotOnDifferent("z must satisfy f(z) = 0 and Q(z) = 0")
    C = S.C_at(*z)
    if not all(C[i, j].is_zero() for i in range(S.l) for j in range(S.l)):
        raise NotInNormalForm("df/dy must vanish at z; change coordinates so that l is the tangent dimension of the fiber")
    uz, vz = _restrict_to_z(S, r, z)
    Jx = S.Jx_at(*z)
    singular = _rank(Jx, R) < S.l
    char = R.characteristic
    a = None
    m = None
    fx = tuple(Jx[0]) if S.l == 1 else ()
    derived_only = False
    if S.l == 1:
        a, m = _eta_taylor(S, z)
    if r >= 3 or S.l > 1:
        kind = ADDITIVE
    elif a.is_zero():
        kind = ADDITIVE
    elif singular:
        kind = TWO_TORSION
    elif char == 2:
        kind = ADDITIVE
    else:
        kind = MULTIPLICATIVE
        derived_only = S.n >= 2
    return FiberGroupReport(S=S, r=r, z=z, kind=kind, n=S.n, m=m, a=a, fx=fx,
                            characteristic=char, singular=singular, u=uz, v=vz,
                            derived_only=derived_only)


def _eta_taylor(S, z):
    """For l = 1: the eta^2 coefficient of ``f(x_z, y_z + eta)`` and its eta-order."""
    from .algebra.mpoly import MPoly

    R = S.ring
    mapping = {name: MPoly.const(R, ("eta",), val) for name, val in zip(S.xvars, z[0])}
    mapping[S.yvars[0]] = MPoly.const(R, ("eta",), z[1][0]) + MPoly.var(R, ("eta",), "eta")
    g = S.f[0].eval(mapping)
    a = g.coefficient((2,))
    m = min((e[0] for e in g.terms), default=None)
    return a, m


def _rank(rows, R):
    """Rank of a small matrix over a field (used only for the singularity test)."""
    M = [list(r) for r in rows]
    rank = 0
    cols = len(M[0]) if M else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(M)) if not M[i][c].is_zero()), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = M[rank][c].inverse()
        for i in range(len(M)):
            if i != rank and not M[i][c].is_zero():
                fac = M[i][c] * inv
                M[i] = [a - fac * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def group_elements(report: FiberGroupReport):
    """All F_p-points ``(xi, eta)`` of the fiber group."""
    S, r, z = report.S, report.r, report.z
    return [(a.xi, a.eta, a) for a in arrows_at(S, r, z)]


def fiber_product(g1: Arrow, g2: Arrow) -> Arrow:
    """The group law on the fiber over a point of the different (all arrows are loops)."""
    return compose(g1, g2)


def group_axiom_fuzz(report: FiberGroupReport, samples=None) -> dict:
    """Check the group axioms exhaustively on the F_p-points (or on ``samples``)."""
    S, r, z = report.S, report.r, report.z
    elems = samples if samples is not None else [a for a in arrows_at(S, r, z)]
    e = unit(S, r, z)
    failures = []
    table = {}

    def mul(g, h):
        key = (g.key(), h.key())
        if key not in table:
            table[key] = compose(g, h)
        return table[key]

    def fail(msg):
        if len(failures) < 20:
            failures.append(msg)

    for g in elems:
        if target(g) != (g.x, g.y):
            fail(f"arrow {g.to_json()} is not a loop")
        if mul(e, g) != g or mul(g, e) != g:
            fail(f"identity fails at {g.to_json()}")
        gi = inverse(g)
        if mul(g, gi) != e or mul(gi, g) != e:
            fail(f"inverse fails at {g.to_json()}")
    for g in elems:
        for h in elems:
            gh = mul(g, h)
            if gh.v != g.v * h.v:
                fail(f"v is not multiplicative on {g.to_json()}, {h.to_json()}")
            for k in elems:
                if mul(gh, k) != mul(g, mul(h, k)):
                    fail("associativity fails")
    kind = report.kind
    p = S.ring.characteristic
    one = S.ring.one
    if kind == ADDITIVE:
        for g in elems:
            acc = e
            for _ in range(p):
                acc = mul(acc, g)
            if acc != e:
                fail(f"element {g.to_json()} does not have order dividing p")
            for h in elems:
                if mul(g, h) != mul(h, g):
                    fail("additive group is not commutative")
                if all(x.v == one for x in (g, h)):
                    gh = mul(g, h)
                    if gh.xi != tuple(a + b for a, b in zip(g.xi, h.xi)) or gh.eta != tuple(
                        a + b for a, b in zip(g.eta, h.eta)
                    ):
                        fail("law is not componentwise addition although v = 1")
    elif kind == MULTIPLICATIVE:
        if report.n == 1:
            vs = [g.v for g in elems]
            if len(set(vs)) != len(vs):
                fail("v is not injective on the group")
            if samples is None and len(vs) != p - 1:
                fail(f"expected {p - 1} elements, found {len(vs)}")
    elif kind == TWO_TORSION:
        for g in elems:
            if g.v not in (one, -one):
                fail(f"v = {g.v} is not a sign")
        kernel = [g for g in elems if g.v == one]
        for g in kernel:
            for h in kernel:
                if mul(g, h) != mul(h, g):
                    fail("identity component is not commutative")
        if samples is None and len(elems) != 2 * p ** report.n:
            fail(f"expected {2 * p ** report.n} elements, found {len(elems)}")
    return {"kind": kind, "elements": len(elems), "passed": not failures, "failures": failures}


# -- first-order structure ------------------------------------------------------------------

def lie_algebroid_basis(S: SystemF, r: int, p):
    """The vectors ``w_i`` in ``k^(n+l)``: derivatives at ``delta = 0`` of the
    targets of the first-order arrows ``xi = delta e_i`` at the unit over ``p``."""
    k = S.ring
    x, y = _vec(k, p[0]), _vec(k, p[1])
    _check_on_X(S, x, y)
    D = truncated_polynomial_ring(k, "d", 2)
    SD = S.base_change(D)
    d = D.gen("d")
    xD = [D.embed(c) for c in x]
    yD = [D.embed(c) for c in y]
    zero_n = [D.zero] * S.n
    zero_l = [D.zero] * S.l

    def first_order(xi, eta):
        us, _ = _chart_values(SD, r, xD, yD, xi, eta)
        return [u.data[1] for u in us]  # coefficient of d

    Lxi = [first_order([d if j == i else D.zero for j in range(S.n)], zero_l) for i in range(S.n)]
    Leta = [first_order(zero_n, [d if j == i else D.zero for j in range(S.l)]) for i in range(S.l)]
    Lxi = [[k.elem(c) for c in col] for col in Lxi]
    Leta = [[k.elem(c) for c in col] for col in Leta]
    Chat = S.Chat_at(x, y)
    # (I + Chat Leta) eta1 = -Chat Lxi e_i
    l = S.l
    A = []
    for row in range(l):
        A.append([(k.one if row == c else k.zero) + sum((Chat[row, j] * Leta[c][j] for j in range(l)), k.zero)
                  for c in range(l)])
    rhs = []
    for i in range(S.n):
        rhs.append([-sum((Chat[row, j] * Lxi[i][j] for j in range(l)), k.zero) for row in range(l)])
    etas = solve_local(A, rhs)
    Q = S.Q_at(x, y)
    Qr, Qr1 = Q ** r, Q ** (r - 1)
    out = []
    for i in range(S.n):
        dx = [Qr if j == i else k.zero for j in range(S.n)]
        dy = [Qr1 * e for e in etas[i]]
        out.append(tuple(dx + dy))
    return out
