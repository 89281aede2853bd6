"""Points of the schemes Z_r and the Newton lifting between levels.

An R-point of Z_r is a triple ``(q, xbar, ybar)``: ``q`` monic of degree N,
``xbar`` an n-vector modulo ``q^r`` and ``ybar`` an l-vector modulo
``q^(r-1)``, subject to

    (3) f(xbar, ybar) = 0                mod q^(r-1)
    (4) Q(xbar, ybar) = 0                mod q
    (5) Chat f(xbar, ytilde) = 0         mod q^r   for any lift ytilde of ybar
    (6) Q(xbar, ybar)/q is a unit        mod q^(r-2)   (only when r >= 3)

``Z_r x_{V_r} V_{r+1}`` keeps ``xbar`` modulo ``q^(r+1)`` instead.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .algebra.series import TruncSeries
from .algebra.upoly import QuotientRing, UPoly, parse_upoly
from .errors import (
    AlgebraError,
    InsufficientTruncation,
    NoSolution,
    NotAUnit,
    NotDivisible,
    NotOnX,
    PreconditionViolated,
    SearchSpaceTooLarge,
)
from .system import SystemF
from .weierstrass import nilpotency_order, weierstrass_divide


def _as_level(ctx: QuotientRing, values):
    return tuple(ctx(v) for v in values)


@dataclass(frozen=True, eq=False)
class ZrPoint:
    S: SystemF
    r: int
    q: UPoly
    xbar: tuple
    ybar: tuple

    @classmethod
    def make(cls, S, r, q, xbar, ybar):
        """Build from polynomials (or strings in ``t``); reduces modulo the right powers."""
        if r < 2:
            raise PreconditionViolated("Z_r needs r >= 2")
        R = S.ring
        if isinstance(q, str):
            q = parse_upoly(q, R)
        if len(xbar) != S.n or len(ybar) != S.l:
            raise PreconditionViolated(f"expected {S.n} x-residues and {S.l} y-residues")
        return cls(S, r, q, _as_level(QuotientRing(R, q, r), xbar),
                   _as_level(QuotientRing(R, q, r - 1), ybar))

    @property
    def ring(self):
        return self.S.ring

    @property
    def N(self):
        return self.q.degree

    def ctx(self, m):
        return QuotientRing(self.ring, self.q, m)

    def key(self):
        return (self.r, self.q.coeffs, tuple(x.rep.coeffs for x in self.xbar),
                tuple(y.rep.coeffs for y in self.ybar))

    def __eq__(self, other):
        return isinstance(other, ZrPoint) and self.S is other.S and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def to_json(self):
        return {
            "q": str(self.q),
            "xbar": [str(x) for x in self.xbar],
            "ybar": [str(y) for y in self.ybar],
            "r": self.r,
        }

    def __repr__(self):
        return f"ZrPoint({self.to_json()})"


@dataclass(frozen=True, eq=False)
class ZrExtPoint(ZrPoint):
    """Same fields as :class:`ZrPoint`, but ``xbar`` is kept modulo ``q^(r+1)``."""

    @classmethod
    def make(cls, S, r, q, xbar, ybar):
        R = S.ring
        if isinstance(q, str):
            q = parse_upoly(q, R)
        if len(xbar) != S.n or len(ybar) != S.l:
            raise PreconditionViolated(f"expected {S.n} x-residues and {S.l} y-residues")
        return cls(S, r, q, _as_level(QuotientRing(R, q, r + 1), xbar),
                   _as_level(QuotientRing(R, q, r - 1), ybar))

    def base_point(self) -> ZrPoint:
        return ZrPoint(self.S, self.r, self.q, tuple(x.reduce(self.r) for x in self.xbar), self.ybar)

    def __eq__(self, other):
        return isinstance(other, ZrExtPoint) and self.S is other.S and self.key() == other.key()

    def __hash__(self):
        return hash(("ext",) + self.key())


@dataclass
class MembershipReport:
    passed: bool
    failed: list = field(default_factory=list)

    def to_json(self):
        return {"pass": self.passed, "failed-conditions": self.failed}


def _chat_f(S, x, y):
    return S.Chat_at(x, y).apply(S.f_at(x, y))


def check_membership(p: ZrPoint) -> MembershipReport:
    S, r = p.S, p.r
    failed = []
    x_low = [x.reduce(r - 1) for x in p.xbar]
    if not all(v.is_zero() for v in S.f_at(x_low, p.ybar)):
        failed.append(3)
    x1 = [x.reduce(1) for x in p.xbar]
    y1 = [y.reduce(1) for y in p.ybar]
    q_divides_Q = S.Q_at(x1, y1).is_zero()
    if not q_divides_Q:
        failed.append(4)
    ytilde = [y.lift(r) for y in p.ybar]
    if not all(v.is_zero() for v in _chat_f(S, list(p.xbar), ytilde)):
        failed.append(5)
    if r >= 3:
        ok = False
        if q_divides_Q:
            Qv = S.Q_at(x_low, p.ybar)
            ok = Qv.divide_by_q().is_unit()
        if not ok:
            failed.append(6)
    return MembershipReport(passed=not failed, failed=failed)


def lift_independence_check(p: ZrPoint, lifts) -> bool:
    """Whether ``Chat f(xbar, ytilde) mod q^r`` is the same for every given lift."""
    ctx = p.ctx(p.r)
    values = []
    for lift in lifts:
        yt = [ctx(v) for v in lift]
        for a, b in zip(yt, p.ybar):
            if a.reduce(p.r - 1) != b:
                raise PreconditionViolated(f"{a} is not a lift of {b}")
        values.append(tuple(_chat_f(p.S, list(p.xbar), yt)))
    return all(v == values[0] for v in values)


def newton_inverse(e: ZrExtPoint) -> ZrPoint:
    """The inverse of ``Z_(r+1) -> Z_r x_{V_r} V_(r+1)`` for ``r >= 3``:
    ``ybar' = ytilde - (Q/q)^(-1) (Chat f(xbar, ytilde))/q``."""
    S, r = e.S, e.r
    if r < 3:
        raise PreconditionViolated("Newton's formula needs r >= 3")
    rep = check_membership(e.base_point())
    if not rep.passed:
        raise PreconditionViolated(f"input fails membership conditions {rep.failed}")
    X = list(e.xbar)
    Y = [y.lift(r + 1) for y in e.ybar]
    g = _chat_f(S, X, Y)
    Xr = [x.reduce(r) for x in X]
    Yr = [y.lift(r) for y in e.ybar]
    s = S.Q_at(X, Y).divide_by_q()  # level r
    try:
        s_inv = s.inverse()
    except NotAUnit:
        raise NotAUnit("Q/q is not invertible modulo q") from None
    h = [s_inv * gi.divide_by_q() for gi in g]
    ynew = [y - hi for y, hi in zip(Yr, h)]
    return ZrPoint(S, r + 1, e.q, tuple(X), tuple(ynew))


def forget(p: ZrPoint) -> ZrExtPoint:
    """``Z_(r+1) -> Z_r x_{V_r} V_(r+1)``: keep ``xbar`` and reduce ``ybar`` one level."""
    r = p.r - 1
    if r < 2:
        raise PreconditionViolated("forget needs a point of level >= 3")
    return ZrExtPoint(p.S, r, p.q, p.xbar, tuple(y.reduce(r - 1) for y in p.ybar))


def reduce_level(p: ZrPoint, r: int) -> ZrPoint:
    if not 2 <= r <= p.r:
        raise PreconditionViolated(f"cannot reduce level {p.r} to {r}")
    return ZrPoint(p.S, r, p.q, tuple(x.reduce(r) for x in p.xbar),
                   tuple(y.reduce(r - 1) for y in p.ybar))


# -- the r = 2 scan ---------------------------------------------------------------------

SCAN_LIMIT = 10 ** 6


def r2_counterexample_scan(P, p: int, max_witnesses: int = 5) -> dict:
    """Exhaustively compare ``Z_3(F_p)`` with ``Z_2 x_{V_2} V_3 (F_p)`` for
    ``f = y (y - P(x))`` and ``q = t - c``, and report fibers of the forgetful
    map that are empty or have at least two points."""
    from .algebra.mpoly import MPoly
    from .algebra.scalars import PrimeField

    F = PrimeField(p)
    if p ** 6 > SCAN_LIMIT:
        raise SearchSpaceTooLarge(f"p^6 = {p ** 6} candidates exceed the limit {SCAN_LIMIT}")
    if isinstance(P, str):
        from .algebra.parser import parse_poly

        P = parse_poly(P, ["x"], F)
    else:
        P = P.change_ring(F).with_vars(["x"])
    Px = P.with_vars(["x", "y"])
    yv = MPoly.var(F, ["x", "y"], "y")
    S = SystemF(F, 1, 1, [yv * (yv - Px)])
    degenerate = None
    if p == 2:
        degenerate = "characteristic 2: Q = 2y - P(x) reduces to -P(x)"
    elif P.is_zero():
        degenerate = "P = 0: Q = 2y vanishes on X = {y = 0}, so Q is a zero divisor on X"
    elems = [c.data for c in F.elements()]
    fibers = {}
    z3 = 0
    for c in elems:
        q = UPoly(F, [-c, 1])
        # targets: points of Z_2 with xbar mod q^3 and ybar mod q
        for xc in product(elems, repeat=3):
            for y0 in elems:
                tgt = ZrExtPoint.make(S, 2, q, [UPoly(F, xc)], [UPoly(F, [y0])])
                if check_membership(tgt.base_point()).passed:
                    fibers[tgt] = []
        for xc in product(elems, repeat=3):
            for yc in product(elems, repeat=2):
                pt = ZrPoint.make(S, 3, q, [UPoly(F, xc)], [UPoly(F, yc)])
                if check_membership(pt).passed:
                    z3 += 1
                    img = forget(pt)
                    fibers.setdefault(img, []).append(pt)
    def sort_key(pt):
        return str(pt.to_json())

    empty = sorted((t for t, pre in fibers.items() if not pre), key=sort_key)
    multi = sorted(((t, pre) for t, pre in fibers.items() if len(pre) >= 2), key=lambda tp: sort_key(tp[0]))
    return {
        "p": p,
        "P": str(P),
        "degenerate": degenerate,
        "z3_points": z3,
        "targets": len(fibers),
        "empty_fibers": len(empty),
        "multi_fibers": len(multi),
        "non_surjective_witnesses": [t.to_json() for t in empty[:max_witnesses]],
        "non_injective_witnesses": [
            {"target": t.to_json(), "size": len(pre), "preimages": sorted((x.to_json() for x in pre), key=str)}
            for t, pre in multi[:max_witnesses]
        ],
    }


# -- arcs and the Z-system ---------------------------------------------------------------

def _series_mod(poly: UPoly, q: UPoly, k: int, T: int, what: str):
    """Reduce a series known modulo ``t^T`` modulo ``q^k``; needs ``t^T`` in ``(q^k)``."""
    qk = q ** k
    if not (UPoly.monomial(poly.ring, T) % qk).is_zero():
        raise InsufficientTruncation(f"truncation T={T} does not determine {what} modulo q^{k}")
    return poly % qk


def arc_to_zr(S: SystemF, arc, r: int) -> ZrPoint:
    """Reduce an arc ``(x(t), y(t))`` on X to its point of Z_r."""
    xs, ys = arc
    A = xs[0].ring
    SA = S.base_change(A)
    T = min(s.T for s in list(xs) + list(ys))
    pt = SA.point(xs, ys)
    for fi in SA.f:
        if not all(c.is_zero() for c in fi.eval(pt).coeffs[:T]):
            raise NotOnX("the arc does not satisfy f = 0 up to its truncation")
    W = weierstrass_divide(SA.Q.eval(pt))
    q = W.q
    if q.degree < 1:
        raise PreconditionViolated("the arc does not meet the different (N = 0)")
    xbar = [_series_mod(x.to_poly(), q, r, T, "x") for x in xs]
    ybar = [_series_mod(y.to_poly(), q, r - 1, T, "y") for y in ys]
    point = ZrPoint.make(SA, r, q, xbar, ybar)
    rep = check_membership(point)
    if not rep.passed:  # pragma: no cover - would contradict the construction
        raise AssertionError(f"arc image fails membership {rep.failed}")
    return point


def _residue_poly(p: UPoly):
    return p.residue()


def _lift_const(p: UPoly, A):
    return UPoly(A, [A.embed(c) if c.ring != A else c for c in p.coeffs])


def default_tail(gamma0, zr: ZrPoint):
    """The tail of ``gamma0``'s x beyond ``t^(N r)``, lifted to constants of A."""
    A = zr.ring
    N, r = zr.N, zr.r
    out = []
    for x0, xb in zip(gamma0[0], zr.xbar):
        diff = x0.to_poly() - _residue_poly(xb.rep)
        out.append(_lift_const(UPoly._raw(diff.ring, diff.coeffs[N * r:]), A))
    return out


def solve_z_system(S: SystemF, gamma0, zr: ZrPoint, T: int, tail=None):
    """The unique arc over A lifting ``gamma0`` whose x is ``xbar + q^r * tail``
    and whose image in Z_r is ``zr``; returned modulo ``t^T``.

    ``gamma0`` is a pair of lists of series over the residue field; it must be
    known to order ``T + (a-1) a N + N (r-1)``.  ``tail`` defaults to the tail of
    ``gamma0``; any supplied tail is used as an exact polynomial.
    """
    A = zr.ring
    SA = S.base_change(A)
    a = nilpotency_order(A)
    q, r, N = zr.q, zr.r, zr.N
    if q.residue() != UPoly.monomial(A.base, N):
        raise NoSolution(f"q = {q} does not reduce to t^{N}")
    rep = check_membership(zr)
    if not rep.passed:
        raise NoSolution(f"the point fails membership conditions {rep.failed}")
    x0s, y0s = gamma0
    M = T + (a - 1) * a * N
    need = M + N * (r - 1)
    if min(s.T for s in list(x0s) + list(y0s)) < need:
        raise InsufficientTruncation(f"gamma0 must be known to order {need}")
    # residues must match gamma0
    for x0, xb in zip(x0s, zr.xbar):
        if not (x0.to_poly() - _residue_poly(xb.rep)).truncate(N * r).is_zero():
            raise NoSolution("xbar does not reduce to gamma0")
    for y0, yb in zip(y0s, zr.ybar):
        if not (y0.to_poly().truncate(need) - _residue_poly(yb.rep)).truncate(N * (r - 1)).is_zero():
            raise NoSolution("ybar does not reduce to gamma0")
    if tail is None:
        tail = default_tail(gamma0, zr)
    tail = [h.to_poly() if isinstance(h, TruncSeries) else h for h in tail]
    qr = q ** r
    qr1 = q ** (r - 1)
    xs = [TruncSeries(A, (xb.rep + qr * _lift_const(h, A)).coeffs, M) for xb, h in zip(zr.xbar, tail)]
    ys = []
    for y0, yb in zip(y0s, zr.ybar):
        diff = y0.to_poly().truncate(need) - _residue_poly(yb.rep)
        w = _lift_const(UPoly._raw(diff.ring, diff.coeffs[N * (r - 1):]), A)
        ys.append(TruncSeries(A, (yb.rep + qr1 * w).coeffs, M))
    P = M
    for _ in range(a - 1):
        pt = SA.point([x.truncate(P) for x in xs], [y.truncate(P) for y in ys])
        fv = [fi.eval(pt) for fi in SA.f]
        if all(all(c.is_zero() for c in v.coeffs) for v in fv):
            break
        Chat = [[SA.Chat[i, j].eval(pt) for j in range(SA.l)] for i in range(SA.l)]
        g = []
        for i in range(SA.l):
            acc = Chat[i][0] * fv[0]
            for j in range(1, SA.l):
                acc = acc + Chat[i][j] * fv[j]
            g.append(acc)
        Qv = SA.Q.eval(pt)
        P2 = P - a * N
        try:
            s = _divide_series_by(Qv, q, P2)
            corr = [_divide_series_by(gi, q, P2) for gi in g]
        except NotDivisible as exc:
            raise NoSolution(str(exc)) from None
        s_inv = s.inverse()
        ys = [y.truncate(P2) - s_inv * c for y, c in zip(ys, corr)]
        P = P2
    xs = [x.truncate(T) for x in xs]
    ys = [y.truncate(T) for y in ys]
    pt = SA.point(xs, ys)
    for fi in SA.f:
        if not all(c.is_zero() for c in fi.eval(pt).coeffs):
            raise NoSolution("Newton iteration did not produce a solution")
    return xs, ys


def _divide_series_by(g: TruncSeries, q: UPoly, P: int) -> TruncSeries:
    """Quotient of a series divisible by ``q``; valid modulo ``t^P``."""
    h, rem = g.to_poly().divmod(q)
    if not rem.is_zero():
        raise NotDivisible(f"series is not divisible by {q}")
    return TruncSeries(g.ring, h.coeffs, P)


def zr_from_json(S: SystemF, data) -> ZrPoint:
    R = S.ring
    return ZrPoint.make(S, int(data["r"]), parse_upoly(data["q"], R),
                        [parse_upoly(s, R) for s in data["xbar"]],
                        [parse_upoly(s, R) for s in data["ybar"]])


def zr_ext_from_json(S: SystemF, data) -> ZrExtPoint:
    R = S.ring
    return ZrExtPoint.make(S, int(data["r"]), parse_upoly(data["q"], R),
                           [parse_upoly(s, R) for s in data["xbar"]],
                           [parse_upoly(s, R) for s in data["ybar"]])
