"""Complete-intersection data ``f = (f_1..f_l)`` in variables ``x_1..x_n, y_1..y_l``.

Derived data: ``C = df/dy`` (l x l), ``Q = det C``, the adjugate ``Chat`` with
``Chat C = C Chat = Q I``, the x-Jacobian ``Jx``, and for each ``r >= 2`` the
chart polynomials ``u`` and ``v`` defined by the exact divisions

    Q^r u = f(x + Q^r xi, y + Q^(r-1) eta) - f(x, y) - Q^(r-1) C eta
    Q v   = Q(x + Q^r xi, y + Q^(r-1) eta)
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra.matrix import SquareMatrix, det_and_adjugate
from .algebra.mpoly import MPoly, exact_divide
from .algebra.parser import parse_poly
from .algebra.scalars import parse_ring
from .errors import NotOnX, PreconditionViolated, VariableMismatch


def _names(stem, k):
    return (stem,) if k == 1 else tuple(f"{stem}{i}" for i in range(1, k + 1))


def default_vars(n, l):
    return _names("x", n), _names("y", l)


def chart_vars(n, l):
    return _names("xi", n), _names("eta", l)


@dataclass(frozen=True, eq=False)
class ChartPolys:
    r: int
    u: tuple
    v: MPoly
    vars: tuple
    xi: tuple
    eta: tuple


class SystemF:
    """Immutable; derived data is computed on first use and cached."""

    def __init__(self, ring, n, l, polys, xvars=None, yvars=None):
        if n < 1 or l < 1:
            raise PreconditionViolated("n and l must be positive")
        if len(polys) != l:
            raise VariableMismatch(f"expected l = {l} polynomials, got {len(polys)}")
        dx, dy = default_vars(n, l)
        self.ring = ring
        self.n = n
        self.l = l
        self.xvars = tuple(xvars) if xvars else dx
        self.yvars = tuple(yvars) if yvars else dy
        self.vars = self.xvars + self.yvars
        fs = []
        for p in polys:
            if isinstance(p, str):
                p = parse_poly(p, self.vars, ring)
            if p.vars != self.vars:
                stray = [v for v in p.used_vars() if v not in self.vars]
                if stray:
                    raise VariableMismatch(
                        f"polynomial {p} uses {stray}, expected variables {list(self.vars)}"
                    )
                p = p.with_vars(self.vars)
            if p.ring != ring:
                p = p.change_ring(ring)
            fs.append(p)
        self.f = tuple(fs)
        self._cache = {}

    # -- derived data ------------------------------------------------------------
    def _cached(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    @property
    def C(self) -> SquareMatrix:
        return self._cached("C", lambda: SquareMatrix(
            [[fi.derivative(y) for y in self.yvars] for fi in self.f]))

    @property
    def Jx(self):
        return self._cached("Jx", lambda: [[fi.derivative(x) for x in self.xvars] for fi in self.f])

    def _det_adj(self):
        return self._cached("det_adj", lambda: det_and_adjugate(self.C))

    @property
    def Q(self) -> MPoly:
        return self._det_adj()[0]

    @property
    def Chat(self) -> SquareMatrix:
        return self._det_adj()[1]

    def chart(self, r: int) -> ChartPolys:
        if r < 2:
            raise PreconditionViolated("chart polynomials need r >= 2")
        return self._cached(("chart", r), lambda: self._build_chart(r))

    def _build_chart(self, r):
        xi, eta = chart_vars(self.n, self.l)
        allv = self.vars + xi + eta
        lift = lambda p: p.with_vars(allv)
        Q = lift(self.Q)
        Qr = Q ** r
        Qr1 = Q ** (r - 1)
        mapping = {}
        for x, s in zip(self.xvars, xi):
            mapping[x] = MPoly.var(self.ring, allv, x) + Qr * MPoly.var(self.ring, allv, s)
        for y, e in zip(self.yvars, eta):
            mapping[y] = MPoly.var(self.ring, allv, y) + Qr1 * MPoly.var(self.ring, allv, e)
        etas = [MPoly.var(self.ring, allv, e) for e in eta]
        C = self.C
        us = []
        for i, fi in enumerate(self.f):
            shifted = fi.substitute(mapping, allv)
            linear = None
            for j in range(self.l):
                term = lift(C[i, j]) * etas[j]
                linear = term if linear is None else linear + term
            num = shifted - lift(fi) - Qr1 * linear
            us.append(exact_divide(num, Qr))
        v = exact_divide(self.Q.substitute(mapping, allv), Q)
        return ChartPolys(r=r, u=tuple(us), v=v, vars=allv, xi=xi, eta=eta)

    # -- evaluation helpers ---------------------------------------------------------
    def point(self, x, y):
        return dict(zip(self.xvars, x)) | dict(zip(self.yvars, y))

    def f_at(self, x, y):
        pt = self.point(x, y)
        return [fi.eval(pt) for fi in self.f]

    def Q_at(self, x, y):
        return self.Q.eval(self.point(x, y))

    def C_at(self, x, y):
        pt = self.point(x, y)
        return SquareMatrix([[self.C[i, j].eval(pt) for j in range(self.l)] for i in range(self.l)])

    def Chat_at(self, x, y):
        pt = self.point(x, y)
        return SquareMatrix([[self.Chat[i, j].eval(pt) for j in range(self.l)] for i in range(self.l)])

    def Jx_at(self, x, y):
        pt = self.point(x, y)
        return [[p.eval(pt) for p in row] for row in self.Jx]

    def Chat_f_at(self, x, y):
        return self.Chat_at(x, y).apply(self.f_at(x, y))

    def is_etale_witness(self, x, y) -> bool:
        """True when ``(x, y)`` lies on X and Q is a unit there.

        Such a point certifies that the projection to the x-coordinates is
        generically etale on the component through it.  Supplying one is optional.
        """
        if not all(c.is_zero() for c in self.f_at(x, y)):
            raise NotOnX(f"({x}, {y}) is not on X")
        return self.Q_at(x, y).is_unit()

    def base_change(self, ring) -> "SystemF":
        if ring == self.ring:
            return self
        return self._cached(("base", ring.key), lambda: SystemF(
            ring, self.n, self.l, [p.change_ring(ring) for p in self.f], self.xvars, self.yvars))

    # -- serialization ----------------------------------------------------------------
    def to_json(self):
        return {"n": self.n, "l": self.l, "f": [str(p) for p in self.f], "ring": self.ring.spec()}

    def __repr__(self):
        return f"SystemF({[str(p) for p in self.f]}, n={self.n}, l={self.l}, ring={self.ring})"


def build_system(polys, n: int, l: int, ring=None) -> SystemF:
    if ring is None:
        ring = polys[0].ring if polys and isinstance(polys[0], MPoly) else parse_ring("QQ")
    return SystemF(parse_ring(ring), n, l, list(polys))


def chart_polys(S: SystemF, r: int) -> ChartPolys:
    return S.chart(r)


def system_from_json(data, ring=None) -> SystemF:
    ring = parse_ring(ring or data.get("ring", "QQ"))
    return SystemF(ring, int(data["n"]), int(data["l"]), list(data["f"]),
                   data.get("xvars"), data.get("yvars"))
