"""Deformations of arcs split into finite-type data and free coordinates.

Two models are implemented:

* the hypersurface ``y x_(n+1) + g(x_1..x_n) = 0`` with base arc
  ``x_(n+1) = t`` (everything else 0), whose deformations over A are exactly
  collections ``(alpha, u, xi, xtilde)`` with ``g(xi) = 0``;
* a general complete intersection, where an arc over A is split into its
  point of Z_r and the tail of ``x`` beyond ``q^r``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra.mpoly import MPoly
from .algebra.parser import parse_poly
from .algebra.scalars import ScalarElem
from .algebra.series import TruncSeries
from .algebra.upoly import UPoly
from .errors import ConstraintViolated, InsufficientTruncation, PreconditionViolated, WrongResidue
from .system import SystemF
from .weierstrass import factor_arc, nilpotency_order
from .zr import ZrPoint, arc_to_zr, solve_z_system


def _xnames(n):
    return tuple(f"x{i}" for i in range(1, n + 1))


@dataclass(frozen=True, eq=False)
class XYExampleInstance:
    n: int
    g: MPoly  # in x1..xn, over the test ring A
    A: object
    T: int

    @classmethod
    def make(cls, g, n, A, T):
        names = _xnames(n)
        if isinstance(g, str):
            g = parse_poly(g, names, A)
        else:
            g = g.change_ring(A).with_vars(names)
        if not g.constant_term().is_zero():
            raise PreconditionViolated("g must vanish at the origin")
        return cls(n, g, A, T)

    def gamma0(self):
        A, T = self.A, self.T
        xs = [TruncSeries.zero(A, T) for _ in range(self.n)] + [TruncSeries.t(A, T)]
        return xs, TruncSeries.zero(A, T)

    def equation(self, xs, y):
        """``y x_(n+1) + g(x_1..x_n)`` evaluated on series."""
        gx = self.g.eval(dict(zip(_xnames(self.n), xs[: self.n])))
        return y * xs[self.n] + gx


@dataclass(frozen=True, eq=False)
class FactorizedDeformation:
    alpha: object
    u: TruncSeries
    xi: tuple
    xtilde: tuple

    def to_json(self):
        return {
            "alpha": str(self.alpha),
            "u": self.u.to_json()["coeffs"],
            "xi": [str(c) for c in self.xi],
            "xtilde": [s.to_json()["coeffs"] for s in self.xtilde],
        }

    def key(self):
        return (self.alpha.data, self.u.T, self.u.coeffs, tuple(c.data for c in self.xi),
                tuple(s.coeffs for s in self.xtilde))

    def __eq__(self, other):
        return isinstance(other, FactorizedDeformation) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def _eval_at(poly: UPoly, alpha):
    acc = poly.ring.zero
    for c in reversed(poly.coeffs):
        acc = acc * alpha + c
    return acc


def _check_residues(inst, xs, y):
    g0x, g0y = inst.gamma0()
    for s, s0 in zip(list(xs) + [y], list(g0x) + [g0y]):
        if s.residue().coeffs[: s.T] != s0.residue().coeffs[: s.T]:
            raise WrongResidue("the arc does not reduce to the base arc modulo the maximal ideal")


def factorize(inst: XYExampleInstance, xs, y) -> FactorizedDeformation:
    """Inverse of :func:`unfactorize`.  An arc known modulo ``t^T`` determines
    ``u`` and ``xtilde`` only modulo ``t^(T-1)``, so they are returned at that order."""
    A = inst.A
    T = min(s.T for s in list(xs) + [y])
    a = nilpotency_order(A)
    if T < a + 1:
        raise InsufficientTruncation(f"need T > a = {a}")
    _check_residues(inst, xs, y)
    alpha, u = factor_arc(xs[inst.n])
    lin = UPoly(A, [-alpha, A.one])
    xi, xtilde = [], []
    for xi_series in xs[: inst.n]:
        p = xi_series.to_poly()
        val = _eval_at(p, alpha)
        h = (p - val).exact_div(lin)
        xi.append(val)
        xtilde.append(TruncSeries(A, h.coeffs, T - 1))
    gxi = inst.g.eval(dict(zip(_xnames(inst.n), xi)))
    if not gxi.is_zero():
        raise ConstraintViolated(f"g(xi) = {gxi} is not zero, so no y(t) exists")
    eq = inst.equation([s.truncate(T) for s in xs], y.truncate(T))
    if not all(c.is_zero() for c in eq.coeffs):
        raise ConstraintViolated("the arc does not lie on the hypersurface")
    return FactorizedDeformation(alpha, u.truncate(T - 1), tuple(xi), tuple(xtilde))


def unfactorize(inst: XYExampleInstance, F: FactorizedDeformation, T=None):
    """Rebuild ``(x_1..x_(n+1), y)`` modulo ``t^T`` from a collection with ``g(xi) = 0``."""
    A = inst.A
    T = T or inst.T
    gxi = inst.g.eval(dict(zip(_xnames(inst.n), F.xi)))
    if not gxi.is_zero():
        raise ConstraintViolated(f"g(xi) = {gxi} is not zero")
    lin = UPoly(A, [-F.alpha, A.one])
    xpolys = [UPoly(A, [c]) + lin * s.to_poly() for c, s in zip(F.xi, F.xtilde)]
    upoly = F.u.to_poly()
    # g(x) = g(xi) + (t - alpha) G exactly, as polynomials
    gx = inst.g.eval(dict(zip(_xnames(inst.n), xpolys))) if inst.n else UPoly(A)
    if isinstance(gx, ScalarElem):
        gx = UPoly(A, [gx])
    G = gx.exact_div(lin)
    uT = TruncSeries(A, upoly.coeffs, T)
    y = -(TruncSeries(A, G.coeffs, T) * uT.inverse())
    xs = [TruncSeries(A, p.coeffs, T) for p in xpolys] + [TruncSeries(A, (lin * upoly).coeffs, T)]
    return xs, y


# -- the general split ------------------------------------------------------------------------

def gk_split(S: SystemF, gamma0, arc, r: int):
    """``arc -> (point of Z_r, tail)`` with ``x = xbar + q^r tail`` exactly."""
    xs, ys = arc
    for s, s0 in zip(list(xs) + list(ys), list(gamma0[0]) + list(gamma0[1])):
        k = min(s.T, s0.T)
        if s.residue().coeffs[:k] != s0.coeffs[:k]:
            raise WrongResidue("the arc does not deform gamma0")
    zr = arc_to_zr(S, arc, r)
    qr = zr.q ** r
    tails = []
    for x, xb in zip(xs, zr.xbar):
        h = (x.to_poly() - xb.rep).exact_div(qr)
        tails.append(TruncSeries(x.ring, h.coeffs, x.T))
    return zr, tails


def gk_join(S: SystemF, gamma0, zr: ZrPoint, tail, T: int):
    return solve_z_system(S, gamma0, zr, T, tail=tail)
