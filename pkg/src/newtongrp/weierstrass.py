"""Weierstrass division of truncated series over test rings.

Given ``F`` known modulo ``t^T`` whose reduction modulo the maximal ideal is
``t^d`` times a unit, there is a unique monic ``q`` of degree ``d`` with
``q = t^d mod m`` and a unit ``u`` with ``F = q u``.  Because ``m^a = 0``,
``t^(a d)`` lies in ``(q)``, so ``q`` only depends on ``F mod t^(a d)``.

The construction is an induction along ``m > m^2 > ... > m^a = 0``: at each
stage the error ``E = F - q u`` lies in ``m^j`` and a linear correction moves
it into ``m^(j+1)``.  We work with the polynomial ``F_poly`` of degree < T
representing the input; it is itself a power series, so ``F_poly = q u`` holds
exactly with ``u`` a polynomial of degree < T - d.  That ``u`` agrees with
the cofactor of any other extension of the input modulo ``t^(T - a d)``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra.series import TruncSeries
from .algebra.upoly import UPoly
from .errors import InsufficientTruncation, ResidueIsZero, WrongResidue


@dataclass(frozen=True)
class WeierstrassFactorization:
    q: UPoly
    u: TruncSeries
    d: int

    def to_json(self):
        return {"q": str(self.q), "u": self.u.to_json()["coeffs"], "d": self.d, "T": self.u.T}


def nilpotency_order(ring) -> int:
    return getattr(ring, "a", 1)


def residue_order(F: TruncSeries):
    """Order of vanishing in ``t`` of ``F mod m`` (None if it vanishes)."""
    return next((i for i, c in enumerate(F.coeffs) if c.is_unit()), None)


def _low(poly: UPoly, d):
    return poly.truncate(d)


def _shift(poly: UPoly, d):
    return UPoly._raw(poly.ring, poly.coeffs[d:])


def _series_inverse_mod(poly: UPoly, k):
    """Inverse of a unit polynomial modulo ``t^k``."""
    return TruncSeries(poly.ring, poly.coeffs, max(k, 1)).inverse().to_poly()


def weierstrass_divide(F: TruncSeries) -> WeierstrassFactorization:
    R = F.ring
    T = F.T
    d = residue_order(F)
    if d is None:
        raise ResidueIsZero("the series vanishes modulo the maximal ideal")
    a = nilpotency_order(R)
    if T < a * d + 1:
        raise InsufficientTruncation(
            f"truncation T={T} is below the bound a*d+1 = {a * d + 1} (a={a}, d={d})"
        )
    Fp = F.to_poly()
    # stage 0: the residue-field solution, lifted by constants
    q = UPoly.monomial(R, d)
    u = UPoly(R, [R.embed(c.residue()) if R.base != R else c for c in Fp.coeffs[d:]])
    ubar = u
    ubar_inv = _series_inverse_mod(ubar, d) if d else None
    for _ in range(1, a):
        E = Fp - q * u
        if E.is_zero():
            break
        if d:
            dq = _low(E * ubar_inv, d)
            rest = E - dq * ubar
            du = _shift(rest, d)
            q = q + dq
        else:
            du = E
        u = u + du
    if not (Fp - q * u).is_zero():
        raise AssertionError("Weierstrass stages did not converge")  # pragma: no cover
    return WeierstrassFactorization(q=q, u=TruncSeries(R, u.coeffs, T), d=d)


def divide_with_remainder(g, q: UPoly):
    """``g = q h + rem`` with ``deg rem < deg q``.

    For polynomial input the identity is exact.  For a series known modulo
    ``t^T`` the remainder is determined only when ``T >= a d`` (then
    ``t^T`` lies in ``(q)``), and ``h`` is returned as a series of order ``T``.
    """
    if isinstance(g, TruncSeries):
        a = nilpotency_order(g.ring)
        if g.T < a * q.degree:
            raise InsufficientTruncation(
                f"truncation T={g.T} cannot determine the remainder modulo a degree-{q.degree} polynomial"
            )
        h, rem = g.to_poly().divmod(q)
        return TruncSeries(g.ring, h.coeffs, g.T), rem
    return g.divmod(q)


def factor_arc(x: TruncSeries):
    """Write ``x = (t - alpha) u`` with ``alpha`` in m and ``u`` in ``1 + m[[t]]``."""
    R = x.ring
    res = x.residue()
    expected = [R.base.zero] * x.T
    if x.T > 1:
        expected[1] = R.base.one
    if list(res.coeffs) != expected:
        raise WrongResidue(f"the arc does not reduce to t modulo the maximal ideal: {res}")
    W = weierstrass_divide(x)
    alpha = -W.q.coeff(0)
    return alpha, W.u
