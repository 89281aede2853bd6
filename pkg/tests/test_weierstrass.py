import random

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import sym
from newtongrp.algebra import QQ, PrimeField, parse_ring
from newtongrp.algebra.series import TruncSeries, parse_series
from newtongrp.algebra.upoly import UPoly, parse_upoly
from newtongrp.campaigns import random_test_ring, random_weierstrass_input
from newtongrp.errors import InsufficientTruncation, ResidueIsZero, WrongResidue
from newtongrp.weierstrass import divide_with_remainder, factor_arc, weierstrass_divide

E2 = parse_ring("QQ[e]/(e^2)")


def test_no_nilpotents():
    W = weierstrass_divide(parse_series("t^2", QQ, 4))
    assert str(W.q) == "t^2" and W.u == TruncSeries.one(QQ, 4) and W.d == 2


def test_epsilon_example():
    W = weierstrass_divide(parse_series("t^2 + e*t^3 + e", E2, 6))
    assert str(W.q) == "t^2 + e"
    assert W.u == parse_series("1 + e*t", E2, 6)
    assert W.to_json() == {"q": "t^2 + e", "u": ["1", "e"], "d": 2, "T": 6}


def test_residue_zero():
    with pytest.raises(ResidueIsZero):
        weierstrass_divide(parse_series("e + e*t", E2, 6))


def test_truncation_too_small():
    with pytest.raises(InsufficientTruncation):
        weierstrass_divide(parse_series("t^2 + e", E2, 4))


def _oracle(F, d):
    """Solve q*u = F over QQ[e]/(e^2) by undetermined coefficients with sympy."""
    e, t = sympy.symbols("e t")
    T = F.T
    qa = sympy.symbols(f"qa0:{d}")  # q = t^d + sum qa_i e t^i
    ub = sympy.symbols(f"ub0:{T}")
    uc = sympy.symbols(f"uc0:{T}")
    q = t ** d + sum(qa[i] * e * t ** i for i in range(d))
    u = sum((ub[j] + uc[j] * e) * t ** j for j in range(T))
    diff = sympy.expand(q * u - sym(F.to_poly()).subs({}))
    poly = sympy.Poly(diff, t, e)
    eqs = [c for (kt, ke), c in poly.terms() if kt < T and ke < 2]
    sol = sympy.solve(eqs, list(qa) + list(ub) + list(uc), dict=True)
    assert len(sol) == 1
    sol = sol[0]
    return sympy.expand(q.subs(sol)), sympy.expand(u.subs(sol))


def test_against_undetermined_coefficients():
    rng = random.Random(4)
    for _ in range(12):
        d = rng.randint(1, 2)
        T = 2 * d + 2
        F = random_weierstrass_input(rng, E2, d, T)
        W = weierstrass_divide(F)
        q_want, u_want = _oracle(F, d)
        assert sympy.expand(sym(W.q) - q_want) == 0
        # high coefficients of u are not determined modulo t^T; ours must be one of the solutions
        t, e = sympy.symbols("t e")
        gap = sympy.Poly(sympy.expand(sym(W.u.to_poly()) - u_want), t, e)
        free = sorted(u_want.free_symbols - {t, e}, key=str)
        eqs = [c for _, c in gap.terms()]
        assert not eqs or sympy.solve(eqs, free, dict=True)


@given(st.integers(0, 10 ** 9))
def test_round_trip_properties(seed):
    rng = random.Random(seed)
    base = QQ if rng.random() < 0.5 else PrimeField(rng.choice([2, 3, 5, 7]))
    R = random_test_ring(rng, base, a_max=4, s_max=3)
    d = rng.randint(1, 3)
    T = R.a * d + 2
    F = random_weierstrass_input(rng, R, d, T)
    W = weierstrass_divide(F)
    assert TruncSeries.from_poly(W.q, T) * W.u == F
    assert W.q.is_monic() and W.q.degree == d
    assert W.q.residue() == UPoly.monomial(base, d)
    assert W.u.is_unit()
    # uniqueness: multiplying by a unit does not change q
    w = TruncSeries(R, [R.one] + [R.random(rng) for _ in range(T - 1)], T)
    assert weierstrass_divide(F * w).q == W.q


def test_divide_with_remainder_examples():
    h, rem = divide_with_remainder(parse_upoly("t^3", QQ), parse_upoly("t^2", QQ))
    assert str(h) == "t" and rem.is_zero()
    h, rem = divide_with_remainder(parse_upoly("t^2 + 1", E2), parse_upoly("t + e", E2))
    assert str(h) == "t - e" and str(rem) == "1"
    q = parse_upoly("t^2 + e*t + e", E2)
    h, rem = divide_with_remainder(q, q)
    assert str(h) == "1" and rem.is_zero()


def test_divide_series_with_remainder():
    q = parse_upoly("t + e", E2)
    g = parse_series("t^2 + 1 + t^5", E2, 6)
    h, rem = divide_with_remainder(g, q)
    assert rem.degree < 1
    assert (TruncSeries.from_poly(q, 6) * h + TruncSeries.from_poly(rem, 6)) == g
    with pytest.raises(InsufficientTruncation):
        divide_with_remainder(parse_series("t", E2, 1), parse_upoly("t^2 + e", E2))


def test_factor_arc():
    alpha, u = factor_arc(parse_series("t + e", E2, 4))
    assert str(alpha) == "-e" and u == TruncSeries.one(E2, 4)
    R = parse_ring("QQ[e1,e2]/(m^3)")
    alpha, u = factor_arc(parse_series("t", R, 5))
    assert alpha.is_zero() and u == TruncSeries.one(R, 5)
    alpha, u = factor_arc(parse_series("t + e*t^2", E2, 4))
    assert alpha.is_zero() and u == parse_series("1 + e*t", E2, 4)
    with pytest.raises(WrongResidue):
        factor_arc(parse_series("t^2", E2, 4))
