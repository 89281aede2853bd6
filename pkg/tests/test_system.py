import pytest
import sympy

from conftest import sym
from newtongrp.algebra import MPoly, PrimeField, parse_ring
from newtongrp.errors import NotOnX, UnknownIdentifier, VariableMismatch
from newtongrp.system import SystemF, build_system, chart_polys, default_vars, system_from_json
from systems import TEST_SYSTEMS


def _system(spec):
    ring, n, l, f = spec
    return SystemF(parse_ring(ring), n, l, f)


def test_default_variables():
    assert default_vars(1, 1) == (("x",), ("y",))
    assert default_vars(2, 2) == (("x1", "x2"), ("y1", "y2"))


def test_build_examples():
    S = build_system(["y^2 - x"], 1, 1)
    assert str(S.Q) == "2*y" and str(S.Chat[0, 0]) == "1"
    assert str(build_system(["y^2 - x^3"], 1, 1).Q) == "2*y"
    S = SystemF(parse_ring("QQ"), 1, 2, ["y1 + y2^2", "y2 + x"], xvars=["x"])
    assert [[str(S.C[i, j]) for j in range(2)] for i in range(2)] == [["1", "2*y2"], ["0", "1"]]
    assert str(S.Q) == "1"


def test_unknown_variable():
    with pytest.raises(UnknownIdentifier):
        build_system(["y^2 - z"], 1, 1)
    with pytest.raises(VariableMismatch):
        SystemF(parse_ring("QQ"), 1, 1, ["y^2 - x", "y - x"])


@pytest.mark.parametrize("spec", TEST_SYSTEMS, ids=lambda s: ";".join(s[3]))
def test_adjugate_identity(spec):
    S = _system(spec)
    l = S.l
    for i in range(l):
        for j in range(l):
            want = S.Q if i == j else S.Q * 0
            assert (S.Chat * S.C)[i, j] == want
            assert (S.C * S.Chat)[i, j] == want


def _sym_chart(S, r):
    """u and v straight from their defining quotients, cancelled by sympy."""
    xs = sympy.symbols(S.xvars)
    ys = sympy.symbols(S.yvars)
    ch = S.chart(r)
    xi = sympy.symbols(ch.xi)
    eta = sympy.symbols(ch.eta)
    f = [sym(p) for p in S.f]
    C = sympy.Matrix([[sympy.diff(fi, y) for y in ys] for fi in f])
    Q = C.det()
    shift = {**{x: x + Q ** r * a for x, a in zip(xs, xi)}, **{y: y + Q ** (r - 1) * b for y, b in zip(ys, eta)}}
    Ceta = C * sympy.Matrix(eta)
    us = [sympy.cancel((fi.subs(shift, simultaneous=True) - fi - Q ** (r - 1) * Ceta[i]) / Q ** r)
          for i, fi in enumerate(f)]
    v = sympy.cancel(Q.subs(shift, simultaneous=True) / Q)
    return us, v


@pytest.mark.parametrize("r", [2, 3])
@pytest.mark.parametrize("spec", [s for s in TEST_SYSTEMS if s[0] == "QQ"], ids=lambda s: ";".join(s[3]))
def test_chart_matches_sympy(spec, r):
    S = _system(spec)
    us, v = _sym_chart(S, r)
    ch = chart_polys(S, r)
    for mine, want in zip(ch.u, us):
        assert sympy.expand(sym(mine) - want) == 0
    assert sympy.expand(sym(ch.v) - v) == 0


@pytest.mark.parametrize("r", [2, 3, 4])
@pytest.mark.parametrize("spec", TEST_SYSTEMS, ids=lambda s: ";".join(s[3]))
def test_chart_identities(spec, r):
    S = _system(spec)
    ch = S.chart(r)
    names = S.xvars + S.yvars + ch.xi + ch.eta
    R = S.ring
    V = lambda name: MPoly.var(R, names, name)
    lift = lambda p: p.with_vars(names)
    Q = lift(S.Q)
    shift = {**{x: V(x) + Q ** r * V(a) for x, a in zip(S.xvars, ch.xi)},
             **{y: V(y) + Q ** (r - 1) * V(b) for y, b in zip(S.yvars, ch.eta)}}
    for i, fi in enumerate(S.f):
        Ceta = MPoly.zero(R, names)
        for j, b in enumerate(ch.eta):
            Ceta = Ceta + lift(S.C[i, j]) * V(b)
        lhs = Q ** r * lift(ch.u[i])
        rhs = fi.substitute(shift, names) - lift(fi) - Q ** (r - 1) * Ceta
        assert lhs == rhs
    assert Q * lift(ch.v) == S.Q.substitute(shift, names)
    at_zero = {n: V(n) for n in S.xvars + S.yvars}
    at_zero.update({n: MPoly.zero(R, names) for n in ch.xi + ch.eta})
    assert lift(ch.v).substitute(at_zero, names) == MPoly.const(R, names, R.one)
    assert all(lift(u).substitute(at_zero, names).is_zero() for u in ch.u)


def test_characteristic_two_chart():
    S = SystemF(parse_ring("GF(2)"), 1, 1, ["y^2 + x*y - x"])
    ch = S.chart(2)
    assert str(ch.v) == "x*xi + 1"
    assert str(ch.u[0]) == "x*xi*eta + eta^2 + y*xi + xi"


def test_json_round_trip():
    S = _system(TEST_SYSTEMS[6])
    T = system_from_json(S.to_json())
    assert [str(p) for p in T.f] == [str(p) for p in S.f] and (T.n, T.l) == (S.n, S.l)


def test_base_change_is_cached():
    S = build_system(["y^2 - x"], 1, 1)
    R = parse_ring("QQ[e]/(e^2)")
    assert S.base_change(R) is S.base_change(R)
    assert S.base_change(R).ring == R


def test_etale_witness():
    F7 = PrimeField(7)
    S = SystemF(F7, 1, 1, ["y^2 - x"])
    assert S.is_etale_witness((F7(1),), (F7(1),))
    assert not S.is_etale_witness((F7(0),), (F7(0),))
    with pytest.raises(NotOnX):
        S.is_etale_witness((F7(1),), (F7(2),))
