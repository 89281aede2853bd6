"""The nine acceptance criteria, each at its stated size and time limit.

Run with pytest (a summary line per criterion is printed at the end of the
session) or directly: ``python3 tests/test_acceptance.py``.
"""
import random
import sys
import time
from itertools import product
from pathlib import Path

import pytest
import sympy

sys.path.insert(0, str(Path(__file__).parent))

from systems import TEST_SYSTEMS  # noqa: E402

from newtongrp.algebra import QQ, PrimeField, parse_ring  # noqa: E402
from newtongrp.algebra.mpoly import MPoly  # noqa: E402
from newtongrp.algebra.series import TruncSeries, parse_series  # noqa: E402
from newtongrp.algebra.upoly import UPoly  # noqa: E402
from newtongrp.arcs import (FactorizedDeformation, XYExampleInstance, factorize, gk_join,  # noqa: E402
                            gk_split, unfactorize)
from newtongrp.campaigns import (ZR_SYSTEMS, random_system_through, random_test_ring,  # noqa: E402
                                 random_upoly, random_weierstrass_input, random_zr_point)
from newtongrp.errors import ConstraintViolated  # noqa: E402
from newtongrp.groupoid import (ADDITIVE, MULTIPLICATIVE, TWO_TORSION, arrow_from_endpoints,  # noqa: E402
                                arrows_at, compose, enumerate_X, fiber_group, group_axiom_fuzz, inverse,
                                lie_algebroid_basis, split_U_Delta, target, unit)
from newtongrp.system import SystemF, default_vars  # noqa: E402
from newtongrp.weierstrass import weierstrass_divide  # noqa: E402
from newtongrp.zr import (ZrExtPoint, check_membership, forget, newton_inverse,  # noqa: E402
                          r2_counterexample_scan)

RESULTS = {}
TITLES = {
    1: "Weierstrass round trip",
    2: "groupoid axioms",
    3: "Newton bijection",
    4: "r = 2 counterexample",
    5: "fiber classification",
    6: "restriction to the different",
    7: "Lie algebroid first-order check",
    8: "arc split round trip",
    9: "chart polynomial identities",
}


def _record(n, ok, detail):
    RESULTS[n] = (ok, detail)
    assert ok, detail


def summary_lines():
    out = []
    for n in sorted(TITLES):
        if n in RESULTS:
            ok, detail = RESULTS[n]
            out.append(f"criterion {n} ({TITLES[n]}): {'PASS' if ok else 'FAIL'} - {detail}")
        else:
            out.append(f"criterion {n} ({TITLES[n]}): NOT RUN")
    return out


# 1 ---------------------------------------------------------------------------------------------

def test_criterion_1_weierstrass_round_trip():
    rng = random.Random(1)
    start = time.perf_counter()
    failures, cases = [], 1000
    for i in range(cases):
        base = QQ if i % 2 else PrimeField(rng.choice([2, 3, 5, 7]))
        R = random_test_ring(rng, base, a_max=4, s_max=3, a_min=1)
        d = rng.randint(1, 3)
        T = R.a * d + 2
        F = random_weierstrass_input(rng, R, d, T)
        W = weierstrass_divide(F)
        ok = (TruncSeries.from_poly(W.q, T) * W.u == F and W.q.is_monic() and W.q.degree == d
              and W.q.residue() == UPoly.monomial(base, d) and W.u.is_unit())
        if not ok:
            failures.append((R.spec(), str(F)))
    elapsed = time.perf_counter() - start
    _record(1, not failures and elapsed < 60,
            f"{cases} series, {len(failures)} failures, {elapsed:.1f} s")


# 2 ---------------------------------------------------------------------------------------------

def _groupoid_check(S, r, U, rng, sample_limit=10 ** 4):
    idx = range(len(U))
    A = {(i, j): arrow_from_endpoints(S, r, U[i], U[j]) for i in idx for j in idx}
    memo = {}

    def comp(a, b):
        key = (a.key(), b.key())
        if key not in memo:
            memo[key] = compose(a, b)
        return memo[key]

    bad = 0
    for i in idx:
        a = A[i, i]
        if a != unit(S, r, U[i]):
            bad += 1
    for (i, j), a in A.items():
        if comp(unit(S, r, U[i]), a) != a or comp(a, unit(S, r, U[j])) != a:
            bad += 1
        inv = inverse(a)
        if comp(a, inv) != unit(S, r, U[i]) or comp(inv, a) != unit(S, r, U[j]):
            bad += 1
    if len(U) <= 30:
        quads = product(idx, repeat=4)
        count = len(U) ** 4
    else:
        quads = [tuple(rng.randrange(len(U)) for _ in range(4)) for _ in range(sample_limit)]
        count = sample_limit
    for i, j, k, l in quads:
        a, b, c = A[i, j], A[j, k], A[k, l]
        ab = comp(a, b)
        if ab.v != a.v * b.v or target(ab) != U[k]:
            bad += 1
        if comp(ab, c) != comp(a, comp(b, c)):
            bad += 1
    return bad, count


def test_criterion_2_groupoid_axioms():
    rng = random.Random(2)
    start = time.perf_counter()
    bad_total, triples = 0, 0
    for f in ["y^2 - x", "y^2 - x^3", "y*(y - x)"]:
        for p in (5, 7, 11):
            S = SystemF(PrimeField(p), 1, 1, [f])
            U, _ = split_U_Delta(S, enumerate_X(S))
            for r in (2, 3):
                bad, count = _groupoid_check(S, r, U, rng)
                bad_total += bad
                triples += count
    elapsed = time.perf_counter() - start
    _record(2, bad_total == 0 and elapsed < 120,
            f"{triples} composable triples, {bad_total} failures, {elapsed:.1f} s")


# 3 ---------------------------------------------------------------------------------------------

def test_criterion_3_newton_bijection():
    rng = random.Random(3)
    rings = [PrimeField(5), PrimeField(7), parse_ring("QQ[e]/(e^2)")]
    done_up = done_down = 0
    failures = 0
    names = sorted(ZR_SYSTEMS)
    while done_up < 500 or done_down < 500:
        R = rings[(done_up + done_down) % len(rings)]
        name = rng.choice(names)
        n, l, polys = ZR_SYSTEMS[name]
        S = SystemF(R, n, l, polys)
        r, N = rng.choice((3, 4)), rng.choice((1, 2))
        if done_up < 500:
            P = random_zr_point(rng, S, name, R, N, r + 1)
            if P is not None:
                done_up += 1
                if newton_inverse(forget(P)) != P:
                    failures += 1
        if done_down < 500:
            base = random_zr_point(rng, S, name, R, N, r)
            if base is not None:
                done_down += 1
                xs = [x.rep + base.q ** r * random_upoly(rng, R, N - 1) for x in base.xbar]
                E = ZrExtPoint.make(S, r, base.q, xs, [y.rep for y in base.ybar])
                if forget(newton_inverse(E)) != E:
                    failures += 1
    _record(3, failures == 0,
            f"{done_up} points of Z_(r+1) and {done_down} extended points, {failures} failures")


# 4 ---------------------------------------------------------------------------------------------

def test_criterion_4_r2_counterexample():
    start = time.perf_counter()
    rep = r2_counterexample_scan("x", 5)
    elapsed = time.perf_counter() - start
    ok = rep["empty_fibers"] >= 1 and rep["multi_fibers"] >= 1 and elapsed < 60
    _record(4, ok, f"{rep['empty_fibers']} empty fibers, {rep['multi_fibers']} fibers of size >= 2 "
                   f"among {rep['targets']} targets, {elapsed:.1f} s")


# 5 ---------------------------------------------------------------------------------------------

def test_criterion_5_fiber_classification():
    cases = [
        ("y^2 - x", 2, MULTIPLICATIVE, 7),
        ("y^2 - x^3", 2, TWO_TORSION, 7),
        ("y^2 - x", 3, ADDITIVE, 7),
        ("y^2 + x*y - x", 2, ADDITIVE, 2),
    ]
    problems = []
    for f, r, kind, p in cases:
        ring = QQ if p != 2 else PrimeField(2)
        rep = fiber_group(SystemF(ring, 1, 1, [f]), r, ((ring.zero,), (ring.zero,)))
        if rep.kind != kind:
            problems.append(f"{f}, r={r}: {rep.kind}")
        F = PrimeField(p)
        rep = fiber_group(SystemF(F, 1, 1, [f]), r, ((F.zero,), (F.zero,)))
        fuzz = group_axiom_fuzz(rep)
        if rep.kind != kind or not fuzz["passed"]:
            problems.append(f"{f}, r={r} over GF({p}): {fuzz['failures'][:2]}")
    _record(5, not problems, "kinds (ii), (iv), (i), (iii); exhaustive axioms " +
            ("passed" if not problems else f"failed: {problems}"))


# 6 ---------------------------------------------------------------------------------------------

def test_criterion_6_restriction_to_the_different():
    arrows, bad = 0, 0
    for f in ["y^2 - x", "y^2 - x^3", "y*(y - x)"]:
        for p in (5, 7, 11):
            S = SystemF(PrimeField(p), 1, 1, [f])
            _, D = split_U_Delta(S, enumerate_X(S))
            for z in D:
                for r in (2, 3):
                    for a in arrows_at(S, r, z):
                        arrows += 1
                        if target(a) != a.base:
                            bad += 1
    _record(6, bad == 0 and arrows > 0, f"{arrows} arrows based on the different, {bad} move their base")


# 7 ---------------------------------------------------------------------------------------------

def _to_sym(c):
    return sympy.Rational(str(c))


def test_criterion_7_lie_algebroid():
    rng = random.Random(7)
    points = on_delta = bad = 0
    while points < 100:
        n, l = rng.randint(1, 2), rng.randint(1, 2)
        p = [QQ(rng.randint(-2, 2)) for _ in range(n + l)]
        S = random_system_through(rng, QQ, n, l, 3, p)
        xv, yv = default_vars(n, l)
        x, y = tuple(p[:n]), tuple(p[n:])
        if rng.random() < 0.25:
            # kill df/dy at p so that p lies on the different
            names = xv + yv
            fixed = []
            for fi in S.f:
                g = fi
                for yn, yc in zip(yv, y):
                    slope = fi.derivative(yn).eval(dict(zip(names, p)))
                    g = g - MPoly.const(QQ, names, slope) * (MPoly.var(QQ, names, yn) - MPoly.const(QQ, names, yc))
                fixed.append(g)
            S = SystemF(QQ, n, l, fixed)
        if S.Q.is_zero():
            continue
        r = rng.choice((2, 3))
        ws = lie_algebroid_basis(S, r, (x, y))
        points += 1
        J = sympy.Matrix([[_to_sym(c) for c in row] for row in S.Jx_at(x, y)])
        C = sympy.Matrix([[_to_sym(S.C_at(x, y)[i, j]) for j in range(l)] for i in range(l)])
        Q = _to_sym(S.Q_at(x, y))
        for i, w in enumerate(ws):
            w = sympy.Matrix([_to_sym(c) for c in w])
            if J * w[:n, 0] + C * w[n:, 0] != sympy.zeros(l, 1):
                bad += 1
            if Q != 0:
                e = sympy.zeros(n, 1)
                e[i] = 1
                lift = sympy.Matrix.vstack(e, C.LUsolve(-J * e))
                if w != Q ** r * lift:
                    bad += 1
            elif any(c != 0 for c in w):
                bad += 1
        if Q == 0:
            on_delta += 1
    _record(7, bad == 0, f"{points} points ({on_delta} on the different), {bad} failures")


# 8 ---------------------------------------------------------------------------------------------

def test_criterion_8_arc_split():
    rng = random.Random(8)
    S = SystemF(QQ, 1, 1, ["y^2 - x"])
    gamma0 = ([parse_series("t^2", QQ, 60)], [parse_series("t", QQ, 60)])
    bad = cases = 0
    for a in (2, 3):
        A = parse_ring(f"QQ[e]/(e^{a})")
        for _ in range(100):
            delta = [A.random(rng, in_m=True) for _ in range(4)]
            y = TruncSeries(A, [delta[0], A.one + delta[1], delta[2], delta[3]], 8)
            arc = ([y * y], [y])
            zr, tails = gk_split(S, gamma0, arc, 3)
            cases += 1
            if not check_membership(zr).passed or gk_join(S, gamma0, zr, tails, 8) != arc:
                bad += 1
            # and the other way: a fresh tail in m[t] of low degree
            tail = [TruncSeries(A, [A.random(rng, in_m=True) for _ in range(8 - 1 - 3 * zr.N)], 8)]
            arc2 = gk_join(S, gamma0, zr, tail, 8)
            zr2, tails2 = gk_split(S, gamma0, arc2, 3)
            if zr2 != zr or tails2 != tail:
                bad += 1
    # the hypersurface example: deformations of x1 = 0, x2 = t, y = 0
    ex_cases = 0
    for a in (2, 3):
        A = parse_ring(f"QQ[e]/(e^{a})")
        inst = XYExampleInstance.make("x1^2", 1, A, 6)
        e = A.gen("e")
        for _ in range(100):
            xi = e ** (a - 1) * A(rng.randint(-3, 3))  # xi^2 = 0
            F = FactorizedDeformation(
                A.random(rng, in_m=True),
                TruncSeries(A, [A.one + A.random(rng, in_m=True)] + [A.random(rng, in_m=True) for _ in range(4)], 5),
                (xi,), (TruncSeries(A, [A.random(rng, in_m=True) for _ in range(5)], 5),))
            xs, yy = unfactorize(inst, F)
            ex_cases += 1
            if factorize(inst, xs, yy) != F or unfactorize(inst, factorize(inst, xs, yy)) != (xs, yy):
                bad += 1
    E3 = parse_ring("QQ[e]/(e^3)")
    inst = XYExampleInstance.make("x1^2", 1, E3, 5)
    try:
        factorize(inst, [parse_series("e", E3, 5), parse_series("t", E3, 5)], parse_series("0", E3, 5))
        bad += 1
    except ConstraintViolated:
        pass
    _record(8, bad == 0 and cases >= 200,
            f"{cases} deformations of (t^2, t) and {ex_cases} hypersurface collections, "
            f"negative case rejected, {bad} failures")


# 9 ---------------------------------------------------------------------------------------------

def test_criterion_9_chart_identities():
    bad = checked = 0
    for ring, n, l, f in TEST_SYSTEMS:
        S = SystemF(parse_ring(ring), n, l, f)
        for r in (2, 3):
            ch = S.chart(r)  # exact divisions; raises not-divisible on failure
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
                if Q ** r * lift(ch.u[i]) != fi.substitute(shift, names) - lift(fi) - Q ** (r - 1) * Ceta:
                    bad += 1
            if Q * lift(ch.v) != S.Q.substitute(shift, names):
                bad += 1
            checked += 1
    _record(9, bad == 0, f"{checked} (system, r) pairs, {bad} failed identities, no not-divisible errors")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_criterion_")):
        try:
            fn()
        except AssertionError:
            failed += 1
        except Exception as exc:  # report, keep going
            RESULTS[int(name.split("_")[2])] = (False, f"error: {exc!r}")
            failed += 1
    print("\n".join(summary_lines()))
    sys.exit(1 if failed else 0)
