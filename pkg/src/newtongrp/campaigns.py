"""Seeded random generators and the fuzz campaigns behind ``grp fuzz``.

Every campaign is a pure function of its :class:`FuzzConfig`; all randomness
comes from one ``random.Random(seed)``, so identical configs give identical
reports.
"""
from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from itertools import combinations_with_replacement

from .algebra.mpoly import MPoly
from .algebra.scalars import QQ, PrimeField, TestRing
from .algebra.series import TruncSeries
from .algebra.upoly import UPoly
from .errors import AlgebraError
from .system import SystemF

CAMPAIGNS = ("groupoid-axioms", "zr-bijection", "weierstrass-roundtrip", "arc-roundtrip", "fiber-classify")
PRIMES = (2, 3, 5, 7, 11)


@dataclass
class Bounds:
    p_max: int = 7
    n_max: int = 2
    l_max: int = 2
    degree_max: int = 3
    a_max: int = 3
    samples: int = 20


@dataclass
class FuzzConfig:
    seed: int
    campaign: str
    bounds: Bounds = field(default_factory=Bounds)

    def __post_init__(self):
        if self.campaign not in CAMPAIGNS:
            raise AlgebraError(f"unknown campaign {self.campaign!r}")
        self.seed = int(self.seed) & 0xFFFFFFFFFFFFFFFF


# -- generators ---------------------------------------------------------------------------------

def random_prime(rng, p_max, odd=False):
    choices = [p for p in PRIMES if p <= p_max and (p > 2 or not odd)]
    return rng.choice(choices)


def random_test_ring(rng, base=QQ, a_max=3, s_max=2, a_min=2):
    """``base[e1..es]/(m^a + random monomials)``."""
    s = rng.randint(1, s_max)
    a = rng.randint(a_min, a_max)
    gens = ("e",) if s == 1 else tuple(f"e{i}" for i in range(1, s + 1))
    extra = []
    for deg in range(2, a):
        for combo in combinations_with_replacement(range(s), deg):
            if rng.random() < 0.2:
                exp = [0] * s
                for i in combo:
                    exp[i] += 1
                extra.append(tuple(exp))
    return TestRing(base, gens, extra, order=a)


def random_scalar(rng, R, bound=3, density=0.6, in_m=False, unit=False):
    """A random element, sparse in the nilpotent directions."""
    base = R.base
    if R is base:
        c = base.random(rng, bound)
        while unit and c.is_zero():
            c = base.random(rng, bound)
        return c
    data = []
    for i, _ in enumerate(R.basis):
        if i == 0:
            if in_m:
                data.append(base._zero)
                continue
            c = base.random(rng, bound).data
            while unit and base._is_zero(c):
                c = base.random(rng, bound).data
            data.append(c)
        else:
            data.append(base.random(rng, bound).data if rng.random() < density else base._zero)
    return R.elem(tuple(data))


def random_weierstrass_input(rng, R, d, T):
    """A series whose residue is ``t^d`` times a unit."""
    coeffs = []
    for k in range(T):
        if k < d:
            coeffs.append(random_scalar(rng, R, in_m=True))
        elif k == d:
            coeffs.append(random_scalar(rng, R, unit=True))
        else:
            coeffs.append(random_scalar(rng, R, density=0.4))
    return TruncSeries(R, coeffs, T)


def random_upoly(rng, R, deg, monic=False, **kw):
    coeffs = [random_scalar(rng, R, **kw) for _ in range(deg + 1)]
    if monic:
        coeffs[-1] = R.one
    return UPoly(R, coeffs)


def random_mpoly(rng, R, names, degree, terms=4, bound=3):
    out = MPoly.zero(R, names)
    k = len(names)
    for _ in range(terms):
        deg = rng.randint(0, degree)
        exp = [0] * k
        for _ in range(deg):
            exp[rng.randrange(k)] += 1
        out = out + MPoly(R, names, {tuple(exp): R.base.random(rng, bound)})
    return out


def random_system_through(rng, R, n, l, degree, point):
    """Random ``f`` with ``f(point) = 0``, obtained by subtracting values."""
    from .system import default_vars

    xv, yv = default_vars(n, l)
    names = xv + yv
    pt = dict(zip(names, point))
    polys = []
    for _ in range(l):
        g = random_mpoly(rng, R, names, degree)
        polys.append(g - g.eval(pt))
    return SystemF(R, n, l, polys)


# Systems with explicit polynomial arcs, used to produce points of Z_r.
ZR_SYSTEMS = {
    "parabola": (1, 1, ["y^2 - x"]),
    "node": (1, 1, ["y*(y - x)"]),
    "tower": (2, 2, ["y1^2 - x1", "y2^2 - y1 - x2"]),
}


def zr_arc_polys(rng, name, R, q):
    """Polynomial solutions ``(x, y)`` of the named system with ``q | Q(x, y)`` and
    ``Q(x, y)/q`` a unit modulo ``q`` (checked by the caller)."""
    N = q.degree
    w = random_upoly(rng, R, rng.randint(0, N), bound=3)
    if name == "parabola":
        y = q * w
        return [y * y], [y]
    if name == "node":
        x = q * w
        y = UPoly(R) if rng.random() < 0.5 else x
        return [x], [y]
    w2 = random_upoly(rng, R, rng.randint(0, N), bound=3)
    y1 = q * w
    y2 = w2
    return [y1 * y1, y2 * y2 - y1], [y1, y2]


def random_zr_point(rng, S, name, R, N, r):
    """A point of Z_r over R passing membership, or None after a few tries."""
    from .zr import ZrPoint, check_membership

    for _ in range(20):
        q = random_upoly(rng, R, N, monic=True, bound=3)
        xs, ys = zr_arc_polys(rng, name, R, q)
        pt = ZrPoint.make(S, r, q, xs, ys)
        if check_membership(pt).passed:
            return pt
    return None


# -- campaigns -----------------------------------------------------------------------------------

def _report(cfg, cases, failures, extra=None):
    out = {
        "campaign": cfg.campaign,
        "seed": cfg.seed,
        "bounds": asdict(cfg.bounds),
        "cases": cases,
        "failures": failures[:10],
        "failure_count": len(failures),
        "passed": not failures,
    }
    if extra:
        out.update(extra)
    return out


def campaign_weierstrass(cfg, rng):
    from .weierstrass import weierstrass_divide

    b = cfg.bounds
    failures = []
    for case in range(b.samples):
        base = QQ if rng.random() < 0.5 else PrimeField(random_prime(rng, b.p_max))
        R = random_test_ring(rng, base, a_max=max(2, b.a_max), s_max=3)
        d = rng.randint(1, 3)
        T = R.a * d + 2
        F = random_weierstrass_input(rng, R, d, T)
        W = weierstrass_divide(F)
        ok = (
            (TruncSeries.from_poly(W.q, T) * W.u) == F
            and W.q.is_monic()
            and W.q.residue() == UPoly.monomial(R.base, d)
            and W.u.is_unit()
        )
        if not ok:
            failures.append({"case": case, "ring": R.spec(), "F": str(F)})
    return _report(cfg, b.samples, failures)


def campaign_groupoid(cfg, rng):
    from .groupoid import arrow_from_endpoints, compose, enumerate_X, inverse, split_U_Delta, unit

    b = cfg.bounds
    failures = []
    systems = ["y^2 - x", "y^2 - x^3", "y*(y - x)"]
    for case in range(b.samples):
        p = random_prime(rng, b.p_max, odd=True)
        r = rng.choice((2, 3))
        S = SystemF(PrimeField(p), 1, 1, [rng.choice(systems)])
        U, _ = split_U_Delta(S, enumerate_X(S))
        P = [rng.choice(U) for _ in range(4)]
        a = arrow_from_endpoints(S, r, P[0], P[1])
        bb = arrow_from_endpoints(S, r, P[1], P[2])
        c = arrow_from_endpoints(S, r, P[2], P[3])
        checks = {
            "assoc": compose(compose(a, bb), c) == compose(a, compose(bb, c)),
            "unit": compose(unit(S, r, P[0]), a) == a and compose(a, unit(S, r, P[1])) == a,
            "inverse": compose(a, inverse(a)) == unit(S, r, P[0]),
            "cocycle": compose(a, bb).v == a.v * bb.v,
            "endpoints": compose(a, bb) == arrow_from_endpoints(S, r, P[0], P[2]),
        }
        bad = [k for k, ok in checks.items() if not ok]
        if bad:
            failures.append({"case": case, "p": p, "r": r, "f": str(S.f[0]), "failed": bad})
    return _report(cfg, b.samples, failures)


def campaign_zr(cfg, rng):
    from .zr import ZrExtPoint, forget, newton_inverse

    b = cfg.bounds
    failures = []
    done = 0
    for case in range(b.samples):
        name = rng.choice(sorted(ZR_SYSTEMS))
        n, l, polys = ZR_SYSTEMS[name]
        if rng.random() < 0.5:
            R = PrimeField(random_prime(rng, b.p_max, odd=True))
        else:
            R = TestRing(QQ, ("e",), [(2,)])
        S = SystemF(R, n, l, polys)
        r = rng.choice((3, 4))
        N = rng.choice((1, 2))
        P = random_zr_point(rng, S, name, R, N, r + 1)
        if P is None:
            continue
        done += 1
        ok1 = newton_inverse(forget(P)) == P
        base = random_zr_point(rng, S, name, R, N, r)
        ok2 = True
        if base is not None:
            ext = [xb.rep + (base.q ** r) * random_upoly(rng, R, N - 1) for xb in base.xbar]
            E = ZrExtPoint.make(S, r, base.q, ext, [y.rep for y in base.ybar])
            ok2 = forget(newton_inverse(E)) == E
        if not (ok1 and ok2):
            failures.append({"case": case, "system": name, "ring": R.spec(), "r": r, "N": N})
    return _report(cfg, done, failures)


def campaign_arc(cfg, rng):
    from .arcs import FactorizedDeformation, XYExampleInstance, factorize, unfactorize

    b = cfg.bounds
    failures = []
    for case in range(b.samples):
        A = random_test_ring(rng, QQ, a_max=max(2, b.a_max), s_max=2)
        T = A.a + 4
        n = rng.randint(1, min(2, b.n_max))
        names = tuple(f"x{i}" for i in range(1, n + 1))
        g = random_mpoly(rng, A, names, 3)
        g = g - g.constant_term()
        # xi in m; keep only those with g(xi) = 0 (squares of m-elements often vanish)
        xi = tuple(random_scalar(rng, A, in_m=True, density=0.3) for _ in range(n))
        if not g.eval(dict(zip(names, xi))).is_zero():
            xi = tuple(A.zero for _ in range(n))
        alpha = random_scalar(rng, A, in_m=True)
        u = TruncSeries(A, [A.one + random_scalar(rng, A, in_m=True)] +
                        [random_scalar(rng, A, in_m=True) for _ in range(T - 2)], T - 1)
        xt = tuple(TruncSeries(A, [random_scalar(rng, A, in_m=True) for _ in range(T - 1)], T - 1)
                   for _ in range(n))
        inst = XYExampleInstance.make(g, n, A, T)
        F = FactorizedDeformation(alpha, u, xi, xt)
        xs, y = unfactorize(inst, F)
        if factorize(inst, xs, y) != F:
            failures.append({"case": case, "ring": A.spec(), "g": str(g)})
    return _report(cfg, b.samples, failures)


def campaign_fiber(cfg, rng):
    from .groupoid import fiber_group, group_axiom_fuzz

    b = cfg.bounds
    failures = []
    kinds = {}
    for case in range(b.samples):
        p = random_prime(rng, min(b.p_max, 7))
        F = PrimeField(p)
        names = ("x", "y")
        # f(0,0) = 0 and df/dy(0,0) = 0: normal form at z = (0,0)
        f = MPoly.zero(F, names)
        for exp in ((1, 0), (2, 0), (0, 2), (1, 1), (3, 0), (0, 3)):
            if rng.random() < 0.6:
                f = f + MPoly(F, names, {exp: F.random(rng)})
        if f.is_zero() or f.derivative("y").is_zero():
            continue
        S = SystemF(F, 1, 1, [f])
        if not S.Q_at((F.zero,), (F.zero,)).is_zero():
            continue
        r = rng.choice((2, 3))
        rep = fiber_group(S, r, ((0,), (0,)))
        res = group_axiom_fuzz(rep)
        kinds[rep.kind] = kinds.get(rep.kind, 0) + 1
        if not res["passed"]:
            failures.append({"case": case, "p": p, "r": r, "f": str(f), "kind": rep.kind,
                             "failures": res["failures"][:3]})
    return _report(cfg, b.samples, failures, {"kinds": dict(sorted(kinds.items()))})


_RUNNERS = {
    "weierstrass-roundtrip": campaign_weierstrass,
    "groupoid-axioms": campaign_groupoid,
    "zr-bijection": campaign_zr,
    "arc-roundtrip": campaign_arc,
    "fiber-classify": campaign_fiber,
}


def run_campaign(cfg: FuzzConfig) -> dict:
    rng = random.Random(cfg.seed)
    return _RUNNERS[cfg.campaign](cfg, rng)
