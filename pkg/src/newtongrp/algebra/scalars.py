"""Exact scalar rings: the rationals, prime fields and Artinian test rings.

A test ring is ``k[e_1..e_s]`` modulo a monomial ideal that contains every
monomial of some degree ``a``; its elements are stored as dense coefficient
vectors over the surviving (standard) monomials, so normal forms are unique
and equality is tuple equality.
"""
from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations_with_replacement, product

from ..errors import AlgebraError, NotAUnit, RingMismatch


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class ScalarElem:
    """An element of a :class:`ScalarRing`, always in normal form."""

    __slots__ = ("ring", "data")

    def __init__(self, ring, data):
        self.ring = ring
        self.data = data

    # -- coercion -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, ScalarElem):
            if other.ring is self.ring or other.ring == self.ring:
                return other
            if self.ring.base == other.ring:
                return self.ring.embed(other)
            if other.ring.base == self.ring:
                return None
            raise RingMismatch(f"cannot combine elements of {self.ring} and {other.ring}")
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ring(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ScalarElem(self.ring, self.ring._add(self.data, o.data))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ScalarElem(self.ring, self.ring._sub(self.data, o.data))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ScalarElem(self.ring, self.ring._sub(o.data, self.data))

    def __neg__(self):
        return ScalarElem(self.ring, self.ring._neg(self.data))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ScalarElem(self.ring, self.ring._mul(self.data, o.data))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "ScalarElem":
        return ScalarElem(self.ring, self.ring._inv(self.data))

    # -- predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        return self.ring._is_zero(self.data)

    def __bool__(self):
        return not self.is_zero()

    def is_unit(self) -> bool:
        return self.ring._is_unit(self.data)

    def in_maximal_ideal(self) -> bool:
        return not self.is_unit()

    def residue(self) -> "ScalarElem":
        """Image in the residue field."""
        return self.ring.residue(self)

    def is_constant(self) -> bool:
        """True when the element lies in the base field (no nilpotent part)."""
        return self.ring._is_constant(self.data)

    def is_monomial(self) -> bool:
        return self.ring._is_monomial(self.data)

    def __eq__(self, other):
        if isinstance(other, ScalarElem):
            if other.ring == self.ring:
                return self.data == other.data
            try:
                o = self._coerce(other)
            except RingMismatch:
                return False
            if o is None:
                return other == self
            return self.data == o.data
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            try:
                return self.data == self.ring(other).data
            except NotAUnit:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.key, self.data))

    def __str__(self):
        return self.ring.format(self.data)

    def __repr__(self):
        return f"ScalarElem({self.ring.spec()}, {self})"


class ScalarRing:
    """Common interface.  Subclasses implement the ``_op`` methods on raw data."""

    is_field = True
    gens: tuple = ()
    a = 1

    @property
    def base(self):
        return self

    def __eq__(self, other):
        return isinstance(other, ScalarRing) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return self.spec()

    __str__ = __repr__

    def elem(self, data) -> ScalarElem:
        return ScalarElem(self, data)

    @property
    def zero(self):
        return ScalarElem(self, self._zero)

    @property
    def one(self):
        return ScalarElem(self, self._one)

    def embed(self, x: ScalarElem) -> ScalarElem:
        if x.ring == self:
            return x
        raise RingMismatch(f"cannot embed {x.ring} into {self}")

    def residue(self, x: ScalarElem) -> ScalarElem:
        return x

    def _sub(self, a, b):
        return self._add(a, self._neg(b))

    def _is_constant(self, a):
        return True

    def _is_monomial(self, a):
        return True

    def _parse_string(self, text: str) -> ScalarElem:
        from .parser import parse_poly

        p = parse_poly(text, [], self)
        return p.constant_term()


class RationalField(ScalarRing):
    characteristic = 0
    key = ("QQ",)
    _zero = Fraction(0)
    _one = Fraction(1)

    def spec(self):
        return "QQ"

    def __call__(self, value) -> ScalarElem:
        if isinstance(value, ScalarElem):
            return self.embed(value)
        if isinstance(value, str):
            s = value.strip()
            if re.fullmatch(r"-?\d+(/\d+)?", s):
                return ScalarElem(self, Fraction(s))
            return self._parse_string(s)
        return ScalarElem(self, Fraction(value))

    def _add(self, a, b):
        return a + b

    def _sub(self, a, b):
        return a - b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def _inv(self, a):
        if a == 0:
            raise NotAUnit("0 is not invertible")
        return 1 / a

    def _is_zero(self, a):
        return a == 0

    def _is_unit(self, a):
        return a != 0

    def format(self, a):
        return str(a)

    def random(self, rng, bound=4):
        return ScalarElem(self, Fraction(rng.randint(-bound, bound), rng.randint(1, bound)))

    def elements(self):
        raise AlgebraError("QQ is infinite")


class PrimeField(ScalarRing):
    def __init__(self, p: int):
        if not is_prime(p):
            raise AlgebraError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.key = ("GF", p)
        self._zero = 0
        self._one = 1 % p

    def spec(self):
        return f"GF({self.p})"

    def __call__(self, value) -> ScalarElem:
        if isinstance(value, ScalarElem):
            return self.embed(value)
        if isinstance(value, str):
            s = value.strip()
            if re.fullmatch(r"-?\d+(/\d+)?", s):
                value = Fraction(s)
            else:
                return self._parse_string(s)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise NotAUnit(f"denominator {value.denominator} vanishes mod {self.p}")
            return ScalarElem(self, value.numerator * pow(value.denominator, -1, self.p) % self.p)
        return ScalarElem(self, int(value) % self.p)

    def _add(self, a, b):
        return (a + b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _neg(self, a):
        return -a % self.p

    def _mul(self, a, b):
        return a * b % self.p

    def _inv(self, a):
        if a == 0:
            raise NotAUnit("0 is not invertible")
        return pow(a, -1, self.p)

    def _is_zero(self, a):
        return a == 0

    def _is_unit(self, a):
        return a != 0

    def format(self, a):
        return str(a)

    def random(self, rng, bound=None):
        return ScalarElem(self, rng.randrange(self.p))

    def elements(self):
        return [ScalarElem(self, i) for i in range(self.p)]


QQ = RationalField()


def _monomial_str(gens, exp):
    parts = []
    for g, e in zip(gens, exp):
        if e == 1:
            parts.append(g)
        elif e > 1:
            parts.append(f"{g}^{e}")
    return "*".join(parts)


class TestRing(ScalarRing):
    """``base[gens] / (ideal + m^order)``: a local Artinian ring with residue field ``base``."""

    __test__ = False  # not a pytest class
    is_field = False

    def __init__(self, base, gens, ideal=(), order=None):
        if not base.is_field:
            raise AlgebraError("test rings must be built over a field")
        gens = tuple(gens)
        if not gens:
            raise AlgebraError("a test ring needs at least one generator")
        s = len(gens)
        ideal = tuple(sorted({tuple(m) for m in ideal}))
        for m in ideal:
            if len(m) != s or sum(m) == 0:
                raise AlgebraError(f"bad ideal monomial {m}")
        self._explicit_order = order
        if order is None:
            # every generator needs a pure power in the ideal for m to be nilpotent
            bound = 1
            for i in range(s):
                pure = [m[i] for m in ideal if sum(m) == m[i]]
                if not pure:
                    raise AlgebraError(f"generator {gens[i]} is not nilpotent in the given ideal")
                bound += min(pure) - 1
            order = bound
        self._base = base
        self.gens = gens
        self.ideal = ideal
        self.characteristic = base.characteristic

        def killed(exp):
            if sum(exp) >= order:
                return True
            return any(all(e >= f for e, f in zip(exp, m)) for m in ideal)

        basis = []
        for deg in range(order):
            for combo in combinations_with_replacement(range(s), deg):
                exp = [0] * s
                for i in combo:
                    exp[i] += 1
                exp = tuple(exp)
                if not killed(exp):
                    basis.append(exp)
        basis.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
        self.basis = tuple(basis)
        self.index = {e: i for i, e in enumerate(basis)}
        self.a = max(sum(e) for e in basis) + 1
        self.table = tuple(
            tuple(self.index.get(tuple(x + y for x, y in zip(e1, e2)), -1) for e2 in basis)
            for e1 in basis
        )
        self.key = ("TR", base.key, gens, tuple(self.basis))
        B = len(basis)
        self._zero = (base._zero,) * B
        self._one = (base._one,) + (base._zero,) * (B - 1)

    @property
    def base(self):
        return self._base

    def spec(self):
        ideal = [_monomial_str(self.gens, m) for m in self.ideal]
        if self._explicit_order is not None:
            ideal.append(f"m^{self._explicit_order}")
        return f"{self._base.spec()}[{','.join(self.gens)}]/({', '.join(ideal)})"

    def __call__(self, value) -> ScalarElem:
        if isinstance(value, ScalarElem):
            return self.embed(value)
        if isinstance(value, str):
            s = value.strip()
            if re.fullmatch(r"-?\d+(/\d+)?", s):
                return self.embed(self._base(s))
            return self._parse_string(s)
        return self.embed(self._base(value))

    def embed(self, x: ScalarElem) -> ScalarElem:
        if x.ring == self:
            return x
        if x.ring == self._base:
            return ScalarElem(self, (x.data,) + (self._base._zero,) * (len(self.basis) - 1))
        raise RingMismatch(f"cannot embed {x.ring} into {self}")

    def gen(self, name_or_index) -> ScalarElem:
        i = self.gens.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        exp = tuple(1 if j == i else 0 for j in range(len(self.gens)))
        return self.monomial(exp)

    def monomial(self, exp, coeff=None) -> ScalarElem:
        exp = tuple(exp)
        base = self._base
        data = [base._zero] * len(self.basis)
        if exp in self.index:
            data[self.index[exp]] = base._one if coeff is None else base(coeff).data
        return ScalarElem(self, tuple(data))

    def residue(self, x: ScalarElem) -> ScalarElem:
        return ScalarElem(self._base, x.data[0])

    # -- raw arithmetic -------------------------------------------------------
    def _add(self, a, b):
        add = self._base._add
        return tuple(add(x, y) for x, y in zip(a, b))

    def _sub(self, a, b):
        sub = self._base._sub
        return tuple(sub(x, y) for x, y in zip(a, b))

    def _neg(self, a):
        neg = self._base._neg
        return tuple(neg(x) for x in a)

    def _is_constant(self, a):
        return not any(a[1:])

    def _is_monomial(self, a):
        return sum(1 for x in a if x) <= 1

    def _scale(self, c, a):
        mul = self._base._mul
        return tuple(mul(c, x) for x in a)

    def _mul(self, a, b):
        if not any(a[1:]):
            return self._scale(a[0], b)
        if not any(b[1:]):
            return self._scale(b[0], a)
        base = self._base
        add, mul = base._add, base._mul
        res = list(self._zero)
        nzb = [(j, y) for j, y in enumerate(b) if y]
        for i, x in enumerate(a):
            if not x:
                continue
            row = self.table[i]
            for j, y in nzb:
                k = row[j]
                if k >= 0:
                    res[k] = add(res[k], mul(x, y))
        return tuple(res)

    def _inv(self, a):
        base = self._base
        if base._is_zero(a[0]):
            raise NotAUnit(f"{self.format(a)} lies in the maximal ideal")
        c = base._inv(a[0])
        n = self._scale(c, a)
        n = (base._zero,) + n[1:]  # x/c = 1 + n with n nilpotent
        neg_n = self._neg(n)
        total = self._one
        power = self._one
        for _ in range(self.a - 1):
            power = self._mul(power, neg_n)
            total = self._add(total, power)
        return self._scale(c, total)

    def _is_zero(self, a):
        return not any(a)

    def _is_unit(self, a):
        return not self._base._is_zero(a[0])

    def format(self, a):
        base = self._base
        parts = []
        for exp, c in zip(self.basis, a):
            if base._is_zero(c):
                continue
            cs = base.format(c)
            mono = _monomial_str(self.gens, exp)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def monomial_coeffs(self, x: ScalarElem):
        """Nonzero (exponent, base coefficient) pairs of ``x``."""
        return [
            (exp, ScalarElem(self._base, c))
            for exp, c in zip(self.basis, x.data)
            if not self._base._is_zero(c)
        ]

    def random(self, rng, bound=3, in_m=False, unit=False):
        base = self._base
        data = [base.random(rng, bound).data for _ in self.basis]
        if in_m:
            data[0] = base._zero
        elif unit:
            while base._is_zero(data[0]):
                data[0] = base.random(rng, bound).data
        return ScalarElem(self, tuple(data))

    def elements(self):
        base_elems = [e.data for e in self._base.elements()]
        return [ScalarElem(self, tuple(d)) for d in product(base_elems, repeat=len(self.basis))]

    def maximal_ideal_elements(self):
        return [x for x in self.elements() if not x.is_unit()]


def _parse_monomial(text, gens):
    exp = [0] * len(gens)
    for factor in text.split("*"):
        factor = factor.strip()
        if "^" in factor:
            name, e = factor.split("^")
            e = int(e)
        else:
            name, e = factor, 1
        name = name.strip()
        if name not in gens:
            raise AlgebraError(f"unknown generator {name!r} in ring spec")
        exp[gens.index(name)] += e
    return tuple(exp)


_RING_RE = re.compile(r"^\s*(QQ|Q|GF\(\s*(\d+)\s*\)|F(\d+))\s*(?:\[([^\]]*)\]\s*(?:/\s*\(?(.*?)\)?)?)?\s*$")


def parse_ring(spec) -> ScalarRing:
    """Parse ``QQ``, ``GF(7)``, ``QQ[e]/(e^2)``, ``GF(5)[e1,e2]/(e1^2, e1*e2, e2^2)``
    or ``QQ[e1,e2]/(m^3)``."""
    if isinstance(spec, ScalarRing):
        return spec
    m = _RING_RE.match(spec)
    if not m:
        raise AlgebraError(f"cannot parse ring spec {spec!r}")
    head, p1, p2, gens, ideal = m.groups()
    if head in ("QQ", "Q"):
        base = QQ
    else:
        base = PrimeField(int(p1 or p2))
    if gens is None:
        return base
    gens = tuple(g.strip() for g in gens.split(",") if g.strip())
    monomials = []
    order = None
    if ideal:
        for item in ideal.split(","):
            item = item.strip()
            if not item:
                continue
            if re.fullmatch(r"m\s*\^\s*\d+", item):
                order = int(item.split("^")[1])
            else:
                monomials.append(_parse_monomial(item, gens))
    return TestRing(base, gens, monomials, order)


def truncated_polynomial_ring(base, gen: str, a: int) -> TestRing:
    """``base[gen]/(gen^a)``."""
    return TestRing(base, (gen,), [(a,)])
