"""Univariate polynomials in ``t`` and the quotient rings ``R[t]/(q^m)``."""
from __future__ import annotations

from fractions import Fraction

from ..errors import AlgebraError, NotAUnit, NotDivisible, RingMismatch
from .linalg import solve_local
from .scalars import ScalarElem

VAR = "t"


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return tuple(coeffs)


class UPoly:
    """Dense polynomial ``c_0 + c_1 t + ...`` over a scalar ring."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs=()):
        self.ring = ring
        self.coeffs = _trim(c if isinstance(c, ScalarElem) and c.ring == ring else ring(c) for c in coeffs)

    @classmethod
    def _raw(cls, ring, coeffs):
        p = cls.__new__(cls)
        p.ring = ring
        p.coeffs = _trim(coeffs)
        return p

    @classmethod
    def monomial(cls, ring, k, c=1):
        return cls(ring, [ring.zero] * k + [ring(c)])

    @classmethod
    def t(cls, ring):
        return cls.monomial(ring, 1)

    @classmethod
    def const(cls, ring, c):
        return cls(ring, [c])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.ring.zero

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.ring.one

    def _wrap(self, other):
        if isinstance(other, UPoly):
            if other.ring != self.ring:
                if other.ring == self.ring.base:
                    return UPoly(self.ring, other.coeffs)
                raise RingMismatch(f"rings differ: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction, ScalarElem)) and not isinstance(other, bool):
            return UPoly(self.ring, [self.ring(other)])
        return None

    def __add__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return UPoly._raw(self.ring, [self.coeff(i) + o.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UPoly._raw(self.ring, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return UPoly._raw(self.ring, ())
        out = [self.ring.zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return UPoly._raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = UPoly(self.ring, [self.ring.one])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.ring == other.ring and self.coeffs == other.coeffs
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.ring.key, self.coeffs))

    def divmod(self, q: "UPoly"):
        """Long division by a monic ``q``: returns ``(h, rem)`` with ``self = q*h + rem``."""
        if not q.is_monic():
            raise AlgebraError(f"divisor {q} is not monic")
        d = q.degree
        rem = list(self.coeffs)
        if len(rem) <= d:
            return UPoly._raw(self.ring, ()), self
        quot = [self.ring.zero] * (len(rem) - d)
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k]
            if c.is_zero():
                continue
            quot[k - d] = c
            for i, qc in enumerate(q.coeffs):
                rem[k - d + i] = rem[k - d + i] - c * qc
        return UPoly._raw(self.ring, quot), UPoly._raw(self.ring, rem[:d])

    def __mod__(self, q):
        return self.divmod(q)[1]

    def exact_div(self, q):
        h, rem = self.divmod(q)
        if not rem.is_zero():
            raise NotDivisible(f"{self} is not divisible by {q}")
        return h

    def eval(self, x):
        acc = None
        for c in reversed(self.coeffs):
            acc = c * (x ** 0) if acc is None else acc * x + c
        return self.ring.zero * (x ** 0) if acc is None else acc

    def derivative(self):
        return UPoly._raw(self.ring, [c * i for i, c in enumerate(self.coeffs)][1:])

    def residue(self):
        base = self.ring.base
        return UPoly._raw(base, [c.residue() for c in self.coeffs])

    def change_ring(self, ring):
        return UPoly(ring, [ring(c) for c in self.coeffs])

    def truncate(self, k):
        return UPoly._raw(self.ring, self.coeffs[:k])

    def __str__(self):
        return self.format()

    def format(self, ascending=False):
        if not self.coeffs:
            return "0"
        pieces = []
        order = range(len(self.coeffs)) if ascending else range(len(self.coeffs) - 1, -1, -1)
        for k in order:
            c = self.coeffs[k]
            if c.is_zero():
                continue
            mono = "" if k == 0 else (VAR if k == 1 else f"{VAR}^{k}")
            cs = str(c)
            simple = c.is_monomial()
            if not mono:
                piece = cs  # a trailing sum needs no brackets
            elif cs == "1":
                piece = mono
            elif cs == "-1":
                piece = "-" + mono
            else:
                piece = f"{cs}*{mono}" if simple else f"({cs})*{mono}"
            pieces.append(piece)
        out = pieces[0]
        for p in pieces[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"UPoly({self})"


def parse_upoly(text, ring) -> UPoly:
    from .parser import parse_poly

    p = parse_poly(text, [VAR], ring)
    deg = p.total_degree()
    return UPoly(ring, [p.coefficient((k,)) for k in range(deg + 1)])


class QuotientRing:
    """``R[t]/(q^m)`` for ``q`` monic of degree ``N >= 1``."""

    __slots__ = ("ring", "q", "m", "modulus", "_inv_cache")

    def __init__(self, ring, q: UPoly, m: int):
        if not q.is_monic() or q.degree < 1:
            raise AlgebraError(f"q = {q} must be monic of positive degree")
        if m < 0:
            raise AlgebraError("negative power of q")
        self.ring = ring
        self.q = q
        self.m = m
        self.modulus = q ** m

    @property
    def N(self):
        return self.q.degree

    @property
    def dim(self):
        return self.q.degree * self.m

    def __eq__(self, other):
        return (
            isinstance(other, QuotientRing)
            and self.ring == other.ring
            and self.q == other.q
            and self.m == other.m
        )

    def __hash__(self):
        return hash((self.ring.key, self.q.coeffs, self.m))

    def __call__(self, value) -> "ModQElem":
        if isinstance(value, ModQElem):
            value = value.rep
        if isinstance(value, str):
            value = parse_upoly(value, self.ring)
        if not isinstance(value, UPoly):
            value = UPoly(self.ring, [self.ring(value)])
        elif value.ring != self.ring:
            value = value.change_ring(self.ring)
        if self.m == 0:
            return ModQElem(self, UPoly(self.ring))
        return ModQElem(self, value % self.modulus)

    @property
    def zero(self):
        return ModQElem(self, UPoly(self.ring))

    @property
    def one(self):
        return self(1)

    def t(self):
        return self(UPoly.t(self.ring))

    def level(self, m):
        return QuotientRing(self.ring, self.q, m)

    def __repr__(self):
        return f"{self.ring.spec()}[t]/(({self.q})^{self.m})"


class ModQElem:
    __slots__ = ("ctx", "rep")

    def __init__(self, ctx: QuotientRing, rep: UPoly):
        self.ctx = ctx
        self.rep = rep

    def _coerce(self, other):
        if isinstance(other, ModQElem):
            if other.ctx != self.ctx:
                raise RingMismatch(f"cannot combine elements of {self.ctx} and {other.ctx}")
            return other
        if isinstance(other, (int, Fraction, ScalarElem, UPoly)) and not isinstance(other, bool):
            return self.ctx(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModQElem(self.ctx, self.rep + o.rep)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModQElem(self.ctx, self.rep - o.rep)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModQElem(self.ctx, o.rep - self.rep)

    def __neg__(self):
        return ModQElem(self.ctx, -self.rep)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.ctx.m == 0:
            return self
        return ModQElem(self.ctx, (self.rep * o.rep) % self.ctx.modulus)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ctx.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, ModQElem):
            return self.ctx == other.ctx and self.rep == other.rep
        try:
            o = self._coerce(other)
        except AlgebraError:
            return False
        if o is None:
            return NotImplemented
        return self.rep == o.rep

    def __hash__(self):
        return hash((self.ctx, self.rep))

    def is_zero(self):
        return self.rep.is_zero()

    def _mult_matrix(self):
        ctx = self.ctx
        D = ctx.dim
        cols = []
        basis = ModQElem(ctx, UPoly(ctx.ring, [ctx.ring.one]))
        t = ctx.t()
        for _ in range(D):
            prod = self * basis
            cols.append([prod.rep.coeff(i) for i in range(D)])
            basis = basis * t
        return [[cols[j][i] for j in range(D)] for i in range(D)]

    def inverse(self) -> "ModQElem":
        ctx = self.ctx
        if ctx.m == 0:
            return self
        D = ctx.dim
        e0 = [ctx.ring.one] + [ctx.ring.zero] * (D - 1)
        try:
            (sol,) = solve_local(self._mult_matrix(), [e0])
        except NotAUnit:
            raise NotAUnit(f"{self.rep} is not invertible modulo ({ctx.q})^{ctx.m}") from None
        return ModQElem(ctx, UPoly(ctx.ring, sol))

    def is_unit(self) -> bool:
        try:
            self.inverse()
        except NotAUnit:
            return False
        return True

    def reduce(self, m) -> "ModQElem":
        if m > self.ctx.m:
            raise AlgebraError(f"cannot reduce from level {self.ctx.m} up to {m}")
        return self.ctx.level(m)(self.rep)

    def lift(self, m) -> "ModQElem":
        """The canonical representative viewed modulo ``q^m`` for ``m >= level``."""
        return self.ctx.level(m)(self.rep)

    def divide_by_q(self) -> "ModQElem":
        """For ``x`` in ``q R[t]/(q^m)`` return ``x/q`` modulo ``q^(m-1)``."""
        h = self.rep.exact_div(self.ctx.q)
        return self.ctx.level(self.ctx.m - 1)(h)

    def divisible_by_q_power(self, k) -> bool:
        if k <= 0:
            return True
        if k > self.ctx.m:
            raise AlgebraError("divisibility beyond the stored level is undefined")
        return (self.rep % (self.ctx.q ** k)).is_zero()

    def __str__(self):
        return str(self.rep)

    def __repr__(self):
        return f"ModQElem({self.rep} mod ({self.ctx.q})^{self.ctx.m})"
