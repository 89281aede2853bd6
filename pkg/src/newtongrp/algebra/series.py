"""Truncated power series ``c_0 + c_1 t + ... + c_{T-1} t^{T-1} + O(t^T)``."""
from __future__ import annotations

from fractions import Fraction

from ..errors import AlgebraError, NotAUnit, RingMismatch
from .scalars import ScalarElem
from .upoly import UPoly, parse_upoly


class TruncSeries:
    """A power series known modulo ``t^T``.

    Binary operations return the smaller of the two truncation orders; nothing
    ever extends precision silently.
    """

    __slots__ = ("ring", "coeffs", "T")

    def __init__(self, ring, coeffs, T: int):
        if T < 1:
            raise AlgebraError("truncation order must be positive")
        cs = [c if isinstance(c, ScalarElem) and c.ring == ring else ring(c) for c in list(coeffs)[:T]]
        cs += [ring.zero] * (T - len(cs))
        self.ring = ring
        self.coeffs = tuple(cs)
        self.T = T

    @classmethod
    def _raw(cls, ring, coeffs, T):
        s = cls.__new__(cls)
        s.ring = ring
        s.coeffs = tuple(coeffs)
        s.T = T
        return s

    @classmethod
    def from_poly(cls, p, T):
        if isinstance(p, str):
            raise AlgebraError("use parse_series for strings")
        return cls(p.ring, p.coeffs, T)

    @classmethod
    def zero(cls, ring, T):
        return cls(ring, [], T)

    @classmethod
    def one(cls, ring, T):
        return cls(ring, [ring.one], T)

    @classmethod
    def t(cls, ring, T):
        return cls(ring, [ring.zero, ring.one], T)

    def coeff(self, k):
        return self.coeffs[k] if k < self.T else None

    def to_poly(self) -> UPoly:
        return UPoly(self.ring, self.coeffs)

    def truncate(self, T):
        if T > self.T:
            raise AlgebraError(f"cannot extend precision from {self.T} to {T}")
        return TruncSeries._raw(self.ring, self.coeffs[:T], T)

    def _coerce(self, other):
        if isinstance(other, TruncSeries):
            if other.ring != self.ring:
                if other.ring == self.ring.base:
                    return TruncSeries(self.ring, [self.ring(c) for c in other.coeffs], other.T)
                raise RingMismatch(f"rings differ: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, UPoly):
            return TruncSeries(self.ring, [self.ring(c) for c in other.coeffs], self.T)
        if isinstance(other, (int, Fraction, ScalarElem)) and not isinstance(other, bool):
            return TruncSeries(self.ring, [self.ring(other)], self.T)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        T = min(self.T, o.T)
        return TruncSeries._raw(self.ring, [a + b for a, b in zip(self.coeffs[:T], o.coeffs[:T])], T)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries._raw(self.ring, [-c for c in self.coeffs], self.T)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ScalarElem)) and not isinstance(other, bool):
            c = self.ring(other)
            return TruncSeries._raw(self.ring, [x * c for x in self.coeffs], self.T)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        T = min(self.T, o.T)
        out = [self.ring.zero] * T
        b = o.coeffs
        for i in range(T):
            a = self.coeffs[i]
            if a.is_zero():
                continue
            for j in range(T - i):
                if not b[j].is_zero():
                    out[i + j] = out[i + j] + a * b[j]
        return TruncSeries._raw(self.ring, out, T)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = TruncSeries.one(self.ring, self.T)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "TruncSeries":
        c0 = self.coeffs[0]
        if not c0.is_unit():
            raise NotAUnit(f"constant term {c0} is not a unit")
        inv0 = c0.inverse()
        out = [inv0]
        for k in range(1, self.T):
            acc = self.ring.zero
            for j in range(1, k + 1):
                acc = acc + self.coeffs[j] * out[k - j]
            out.append(-acc * inv0)
        return TruncSeries._raw(self.ring, out, self.T)

    def is_unit(self):
        return self.coeffs[0].is_unit()

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            return self.ring == other.ring and self.T == other.T and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.key, self.coeffs, self.T))

    def agrees_with(self, other, k=None) -> bool:
        """Equality of the first ``k`` coefficients (default: common precision)."""
        o = self._coerce(other)
        k = min(self.T, o.T) if k is None else k
        return self.coeffs[:k] == o.coeffs[:k]

    def residue(self) -> "TruncSeries":
        base = self.ring.base
        return TruncSeries._raw(base, [c.residue() for c in self.coeffs], self.T)

    def valuation(self):
        """Index of the first nonzero coefficient, or None if all vanish."""
        return next((i for i, c in enumerate(self.coeffs) if not c.is_zero()), None)

    def shift_down(self, d) -> "TruncSeries":
        """Divide by ``t^d``; the first ``d`` coefficients must vanish."""
        if any(not c.is_zero() for c in self.coeffs[:d]):
            raise AlgebraError(f"series is not divisible by t^{d}")
        return TruncSeries._raw(self.ring, self.coeffs[d:], self.T - d)

    def change_ring(self, ring):
        return TruncSeries(ring, [ring(c) for c in self.coeffs], self.T)

    def __str__(self):
        body = self.to_poly().format(ascending=True)
        return f"{body} + O(t^{self.T})" if body != "0" else f"O(t^{self.T})"

    def __repr__(self):
        return f"TruncSeries({self})"

    def to_json(self):
        last = max((i for i, c in enumerate(self.coeffs) if not c.is_zero()), default=-1)
        return {"coeffs": [str(c) for c in self.coeffs[: last + 1]], "T": self.T}


def parse_series(text, ring, T) -> TruncSeries:
    """Parse a polynomial in ``t`` and truncate at ``T``."""
    return TruncSeries.from_poly(parse_upoly(text, ring), T)
