"""Sparse multivariate polynomials over a :class:`ScalarRing`."""
from __future__ import annotations

from fractions import Fraction

from ..errors import (
    AlgebraError,
    MissingVariable,
    MixedCarrier,
    NotDivisible,
    RingMismatch,
    UnknownVariable,
)
from .scalars import ScalarElem, ScalarRing


def grlex_key(exp):
    # graded lex with the last variable ranked highest, so y^2 - x*y prints y-first
    return (sum(exp), exp[::-1])


def _monomial_str(names, exp):
    parts = []
    for v, e in zip(names, exp):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


class MPoly:
    """A polynomial in the ordered variables ``vars`` with coefficients in ``ring``.

    ``terms`` maps exponent tuples to nonzero :class:`ScalarElem` values.
    Instances are treated as immutable.
    """

    __slots__ = ("ring", "vars", "terms", "_hash")

    def __init__(self, ring: ScalarRing, vars, terms=None):
        self.ring = ring
        self.vars = tuple(vars)
        clean = {}
        if terms:
            n = len(self.vars)
            for exp, c in dict(terms).items():
                exp = tuple(exp)
                if len(exp) != n:
                    raise AlgebraError(f"exponent {exp} does not match variables {self.vars}")
                c = c if isinstance(c, ScalarElem) and c.ring == ring else ring(c)
                if not c.is_zero():
                    clean[exp] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring, vars, terms):
        p = cls.__new__(cls)
        p.ring = ring
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    # -- constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, ring, vars):
        return cls._raw(ring, tuple(vars), {})

    @classmethod
    def const(cls, ring, vars, c):
        vars = tuple(vars)
        return cls(ring, vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, ring, vars, name):
        vars = tuple(vars)
        if name not in vars:
            raise UnknownVariable(f"unknown variable {name!r}")
        exp = tuple(1 if v == name else 0 for v in vars)
        return cls._raw(ring, vars, {exp: ring.one})

    def _like(self, terms):
        return MPoly._raw(self.ring, self.vars, terms)

    # -- structure ------------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> ScalarElem:
        return self.terms.get((0,) * len(self.vars), self.ring.zero)

    def coefficient(self, exp) -> ScalarElem:
        return self.terms.get(tuple(exp), self.ring.zero)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name):
        i = self._index(name)
        return max((e[i] for e in self.terms), default=-1)

    def used_vars(self):
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    def leading(self):
        """(exponent, coefficient) of the graded-lex leading term."""
        exp = max(self.terms, key=grlex_key)
        return exp, self.terms[exp]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def _index(self, name):
        try:
            return self.vars.index(name)
        except ValueError:
            raise UnknownVariable(f"unknown variable {name!r}") from None

    # -- arithmetic -----------------------------------------------------------
    def _check(self, other):
        if other.vars != self.vars:
            raise AlgebraError(f"variable lists differ: {self.vars} vs {other.vars}")
        if other.ring != self.ring:
            raise RingMismatch(f"rings differ: {self.ring} vs {other.ring}")

    def _as_poly(self, other):
        if isinstance(other, MPoly):
            if other.ring != self.ring and other.ring == self.ring.base:
                other = other.change_ring(self.ring)
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, ScalarElem)) and not isinstance(other, bool):
            return MPoly.const(self.ring, self.vars, self.ring(other))
        return None

    def __add__(self, other):
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in o.terms.items():
            if e in terms:
                s = terms[e] + c
                if s.is_zero():
                    del terms[e]
                else:
                    terms[e] = s
            else:
                terms[e] = c
        return self._like(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ScalarElem)) and not isinstance(other, bool):
            c = self.ring(other)
            if c.is_zero():
                return self._like({})
            terms = {}
            for e, a in self.terms.items():
                p = a * c
                if not p.is_zero():
                    terms[e] = p
            return self._like(terms)
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                if e in terms:
                    p = terms[e] + p
                terms[e] = p
        return self._like({e: c for e, c in terms.items() if not c.is_zero()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise AlgebraError("negative polynomial power")
        result = MPoly.const(self.ring, self.vars, self.ring.one)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, MPoly):
            return exact_divide(self, other)
        return self * self.ring(other).inverse()

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.vars == other.vars and self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, ScalarElem)) and not isinstance(other, bool):
            if not self.is_constant():
                return False
            return self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, self.ring.key, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and substitution ------------------------------------------------
    def derivative(self, name) -> "MPoly":
        i = self._index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                d = c * e[i]
                if not d.is_zero():
                    ne = list(e)
                    ne[i] -= 1
                    terms[tuple(ne)] = d
        return self._like(terms)

    def eval(self, point):
        """Substitute values for variables.

        Values may be scalars, MPolys, ModQElems or TruncSeries; all assigned
        values must share one carrier type.  The result lives in that carrier.
        """
        used = self.used_vars()
        missing = [v for v in used if v not in point]
        if missing:
            raise MissingVariable(f"no value for variable(s) {', '.join(missing)}")
        values = []
        carrier = None
        for v in self.vars:
            if v not in point:
                values.append(None)
                continue
            x = point[v]
            if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
                x = self.ring(x)
            kind = type(x)
            if carrier is None:
                carrier = kind
            elif kind is not carrier:
                raise MixedCarrier(f"mixed value types {carrier.__name__} and {kind.__name__}")
            values.append(x)
        sample = next((x for x in values if x is not None), None)
        if sample is None:
            return self.constant_term()
        one = sample ** 0
        cache = {}

        def power(i, e):
            key = (i, e)
            if key not in cache:
                if e == 1:
                    cache[key] = values[i]
                else:
                    half = power(i, e // 2)
                    sq = half * half
                    cache[key] = sq * values[i] if e % 2 else sq
            return cache[key]

        acc = None
        for exp, c in self.terms.items():
            term = None
            for i, e in enumerate(exp):
                if e:
                    pw = power(i, e)
                    term = pw if term is None else term * pw
            term = c * one if term is None else c * term
            acc = term if acc is None else acc + term
        if acc is None:
            return one * self.ring.zero
        return acc

    def substitute(self, mapping, target_vars=None) -> "MPoly":
        """Replace variables by polynomials; unmapped variables map to themselves
        in ``target_vars`` (default: the variables of the first value)."""
        if target_vars is None:
            sample = next(iter(mapping.values()), None)
            target_vars = sample.vars if isinstance(sample, MPoly) else self.vars
        target_vars = tuple(target_vars)
        ring = self.ring
        for val in mapping.values():
            if isinstance(val, MPoly):
                ring = val.ring
                break
        point = {}
        for v in self.vars:
            if v in mapping:
                val = mapping[v]
                point[v] = val if isinstance(val, MPoly) else MPoly.const(ring, target_vars, val)
            else:
                point[v] = MPoly.var(ring, target_vars, v)
        if not point:
            return MPoly.const(ring, target_vars, ring(self.constant_term()))
        return self.eval(point)

    def change_ring(self, ring) -> "MPoly":
        return MPoly(ring, self.vars, {e: ring(c) for e, c in self.terms.items()})

    def with_vars(self, new_vars) -> "MPoly":
        """Re-express in a superset of variables (new variables get exponent 0)."""
        new_vars = tuple(new_vars)
        idx = []
        for v in self.vars:
            if v not in new_vars:
                if self.degree_in(v) > 0:
                    raise UnknownVariable(f"variable {v!r} missing from {new_vars}")
                idx.append(None)
            else:
                idx.append(new_vars.index(v))
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(new_vars)
            for i, k in enumerate(e):
                if k:
                    ne[idx[i]] = k
            terms[tuple(ne)] = c
        return MPoly._raw(self.ring, new_vars, terms)

    # -- printing / serialization ---------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exp, c in self.sorted_terms():
            mono = _monomial_str(self.vars, exp)
            cs = str(c)
            simple = c.is_monomial()
            if not mono:
                piece = cs if simple else f"({cs})"
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
        return f"MPoly({self.vars}, {self})"

    def to_json(self):
        return {
            "vars": list(self.vars),
            "terms": [{"exp": list(e), "coef": str(c)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data, ring):
        return cls(ring, data["vars"], {tuple(t["exp"]): ring(t["coef"]) for t in data["terms"]})


def exact_divide(num: MPoly, den: MPoly) -> MPoly:
    """Return ``s`` with ``s * den == num`` exactly, or raise :class:`NotDivisible`."""
    if den.is_zero():
        raise NotDivisible("division by the zero polynomial")
    num = den._as_poly(num)
    lead_e, lead_c = den.leading()
    try:
        lead_inv = lead_c.inverse()
    except AlgebraError:
        raise NotDivisible(f"leading coefficient {lead_c} of the divisor is not a unit") from None
    quotient = {}
    rem = num
    while rem.terms:
        e, c = rem.leading()
        if any(a < b for a, b in zip(e, lead_e)):
            raise NotDivisible(f"{num} is not divisible by {den}")
        qe = tuple(a - b for a, b in zip(e, lead_e))
        qc = c * lead_inv
        quotient[qe] = qc
        rem = rem - MPoly._raw(den.ring, den.vars, {qe: qc}) * den
    return MPoly(num.ring, num.vars, quotient)


def partial_derivative(p: MPoly, name: str) -> MPoly:
    return p.derivative(name)


def mpoly_eval(p: MPoly, point):
    return p.eval(point)
