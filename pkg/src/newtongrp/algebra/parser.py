"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT | IDENT | '(' expr ')'

Division is only allowed by an invertible constant, so ``3/2*x`` parses as a
coefficient times ``x``.  Identifiers are looked up first among the polynomial
variables and then among the generators of a test ring.
"""
from __future__ import annotations

import re

from ..errors import ParseError, UnknownIdentifier, AlgebraError
from .mpoly import MPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))?")


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(("INT", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("IDENT", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", location=m.start(3))
            tokens.append((ch, ch, m.start(3)))
        pos = m.end()
    tokens.append(("EOF", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, variables, ring):
        self.text = text
        self.vars = tuple(variables)
        self.ring = ring
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "EOF" else repr(kind)
            got = "end of input" if tok[0] == "EOF" else repr(tok[1])
            raise ParseError(f"expected {want}, found {got}", location=tok[2])
        self.i += 1
        return tok

    def parse(self):
        if self.peek()[0] == "EOF":
            raise ParseError("empty expression", location=0)
        p = self.expr()
        self.take("EOF")
        return p

    def expr(self):
        acc = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.unary()
            if op == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant():
                    raise ParseError("division by a non-constant expression", location=pos)
                c = rhs.constant_term()
                try:
                    acc = acc * c.inverse()
                except AlgebraError:
                    raise ParseError(f"division by non-invertible constant {c}", location=pos) from None
        return acc

    def unary(self):
        kind = self.peek()[0]
        if kind == "-":
            self.take()
            return -self.unary()
        if kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "INT":
                raise ParseError("exponent must be a nonnegative integer", location=tok[2])
            self.take()
            base = base ** int(tok[1])
        return base

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "INT":
            self.take()
            return MPoly.const(self.ring, self.vars, self.ring(int(val)))
        if kind == "IDENT":
            self.take()
            if val in self.vars:
                return MPoly.var(self.ring, self.vars, val)
            if val in self.ring.gens:
                return MPoly.const(self.ring, self.vars, self.ring.gen(val))
            raise UnknownIdentifier(f"unknown identifier {val!r}", location=pos)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        what = "end of input" if kind == "EOF" else repr(val)
        raise ParseError(f"unexpected {what}", location=pos)


def parse_poly(text: str, variables, ring) -> MPoly:
    """Parse ``text`` into an :class:`MPoly` in ``variables`` over ``ring``."""
    return _Parser(text, variables, ring).parse()
