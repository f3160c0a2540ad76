"""Exact parser for Laurent polynomials over the valued coefficient field.

Accepts sums of products such as ``(3 + t^2)*x^2*y^-1 + t*x - 1/2``.
``t`` is the reserved uniformizer: its exponents may be rational, written
``t^2``, ``t^-1``, ``t^1/2``, ``t^(3/2)`` or ``t^{3/2}``.  All other names
are Laurent variables with integer exponents.  Coefficients are integers
or fractions ``p/q``.  Everything is exact; no floats are accepted.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .degeneration import LaurentPoly, ValuedCoeff
from .errors import MalformedInput

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|([-+*^(){}/]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise MalformedInput(f"unexpected character at position {pos}: "
                                 f"{text[pos:pos + 10]!r}")
        if m.group(1):
            tokens.append(("num", m.group(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2)))
        else:
            tokens.append(("sym", m.group(3)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str]], variables: Sequence[str]):
        self.tokens = tokens
        self.pos = 0
        self.variables = list(variables)
        self.nvars = len(self.variables)

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, symbol: str):
        kind, value = self.take()
        if kind != "sym" or value != symbol:
            raise MalformedInput(f"expected {symbol!r}, found {value!r}")

    # -- grammar -----------------------------------------------------------

    def parse(self) -> LaurentPoly:
        poly = self.expr()
        if self.pos != len(self.tokens):
            raise MalformedInput(f"trailing input from token {self.peek()[1]!r}")
        return poly

    def expr(self) -> LaurentPoly:
        sign = 1
        kind, value = self.peek()
        if kind == "sym" and value in "+-":
            self.take()
            sign = -1 if value == "-" else 1
        poly = self.term()
        if sign < 0:
            poly = -poly
        while True:
            kind, value = self.peek()
            if kind == "sym" and value in "+-":
                self.take()
                rhs = self.term()
                poly = poly - rhs if value == "-" else poly + rhs
            else:
                return poly

    def term(self) -> LaurentPoly:
        poly = self.atom()
        while True:
            kind, value = self.peek()
            if kind == "sym" and value == "*":
                self.take()
                poly = poly * self.atom()
            else:
                return poly

    def atom(self) -> LaurentPoly:
        kind, value = self.peek()
        if kind == "sym" and value == "-":
            self.take()
            return -self.atom()
        if kind == "sym" and value == "(":
            self.take()
            poly = self.expr()
            self.expect(")")
            return poly
        if kind == "num":
            return self.constant(self.rational())
        if kind == "name":
            self.take()
            if value == "t":
                e = self.exponent(rational=True) if self.at_caret() else Fraction(1)
                return self.constant(ValuedCoeff.t_power(e))
            if value not in self.variables:
                raise MalformedInput(f"unknown variable {value!r}")
            e = self.exponent(rational=False) if self.at_caret() else Fraction(1)
            if e.denominator != 1:
                raise MalformedInput(f"variable {value!r} needs an integer exponent")
            u = tuple(int(e) if name == value else 0 for name in self.variables)
            return LaurentPoly.monomial(self.nvars, u)
        raise MalformedInput(f"unexpected token {value!r}")

    def at_caret(self) -> bool:
        kind, value = self.peek()
        return kind == "sym" and value == "^"

    def exponent(self, rational: bool) -> Fraction:
        self.expect("^")
        kind, value = self.peek()
        if kind == "sym" and value in "({":
            closing = ")" if value == "(" else "}"
            self.take()
            e = self.signed_rational()
            self.expect(closing)
            return e
        e = self.signed_rational()
        if not rational and e.denominator != 1:
            raise MalformedInput("integer exponent expected")
        return e

    def signed_rational(self) -> Fraction:
        sign = 1
        kind, value = self.peek()
        if kind == "sym" and value == "-":
            self.take()
            sign = -1
        return sign * self.rational()

    def rational(self) -> Fraction:
        kind, value = self.take()
        if kind != "num":
            raise MalformedInput(f"number expected, found {value!r}")
        numer = int(value)
        kind, nxt = self.peek()
        if kind == "sym" and nxt == "/":
            save = self.pos
            self.take()
            kind, denom = self.peek()
            if kind == "num":
                self.take()
                if int(denom) == 0:
                    raise MalformedInput("zero denominator")
                return Fraction(numer, int(denom))
            self.pos = save
        return Fraction(numer)

    def constant(self, c) -> LaurentPoly:
        if not isinstance(c, ValuedCoeff):
            c = ValuedCoeff.rational(c)
        return LaurentPoly.of(self.nvars, [((0,) * self.nvars, c)])


def parse_poly(text: str, variables: Sequence[str] | None = None) -> LaurentPoly:
    """Parse a Laurent polynomial; variable order fixes the exponent axes.

    When `variables` is omitted, names are collected from the input and
    ordered alphabetically (the uniformizer `t` is never a variable).
    """
    tokens = _tokenize(text)
    if variables is None:
        seen = {value for kind, value in tokens if kind == "name" and value != "t"}
        variables = sorted(seen)
    if "t" in variables:
        raise MalformedInput("'t' is the uniformizer, not a variable")
    if len(set(variables)) != len(tuple(variables)):
        raise MalformedInput("duplicate variable names")
    return _Parser(tokens, variables).parse()


def parse_coeff(text: str) -> ValuedCoeff:
    """Parse a bare coefficient such as ``3 + t^2 - 1/2*t^(1/3)``."""
    poly = parse_poly(text, variables=())
    if poly.is_zero:
        return ValuedCoeff.zero()
    return poly.terms[0][1]
