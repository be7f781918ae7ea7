"""Pratt parser for the scalar expression grammar.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?            right associative
    atom   := NUMBER | NAME | '(' expr ')'

``**`` is accepted as a synonym for ``^``.  Numbers are integers or decimal
literals such as ``0.25`` and are read exactly.  Exponents must evaluate to a
constant nonnegative integer.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .scalar import Chart, Scalar, ScalarDivisionError

MAX_EXPONENT = 1000

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\.\d*)?|\.\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>\*\*|[-+*/^()])
""", re.VERBOSE)

# binding powers
_INFIX = {"+": 10, "-": 10, "*": 20, "/": 20, "^": 40}
_UNARY = 30


class ExpressionError(ValueError):
    """Malformed or unresolvable expression; ``pos`` is a 0-based offset."""

    def __init__(self, message: str, text: str = "", pos: int | None = None):
        self.text = text
        self.pos = pos
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{message}{where}" + (f" in {text!r}" if text else ""))


class ZeroDenominatorError(ExpressionError, ZeroDivisionError):
    """A denominator in the expression is identically zero."""


def tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExpressionError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            value = m.group()
            if value == "**":
                value = "^"
            tokens.append((kind, value, pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, chart: Chart):
        self.text = text
        self.chart = chart
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, pos):
        raise ExpressionError(message, self.text, pos)

    def parse(self) -> Scalar:
        if self.peek()[0] == "end":
            self.fail("empty expression", 0)
        value = self.expression(0)
        kind, tok, pos = self.peek()
        if kind != "end":
            self.fail(f"unexpected {tok!r}", pos)
        return value

    def expression(self, min_bp: int) -> Scalar:
        left = self.prefix()
        while True:
            kind, op, pos = self.peek()
            if kind != "op" or op not in _INFIX:
                break
            bp = _INFIX[op]
            if bp <= min_bp:
                break
            self.advance()
            if op == "^":
                left = self.power(left, pos)
            else:
                right = self.expression(bp)
                left = self.binary(op, left, right, pos)
        return left

    def prefix(self) -> Scalar:
        kind, tok, pos = self.advance()
        if kind == "num":
            return Scalar.constant(self.chart, Fraction(tok))
        if kind == "name":
            if tok not in self.chart.coords:
                self.fail(f"unknown identifier {tok!r}", pos)
            return self.chart.coord(tok)
        if tok == "(":
            inner = self.expression(0)
            kind, close, cpos = self.advance()
            if close != ")":
                self.fail("expected ')'", cpos)
            return inner
        if tok == "-":
            return -self.expression(_UNARY)
        if tok == "+":
            return self.expression(_UNARY)
        if kind == "end":
            self.fail("unexpected end of expression", pos)
        self.fail(f"unexpected {tok!r}", pos)

    def power(self, base: Scalar, pos: int) -> Scalar:
        epos = self.peek()[2]
        # right associative: parse the exponent at the same binding power
        exponent = self.expression(_INFIX["^"] - 1)
        if not exponent.is_constant():
            self.fail("exponent must be a constant", epos)
        e = exponent.constant_value()
        if e.denominator != 1 or e < 0:
            self.fail("exponent must be a nonnegative integer", epos)
        if e > MAX_EXPONENT:
            self.fail(f"exponent exceeds {MAX_EXPONENT}", epos)
        return base ** int(e)

    def binary(self, op, left, right, pos):
        if op == "+":
            return left + right
        if op == "-":
            return left - right
        if op == "*":
            return left * right
        try:
            return left / right
        except ScalarDivisionError:
            raise ZeroDenominatorError("division by zero", self.text, pos) from None


def parse_scalar(text: str, chart: Chart) -> Scalar:
    """Parse ``text`` into a canonical :class:`Scalar` on ``chart``."""
    if not isinstance(text, str):
        raise TypeError("expression must be a string")
    try:
        return _Parser(text, chart).parse()
    except ScalarDivisionError as exc:
        raise ZeroDenominatorError(str(exc), text) from None
