"""Textual expression grammar for the CLI.

Identifiers: C{indices}, P{i}{j} or P{i}, D{i}{j}{k}, Om{i}, om{i}, Ga{i}.
Operators: + - * ^, rational literals p/q, [a,b] commutator, {a,b}
anticommutator.  Juxtaposition multiplies.  parse_expr round-trips with
the canonical printer in freealg.format_poly.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .core import d_poly, gen_C, gen_P, pentagon_poly
from .freealg import AlgebraError, NCPoly, anticommutator, commutator, format_poly

_TOKEN = re.compile(r"""
    (?P<gen>Om\d|om\d|Ga\d|C\d+|P\d\d?|D\d\d\d)
  | (?P<int>\d+)
  | (?P<op>[-+*^/(),\[\]{}])
  | (?P<ws>\s+)
""", re.VERBOSE)


class ParseError(AlgebraError):
    pass


def _tokenize(text: str) -> list[str]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r} at {pos}")
        pos = m.end()
        if m.lastgroup != "ws":
            out.append(m.group())
    return out


class _Parser:
    def __init__(self, tokens: list[str], rank: int):
        self.toks = tokens
        self.i = 0
        self.rank = rank

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self) -> str:
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of expression")
        self.i += 1
        return t

    def expect(self, tok: str):
        t = self.next()
        if t != tok:
            raise ParseError(f"expected {tok!r}, found {t!r}")

    # expr := term (('+'|'-') term)*
    def expr(self) -> NCPoly:
        out = self.term()
        while self.peek() in ("+", "-"):
            op = self.next()
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    # term := ['-'] power (power | '*' power)*
    def term(self) -> NCPoly:
        sign = 1
        while self.peek() == "-":
            self.next()
            sign = -sign
        out = self.power()
        while True:
            t = self.peek()
            if t == "*":
                self.next()
                out = out * self.power()
            elif t is not None and (t[0].isdigit() or t[0] in "([{"
                                    or _TOKEN.match(t).lastgroup == "gen"):
                out = out * self.power()
            else:
                break
        return sign * out

    # power := atom ('^' int)?
    def power(self) -> NCPoly:
        base = self.atom()
        if self.peek() == "^":
            self.next()
            n = self.next()
            if not n.isdigit():
                raise ParseError(f"exponent must be a nonnegative integer, found {n!r}")
            return base ** int(n)
        return base

    def atom(self) -> NCPoly:
        t = self.next()
        if t == "(":
            out = self.expr()
            self.expect(")")
            return out
        if t == "[":
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect("]")
            return commutator(a, b)
        if t == "{":
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect("}")
            return anticommutator(a, b)
        if t == "-":
            return -self.atom()
        if t.isdigit():
            num = int(t)
            if self.peek() == "/":
                self.next()
                den = self.next()
                if not den.isdigit():
                    raise ParseError(f"malformed rational, found {den!r}")
                return NCPoly.const(self.rank, Fraction(num, int(den)))
            return NCPoly.const(self.rank, num)
        return self.generator(t)

    def generator(self, tok: str) -> NCPoly:
        kind = tok[:2] if tok[:2] in ("Om", "om", "Ga") else tok[0]
        digits = [int(ch) for ch in tok[len(kind):]]
        try:
            if kind == "C":
                return gen_C(self.rank, digits)
            if kind == "P":
                if len(digits) == 1:
                    return gen_P(self.rank, digits[0], digits[0])
                return gen_P(self.rank, *digits)
            if kind == "D":
                return d_poly(self.rank, *digits)
            if kind in ("Om", "om", "Ga"):
                if self.rank != 4:
                    raise ParseError("pentagon labels need exactly 4 indices")
                return pentagon_poly(self.rank, kind, digits[0])
        except ParseError:
            raise
        except AlgebraError as exc:
            raise ParseError(str(exc)) from None
        raise ParseError(f"unknown generator {tok!r}")


def parse_expr(text: str, rank: int = 4) -> NCPoly:
    """Parse an expression over {1..rank}; decimals are rejected by the
    grammar (there is no '.' token)."""
    p = _Parser(_tokenize(text), rank)
    out = p.expr()
    if p.peek() is not None:
        raise ParseError(f"trailing input at token {p.peek()!r}")
    return out


__all__ = ["ParseError", "parse_expr", "format_poly"]
