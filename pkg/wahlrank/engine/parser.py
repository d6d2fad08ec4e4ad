"""
Polynomial text in x and y: recursive-descent parser and canonical printer.

Grammar (whitespace is free between tokens):

    expr   = [sign] term { sign term } EOF
    term   = coeff [ ['*'] factor { ['*'] factor } ]
           | factor { ['*'] factor }
    coeff  = NUM [ '/' NUM ]
    factor = ( 'x' | 'y' ) [ '^' NUM ]
    sign   = '+' | '-'

Examples: "x^6 + y^6 + 1", "-3/2 x y^2", "2*x*y - y^3".
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict

from wahlrank.engine.polyring import BiPoly, Monomial
from wahlrank.engine.scalars import rat_text
from wahlrank.errors import ParseError


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def fail(self, expected: str) -> ParseError:
        return ParseError(self.text, self.pos, expected)

    def number(self, what: str) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.fail(what)
        return int(self.text[start : self.pos])

    def coeff(self) -> Fraction:
        num = self.number("integer")
        if self.peek() != "/":
            return Fraction(num)
        self.pos += 1
        self.skip_ws()
        den_pos = self.pos
        den = self.number("denominator")
        if den == 0:
            self.pos = den_pos
            raise self.fail("nonzero denominator")
        return Fraction(num, den)

    def factor(self) -> Monomial:
        ch = self.peek()
        if ch not in ("x", "y"):
            raise self.fail("'x' or 'y'")
        self.pos += 1
        power = 1
        if self.peek() == "^":
            self.pos += 1
            power = self.number("exponent")
        return (power, 0) if ch == "x" else (0, power)

    def term(self) -> tuple[Monomial, Fraction]:
        ch = self.peek()
        c = Fraction(1)
        if ch.isdigit():
            c = self.coeff()
            ch = self.peek()
            if ch == "*":
                self.pos += 1
            elif ch not in ("x", "y"):
                return (0, 0), c
        elif ch not in ("x", "y"):
            raise self.fail("term")
        a, b = self.factor()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
            elif ch not in ("x", "y"):
                break
            fa, fb = self.factor()
            a, b = a + fa, b + fb
        return (a, b), c

    def expr(self) -> BiPoly:
        terms: Dict[Monomial, Fraction] = {}
        sign = 1
        ch = self.peek()
        if ch in ("+", "-"):
            sign = -1 if ch == "-" else 1
            self.pos += 1
        while True:
            mono, c = self.term()
            terms[mono] = terms.get(mono, Fraction(0)) + sign * c
            ch = self.peek()
            if ch == "":
                break
            if ch not in ("+", "-"):
                raise self.fail("'+', '-' or end of input")
            sign = -1 if ch == "-" else 1
            self.pos += 1
        return BiPoly(terms)


def parse_poly(text: str) -> BiPoly:
    """
    Parse polynomial text into a BiPoly.

    Raises:
        ParseError: with the zero-based offset and the expected token
    """
    return _Parser(text).expr()


def _monomial_text(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append("x" if a == 1 else f"x^{a}")
    if b:
        parts.append("y" if b == 1 else f"y^{b}")
    return "*".join(parts)


def format_poly(p: BiPoly) -> str:
    """
    Canonical text of a polynomial, readable by parse_poly.

    Terms run by decreasing total degree, then decreasing power of x; unit
    coefficients are omitted. The zero polynomial prints as "0".
    """
    if p.is_zero():
        return "0"
    out = []
    for a, b in p.monomials():
        c = p.coefficient(a, b)
        mono = _monomial_text(a, b)
        mag = abs(c)
        if not mono:
            body = rat_text(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{rat_text(mag)}*{mono}"
        if not out:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f"{'-' if c < 0 else '+'} {body}")
    return " ".join(out)
