"""
Text syntax for polynomials, rational functions and sections.

Grammar (whitespace-insensitive)::

    expr    := term (("+" | "-") term)*
    term    := factor (("*" | "/")? factor)*      # juxtaposition multiplies
    factor  := ("+" | "-") factor | power
    power   := atom (("^" | "**") "-"? INT)?
    atom    := INT | "i" | "t" | "(" expr ")"

Integers are read modulo 3. Identifiers are split into single letters, so
``it`` means ``i*t``. Sections are written ``(x ; y)`` or ``(x, y)``; ``O``
denotes the zero section.
"""

from __future__ import annotations

import re
from typing import List, Optional, Tuple

from ..errors import FieldError, ParseError
from .field import F9, I, Field
from .poly import Polynomial
from .rational import RationalFunction

_TOKEN = re.compile(r"\s*(?:(\d+)|(\*\*|[-+*/^()])|([A-Za-z]))")


class _Parser:
    def __init__(self, text: str, field: Field):
        self.text = text
        self.field = field
        self.tokens: List[Tuple[str, str, int]] = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            m = _TOKEN.match(stripped, pos)
            if m is None:
                raise ParseError(f"unexpected character {stripped[pos]!r} at column {pos + 1} in {text!r}")
            if m.group(1) is not None:
                self.tokens.append(("int", m.group(1), m.start(1)))
            elif m.group(2) is not None:
                self.tokens.append(("op", m.group(2), m.start(2)))
            else:
                self.tokens.append(("name", m.group(3), m.start(3)))
            pos = m.end()
        self.i = 0

    def peek(self) -> Optional[Tuple[str, str, int]]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self) -> Tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        tok = self.take()
        if tok[1] != value:
            raise ParseError(f"expected {value!r} at column {tok[2] + 1} in {self.text!r}, got {tok[1]!r}")

    def parse(self) -> RationalFunction:
        if not self.tokens:
            raise ParseError("empty expression")
        value = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"trailing input {tok[1]!r} at column {tok[2] + 1} in {self.text!r}")
        return value

    def expr(self) -> RationalFunction:
        value = self.term()
        while True:
            tok = self.peek()
            if tok is None or tok[1] not in ("+", "-"):
                return value
            self.take()
            rhs = self.term()
            value = value + rhs if tok[1] == "+" else value - rhs

    def term(self) -> RationalFunction:
        value = self.factor()
        while True:
            tok = self.peek()
            if tok is None:
                return value
            if tok[1] in ("*", "/"):
                self.take()
                rhs = self.factor()
                if tok[1] == "*":
                    value = value * rhs
                else:
                    if not rhs:
                        raise ParseError(f"division by zero at column {tok[2] + 1} in {self.text!r}")
                    value = value / rhs
            elif tok[0] in ("int", "name") or tok[1] == "(":
                value = value * self.power()
            else:
                return value

    def factor(self) -> RationalFunction:
        tok = self.peek()
        if tok is not None and tok[1] in ("+", "-"):
            self.take()
            inner = self.factor()
            return -inner if tok[1] == "-" else inner
        return self.power()

    def power(self) -> RationalFunction:
        base = self.atom()
        tok = self.peek()
        if tok is None or tok[1] not in ("^", "**"):
            return base
        self.take()
        sign = 1
        nxt = self.peek()
        if nxt is not None and nxt[1] == "-":
            self.take()
            sign = -1
        exp = self.take()
        if exp[0] != "int":
            raise ParseError(f"exponent must be an integer at column {exp[2] + 1} in {self.text!r}")
        n = sign * int(exp[1])
        if n < 0 and not base:
            raise ParseError(f"negative power of zero in {self.text!r}")
        return base ** n

    def atom(self) -> RationalFunction:
        tok = self.take()
        kind, value, col = tok
        if kind == "int":
            return RationalFunction(Polynomial.constant(int(value) % 3))
        if kind == "name":
            if value == "t":
                return RationalFunction(Polynomial((0, 1)))
            if value == "i":
                if self.field.name != "F9":
                    raise ParseError(f"'i' is not an element of {self.field} (column {col + 1})")
                return RationalFunction(Polynomial.constant(I))
            raise ParseError(f"unknown symbol {value!r} at column {col + 1} in {self.text!r}")
        if value == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {value!r} at column {col + 1} in {self.text!r}")


def parse_rational(text: str, field: Field = F9) -> RationalFunction:
    try:
        return _Parser(text, field).parse()
    except FieldError as exc:
        raise ParseError(f"{exc} in {text!r}") from None


def parse_polynomial(text: str, field: Field = F9) -> Polynomial:
    value = parse_rational(text, field)
    if not value.is_polynomial():
        raise ParseError(f"{text!r} is not a polynomial")
    return value.num


def split_section(text: str) -> Optional[Tuple[str, str]]:
    """Split ``(x ; y)`` into its coordinate texts; ``None`` for the zero section ``O``."""
    body = text.strip()
    if body in ("O", "0", "Zero", "zero"):
        return None
    if not (body.startswith("(") and body.endswith(")")):
        raise ParseError(f"section {text!r} must be written (x ; y)")
    body = body[1:-1]
    if ";" in body:
        parts = body.split(";")
    else:
        depth, cut = 0, -1
        for k, ch in enumerate(body):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                if cut >= 0:
                    raise ParseError(f"section {text!r} has more than two coordinates")
                cut = k
        if cut < 0:
            raise ParseError(f"section {text!r} must have two coordinates")
        parts = [body[:cut], body[cut + 1:]]
    if len(parts) != 2:
        raise ParseError(f"section {text!r} must have two coordinates")
    return parts[0].strip(), parts[1].strip()


def parse_section(text: str, field: Field = F9) -> Optional[Tuple[RationalFunction, RationalFunction]]:
    parts = split_section(text)
    if parts is None:
        return None
    return parse_rational(parts[0], field), parse_rational(parts[1], field)
