"""Recursive-descent parser for polynomial text such as ``a1*a4 + a2*a3 - (x2 - x1)``."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Sequence

from ..errors import InvalidInputError
from .polys import MPoly, PolyRing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise InvalidInputError(f"unexpected character {text[pos:].strip()[:1]!r} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    # expr   := ['+'|'-'] term (('+'|'-') term)*
    # term   := power (['*'|'/'] power)*      ('/' only by a constant)
    # power  := atom ('^' integer)?
    # atom   := integer | name | '(' expr ')' | '-' atom
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def fail(self, msg: str):
        raise InvalidInputError(f"{msg} in polynomial {self.text!r}")

    def parse(self) -> MPoly:
        if not self.tokens:
            self.fail("empty input")
        val = self.expr()
        if self.pos != len(self.tokens):
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return val

    def expr(self) -> MPoly:
        sign = 1
        if self.peek() in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        val = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> MPoly:
        val = self.power()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.power()
            if op == "*":
                val = val * rhs
            else:
                if not rhs.is_constant() or not rhs:
                    self.fail("division is only allowed by a nonzero constant")
                val = val * (Fraction(1) / rhs.constant_value())
        return val

    def power(self) -> MPoly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, tok = self.take()
            if kind != "num":
                self.fail("exponent must be a nonnegative integer")
            base = base ** int(tok)
        return base

    def atom(self) -> MPoly:
        kind, tok = self.take()
        if kind == "num":
            return self.ring.const(int(tok))
        if kind == "name":
            if tok not in self.ring.index:
                self.fail(f"unknown variable {tok!r}")
            return self.ring.var(tok)
        if (kind, tok) == ("op", "("):
            val = self.expr()
            if self.take() != ("op", ")"):
                self.fail("missing ')'")
            return val
        if (kind, tok) == ("op", "-"):
            return -self.atom()
        self.fail("unexpected end of input" if kind is None else f"unexpected token {tok!r}")


def parse_poly(text: str, ring: PolyRing) -> MPoly:
    if not isinstance(text, str):
        raise InvalidInputError("polynomial text must be a string")
    return _Parser(text, ring).parse()


def parse_ideal(data, ring: PolyRing):
    """Ideal from a JSON list of polynomial strings (or the JSON text of one)."""
    from .groebner import Ideal

    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"ideal is not valid JSON: {exc}") from exc
    if not isinstance(data, list):
        raise InvalidInputError("an ideal is a JSON list of polynomial strings")
    return Ideal(ring, [parse_poly(s, ring) for s in data])


def parse_polys(texts: Sequence[str], ring: PolyRing) -> list[MPoly]:
    return [parse_poly(t, ring) for t in texts]
