"""Exact rational helpers shared by every module: parsing, rendering, weight vectors."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidInputError

Rational = int | Fraction


def q(value) -> Rational:
    """Coerce ``value`` to an exact rational; integral values come back as ``int``."""
    if isinstance(value, bool):
        raise InvalidInputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        try:
            value = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"not a rational: {value!r}") from exc
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, float):
        raise InvalidInputError("floating point input is not accepted; use 'p/q' strings")
    raise InvalidInputError(f"not a rational: {value!r}")


def render(value: Rational) -> str:
    """Canonical text form ``p/q`` (or ``n`` for integers)."""
    return str(Fraction(value))


def is_integer(value: Rational) -> bool:
    return isinstance(value, int) or value.denominator == 1


class Weight(tuple):
    """A vector in fundamental-weight coordinates, so that ``w[i]`` is the pairing with the i-th simple coroot.

    Arithmetic is vector arithmetic (``+`` is *not* tuple concatenation).
    """

    __slots__ = ()

    def __new__(cls, coords: Iterable = ()):
        return super().__new__(cls, (q(c) for c in coords))

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls((0,) * rank)

    @classmethod
    def basis(cls, rank: int, i: int) -> "Weight":
        return cls(1 if j == i else 0 for j in range(rank))

    def __add__(self, other):
        if len(self) != len(other):
            raise InvalidInputError("weight rank mismatch")
        return Weight(a + b for a, b in zip(self, other))

    def __radd__(self, other):
        if other == 0:
            return self
        return Weight(other) + self

    def __sub__(self, other):
        if len(self) != len(other):
            raise InvalidInputError("weight rank mismatch")
        return Weight(a - b for a, b in zip(self, other))

    def __neg__(self):
        return Weight(-a for a in self)

    def __mul__(self, scalar):
        if isinstance(scalar, (tuple, list)):
            return NotImplemented
        return Weight(a * scalar for a in self)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Weight(Fraction(a) / scalar for a in self)

    def is_integral(self) -> bool:
        return all(is_integer(c) for c in self)

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self)

    def __repr__(self):
        return "Weight(" + ", ".join(render(c) for c in self) + ")"

    def to_json(self) -> list:
        return [c if isinstance(c, int) else render(c) for c in self]

    def label(self) -> str:
        """``w1+2*w2`` style rendering."""
        terms = []
        for i, c in enumerate(self):
            if c == 0:
                continue
            name = f"w{i + 1}"
            if c == 1:
                terms.append(f"+{name}")
            elif c == -1:
                terms.append(f"-{name}")
            else:
                s = render(c)
                terms.append(f"{'' if s.startswith('-') else '+'}{s}*{name}")
        if not terms:
            return "0"
        out = "".join(terms)
        return out[1:] if out.startswith("+") else out


_TERM = re.compile(r"\s*([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?w(\d+)\s*")


def parse_weight(text, rank: int) -> Weight:
    """Parse ``w1+2*w2``, ``0``, or a JSON vector such as ``[1, "1/2"]``."""
    if isinstance(text, (list, tuple)):
        coords = [q(c) for c in text]
    else:
        text = str(text).strip()
        if text.startswith("["):
            try:
                coords = [q(c) for c in json.loads(text)]
            except json.JSONDecodeError as exc:
                raise InvalidInputError(f"bad weight vector {text!r}") from exc
        elif text in ("0", ""):
            coords = [0] * rank
        else:
            coords = [0] * rank
            pos = 0
            while pos < len(text):
                m = _TERM.match(text, pos)
                if not m or m.end() == pos:
                    raise InvalidInputError(f"cannot parse weight {text!r}")
                sign = -1 if m.group(1) == "-" else 1
                coef = q(m.group(2)) if m.group(2) else 1
                idx = int(m.group(3)) - 1
                if not 0 <= idx < rank:
                    raise InvalidInputError(f"fundamental weight index out of range in {text!r}")
                coords[idx] += sign * coef
                pos = m.end()
    if len(coords) != rank:
        raise InvalidInputError(f"weight {text!r} has length {len(coords)}, expected {rank}")
    return Weight(coords)


def solve_exact(matrix: Sequence[Sequence[Rational]], rhs: Sequence[Rational]) -> list[Fraction]:
    """Solve a square nonsingular rational system by Gauss-Jordan elimination."""
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise InvalidInputError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [row[n] for row in aug]
