"""Rational functions over Q in reduced form, and dual numbers B[a]/(a^2)."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from sympy import QQ
from sympy.polys.rings import ring as sympy_ring

from ..errors import InvalidInputError
from .polys import MPoly, PolyRing


@lru_cache(maxsize=64)
def _sympy_ring(names: tuple[str, ...]):
    return sympy_ring(",".join(names), QQ)[0] if names else None


def _to_sympy(p: MPoly):
    R = _sympy_ring(p.ring.names)
    return R.from_dict({m: QQ(c.numerator, c.denominator) for m, c in p.terms.items()})


def _from_sympy(ring: PolyRing, element) -> MPoly:
    return MPoly(ring, {tuple(m): Fraction(int(c.numerator), int(c.denominator)) for m, c in element.items()})


def poly_gcd(f: MPoly, g: MPoly) -> MPoly:
    """Monic (degrevlex) gcd; f and g in the same ring."""
    if not f:
        return g.monic()
    if not g:
        return f.monic()
    if f.is_constant() or g.is_constant():
        return f.ring.one()
    if len(f.terms) == 1 and len(g.terms) == 1:
        (mf,), (mg,) = f.terms, g.terms
        return MPoly(f.ring, {tuple(min(a, b) for a, b in zip(mf, mg)): Fraction(1)})
    return _from_sympy(f.ring, _to_sympy(f).gcd(_to_sympy(g))).monic()


def _cofactors(f: MPoly, g: MPoly) -> tuple[MPoly, MPoly]:
    """(f/gcd, g/gcd) with the gcd normalized away."""
    if g.is_constant():
        c = g.constant_value()
        return f * (1 / c), f.ring.one()
    if len(g.terms) == 1 and f.terms:
        (mg,) = g.terms
        low = tuple(min(m[k] for m in f.terms) for k in range(f.ring.nvars))
        common = tuple(min(a, b) for a, b in zip(low, mg))
        if any(common):
            f = MPoly(f.ring, {tuple(a - b for a, b in zip(m, common)): c for m, c in f.terms.items()})
            g = MPoly(g.ring, {tuple(a - b for a, b in zip(mg, common)): g.terms[mg]})
        return f, g
    _, cf, cg = _to_sympy(f).cofactors(_to_sympy(g))
    return _from_sympy(f.ring, cf), _from_sympy(f.ring, cg)


class RatFunc:
    """num/den with gcd(num, den) = 1 and den monic in degrevlex; zero is 0/1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _reduced: bool = False):
        if not isinstance(num, MPoly):
            raise InvalidInputError("RatFunc numerator must be an MPoly")
        ring = num.ring
        den = ring.one() if den is None else (den if isinstance(den, MPoly) else ring.const(den))
        if den.ring is not ring:
            raise InvalidInputError("numerator and denominator live in different rings")
        if not den:
            raise ZeroDivisionError("RatFunc with zero denominator")
        if not num:
            self.num, self.den = num, ring.one()
            return
        if not _reduced:
            num, den = _cofactors(num, den)
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        self.num, self.den = num, den

    @property
    def ring(self) -> PolyRing:
        return self.num.ring

    @classmethod
    def lift(cls, value, ring: PolyRing) -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, MPoly):
            return cls(value, _reduced=True)
        if isinstance(value, str):
            return cls(ring(value), _reduced=True)
        return cls(ring.const(value), _reduced=True)

    def _co(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (MPoly, int, Fraction)):
            return RatFunc.lift(other, self.ring)
        return NotImplemented

    def __add__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        if not self.num or not o.num:
            return RatFunc(self.ring.zero())
        # cross-cancel first to keep intermediate sizes small
        a, d = _cofactors(self.num, o.den)
        c, b = _cofactors(o.num, self.den)
        return RatFunc(a * c, b * d, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num, _reduced=True)

    def __truediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, _reduced=True)

    def __eq__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def free_of(self, var: str) -> bool:
        return self.num.degree(var) <= 0 and self.den.degree(var) <= 0

    def subs(self, mapping) -> "RatFunc":
        """Substitute rational functions for variables (evaluated in the fraction field)."""
        images = {n: RatFunc.lift(self.ring.var(n), self.ring) for n in self.ring.names}
        for k, v in mapping.items():
            images[k] = RatFunc.lift(v, self.ring)
        one = RatFunc.lift(1, self.ring)
        zero = RatFunc.lift(0, self.ring)
        return self.num.evaluate(images, one, zero) / self.den.evaluate(images, one, zero)

    def __str__(self):
        if self.den == self.ring.one():
            return str(self.num)
        wrap = lambda s: f"({s})" if " " in s else s  # noqa: E731
        return f"{wrap(str(self.num))}/{wrap(str(self.den))}"

    def __repr__(self):
        return f"RatFunc({self})"


class DualNumber:
    """x0 + x1*a in K[a]/(a^2) for a commutative coefficient ring K (RatFunc here)."""

    __slots__ = ("x0", "x1")

    def __init__(self, x0, x1):
        self.x0, self.x1 = x0, x1

    def _co(self, other):
        if isinstance(other, DualNumber):
            return other
        return DualNumber(other, self.x0 * 0)

    def __add__(self, other):
        o = self._co(other)
        return DualNumber(self.x0 + o.x0, self.x1 + o.x1)

    __radd__ = __add__

    def __neg__(self):
        return DualNumber(-self.x0, -self.x1)

    def __sub__(self, other):
        return self + (-self._co(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return DualNumber(self.x0 * other, self.x1 * other)
        o = self._co(other)
        return DualNumber(self.x0 * o.x0, self.x0 * o.x1 + self.x1 * o.x0)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.x0 and not self.x1

    def __eq__(self, other):
        if not isinstance(other, DualNumber):
            return NotImplemented
        return self.x0 == other.x0 and self.x1 == other.x1

    __hash__ = None

    def __repr__(self):
        return f"DualNumber({self.x0}, {self.x1})"
