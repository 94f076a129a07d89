"""Sparse multivariate polynomials over Q with a fixed variable order per ring."""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from ..errors import InvalidInputError

Monomial = tuple[int, ...]


# ----- monomial orders -----------------------------------------------------------------------------

def lex_key(m: Monomial):
    return m


def grlex_key(m: Monomial):
    return (sum(m), m)


def degrevlex_key(m: Monomial):
    return (sum(m), tuple(-x for x in reversed(m)))


def elimination_key(k: int) -> Callable[[Monomial], tuple]:
    """Block order: the first k variables are eliminated (degrevlex inside each block)."""

    def key(m: Monomial):
        return (degrevlex_key(m[:k]), degrevlex_key(m[k:]))

    key.__name__ = f"elim{k}"
    return key


_ORDERS = {"lex": lex_key, "grlex": grlex_key, "degrevlex": degrevlex_key}


def order_key(order) -> Callable[[Monomial], tuple]:
    if callable(order):
        return order
    try:
        return _ORDERS[order]
    except KeyError as exc:
        raise InvalidInputError(f"unknown monomial order {order!r}") from exc


def order_name(order) -> str:
    return order if isinstance(order, str) else getattr(order, "__name__", repr(order))


# ----- rings ---------------------------------------------------------------------------------------

class PolyRing:
    """Q[names]; rings with the same variable tuple compare equal."""

    _cache: dict = {}
    _lock = threading.Lock()

    def __new__(cls, names: Sequence[str]):
        names = tuple(names)
        with cls._lock:
            hit = cls._cache.get(names)
            if hit is None:
                if len(set(names)) != len(names):
                    raise InvalidInputError("duplicate variable names")
                hit = super().__new__(cls)
                hit.names = names
                hit.index = {n: k for k, n in enumerate(names)}
                hit.nvars = len(names)
                cls._cache[names] = hit
        return hit

    def __getnewargs__(self):
        return (self.names,)

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)})"

    @property
    def gens(self) -> tuple["MPoly", ...]:
        return tuple(self.var(n) for n in self.names)

    def var(self, name: str) -> "MPoly":
        k = self.index.get(name)
        if k is None:
            raise InvalidInputError(f"unknown variable {name!r} in {self!r}")
        return MPoly(self, {tuple(1 if j == k else 0 for j in range(self.nvars)): Fraction(1)})

    def const(self, c) -> "MPoly":
        c = Fraction(c)
        return MPoly(self, {(0,) * self.nvars: c} if c else {})

    def zero(self) -> "MPoly":
        return MPoly(self, {})

    def one(self) -> "MPoly":
        return self.const(1)

    def __call__(self, value) -> "MPoly":
        if isinstance(value, MPoly):
            return value.to_ring(self)
        if isinstance(value, str):
            from .parse import parse_poly

            return parse_poly(value, self)
        return self.const(value)

    def extend(self, names: Sequence[str], front: bool = False) -> "PolyRing":
        names = tuple(n for n in names if n not in self.index)
        return PolyRing(names + self.names if front else self.names + names)


# ----- polynomials ---------------------------------------------------------------------------------

class MPoly:
    """Immutable polynomial: ``terms`` maps exponent tuples to nonzero Fractions."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, Fraction] | None = None):
        self.ring = ring
        self.terms = {m: Fraction(c) for m, c in (terms or {}).items() if c}
        self._hash = None

    # construction helpers
    @classmethod
    def _wrap(cls, ring: PolyRing, terms: dict) -> "MPoly":
        obj = object.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._hash = None
        return obj

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.ring is not self.ring:
                raise InvalidInputError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return MPoly._wrap(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._wrap(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.ring.zero()
            return MPoly._wrap(self.ring, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return MPoly._wrap(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise InvalidInputError("polynomial powers must be nonnegative integers")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def mul_term(self, mono: Monomial, coeff) -> "MPoly":
        return MPoly._wrap(
            self.ring, {tuple(a + b for a, b in zip(m, mono)): c * coeff for m, c in self.terms.items()}
        )

    # comparison / hashing
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.ring is other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.names, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise InvalidInputError("polynomial is not constant")
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    # leading data
    def leading_monomial(self, order="degrevlex") -> Monomial:
        if not self.terms:
            raise InvalidInputError("zero polynomial has no leading term")
        return max(self.terms, key=order_key(order))

    def leading_coefficient(self, order="degrevlex") -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order="degrevlex") -> "MPoly":
        if not self.terms:
            return self
        return self * (1 / self.leading_coefficient(order))

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree(self, var: str) -> int:
        k = self.ring.index[var]
        return max((m[k] for m in self.terms), default=-1)

    def variables(self) -> tuple[str, ...]:
        used = set()
        for m in self.terms:
            used.update(k for k, e in enumerate(m) if e)
        return tuple(self.ring.names[k] for k in sorted(used))

    def content_integer(self) -> "MPoly":
        """Scale to a primitive integer polynomial with positive leading coefficient (degrevlex)."""
        from math import gcd

        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        nums = [int(c * den) for c in self.terms.values()]
        g = 0
        for v in nums:
            g = gcd(g, abs(v))
        scale = Fraction(den, g)
        if self.leading_coefficient() < 0:
            scale = -scale
        return self * scale

    # substitution / conversion
    def to_ring(self, ring: PolyRing) -> "MPoly":
        if ring is self.ring:
            return self
        idx = []
        for k, name in enumerate(self.ring.names):
            j = ring.index.get(name)
            if j is None:
                if any(m[k] for m in self.terms):
                    raise InvalidInputError(f"variable {name!r} missing from target ring")
            idx.append(j)
        out = {}
        for m, c in self.terms.items():
            nm = [0] * ring.nvars
            for k, e in enumerate(m):
                if e:
                    nm[idx[k]] = e
            out[tuple(nm)] = c
        return MPoly._wrap(ring, out)

    def evaluate(self, images: Mapping[str, object], one, zero=None):
        """Evaluate in any commutative ring: ``images`` maps every variable occurring in self."""
        zero = one * 0 if zero is None else zero
        total = zero
        cache: dict = {}
        for m, c in self.terms.items():
            term = one * c
            for k, e in enumerate(m):
                if e:
                    name = self.ring.names[k]
                    if name not in images:
                        raise InvalidInputError(f"no image for variable {name!r}")
                    key = (name, e)
                    if key not in cache:
                        base = images[name]
                        val = one
                        for _ in range(e):
                            val = val * base
                        cache[key] = val
                    term = term * cache[key]
            total = total + term
        return total

    def subs(self, mapping: Mapping[str, object]) -> "MPoly":
        """Substitute polynomials (or numbers) for some variables."""
        images = {n: self.ring.var(n) for n in self.ring.names}
        for k, v in mapping.items():
            images[k] = v if isinstance(v, MPoly) else self.ring.const(v)
        return self.evaluate(images, self.ring.one(), self.ring.zero())

    def coefficient_in(self, var: str) -> dict[int, "MPoly"]:
        """Group by the power of ``var``: {e: coefficient polynomial}."""
        k = self.ring.index[var]
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            nm = m[:k] + (0,) + m[k + 1:]
            out.setdefault(m[k], {})[nm] = c
        return {e: MPoly._wrap(self.ring, t) for e, t in out.items()}

    # rendering
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=degrevlex_key, reverse=True):
            c = self.terms[m]
            mono = "*".join(
                (self.ring.names[k] if e == 1 else f"{self.ring.names[k]}^{e}") for k, e in enumerate(m) if e
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"MPoly({self})"


def poly_sum(polys: Iterable[MPoly], ring: PolyRing) -> MPoly:
    total = ring.zero()
    for p in polys:
        total = total + p
    return total


def divmod_poly(f: MPoly, divisors: Sequence[MPoly], order="degrevlex") -> tuple[list[MPoly], MPoly]:
    """Multivariate division: f = sum q_k g_k + r with no term of r divisible by any LM(g_k)."""
    key = order_key(order)
    ring = f.ring
    leads = [(g.leading_monomial(key), g.leading_coefficient(key), g) for g in divisors]
    quots: list[dict] = [dict() for _ in divisors]
    rem: dict = {}
    p = dict(f.terms)
    while p:
        m = max(p, key=key)
        c = p[m]
        for k, (lm, lc, g) in enumerate(leads):
            if all(a >= b for a, b in zip(m, lm)):
                mono = tuple(a - b for a, b in zip(m, lm))
                coef = c / lc
                quots[k][mono] = quots[k].get(mono, 0) + coef
                for gm, gc in g.terms.items():
                    t = tuple(a + b for a, b in zip(gm, mono))
                    v = p.get(t, 0) - coef * gc
                    if v:
                        p[t] = v
                    else:
                        p.pop(t, None)
                break
        else:
            rem[m] = c
            del p[m]
    return [MPoly(ring, q) for q in quots], MPoly._wrap(ring, rem)


def exact_divide(f: MPoly, g: MPoly) -> MPoly:
    (q,), r = divmod_poly(f, [g])
    if r:
        raise InvalidInputError("polynomial division is not exact")
    return q
