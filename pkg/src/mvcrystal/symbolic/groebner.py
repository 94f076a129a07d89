"""Buchberger's algorithm, ideal membership, ideal quotients and the local generation test."""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from typing import Sequence

from ..errors import BudgetExceededError, InvalidInputError, VerificationError
from .polys import MPoly, PolyRing, divmod_poly, elimination_key, exact_divide, order_key, order_name

_DEFAULT_GB_STEPS = 200000
_memo: dict = {}
_memo_lock = threading.Lock()


def gb_step_budget() -> int:
    raw = os.environ.get("MVCRYSTAL_GB_STEPS")
    if raw is None:
        return _DEFAULT_GB_STEPS
    try:
        val = int(raw)
    except ValueError as exc:
        raise InvalidInputError(f"MVCRYSTAL_GB_STEPS must be an integer, got {raw!r}") from exc
    if val <= 0:
        raise InvalidInputError("MVCRYSTAL_GB_STEPS must be positive")
    return val


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def normal_form(f: MPoly, basis: Sequence[MPoly], order="degrevlex") -> MPoly:
    if not basis:
        return f
    return divmod_poly(f, basis, order)[1]


def _s_poly(f: MPoly, g: MPoly, key) -> MPoly:
    lf, lg = f.leading_monomial(key), g.leading_monomial(key)
    m = _lcm(lf, lg)
    a = f.mul_term(tuple(x - y for x, y in zip(m, lf)), 1 / f.terms[lf])
    b = g.mul_term(tuple(x - y for x, y in zip(m, lg)), 1 / g.terms[lg])
    return a - b


def _reduce_basis(basis: list[MPoly], key) -> list[MPoly]:
    basis = [g.monic(key) for g in basis if g]
    # minimal: drop elements whose leading monomial is divisible by another's
    basis.sort(key=lambda g: key(g.leading_monomial(key)))
    minimal: list[MPoly] = []
    for g in basis:
        lm = g.leading_monomial(key)
        if not any(_divides(h.leading_monomial(key), lm) for h in minimal):
            minimal.append(g)
    reduced = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        reduced.append(normal_form(g, others, key).monic(key))
    reduced.sort(key=lambda g: key(g.leading_monomial(key)))
    return reduced


def buchberger(gens: Sequence[MPoly], order="degrevlex", budget: int | None = None) -> list[MPoly]:
    """Reduced Groebner basis (monic, sorted by leading monomial).  Uses the coprime and chain criteria."""
    key = order_key(order)
    budget = gb_step_budget() if budget is None else budget
    basis = [g.monic(key) for g in gens if g]
    if not basis:
        return []
    pairs = {(i, j) for i in range(len(basis)) for j in range(i)}
    steps = 0
    while pairs:
        # normal strategy: smallest lcm first
        i, j = min(
            pairs, key=lambda p: (key(_lcm(basis[p[0]].leading_monomial(key), basis[p[1]].leading_monomial(key))), p)
        )
        pairs.discard((i, j))
        steps += 1
        if steps > budget:
            raise BudgetExceededError(f"Groebner basis exceeded {budget} pair reductions", budget=budget)
        li, lj = basis[i].leading_monomial(key), basis[j].leading_monomial(key)
        m = _lcm(li, lj)
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue  # coprime leading monomials
        chain = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if _divides(basis[k].leading_monomial(key), m):
                pik = (max(i, k), min(i, k))
                pjk = (max(j, k), min(j, k))
                if pik not in pairs and pjk not in pairs:
                    chain = True
                    break
        if chain:
            continue
        r = normal_form(_s_poly(basis[i], basis[j], key), basis, key)
        if r:
            basis.append(r.monic(key))
            n = len(basis) - 1
            pairs.update((n, k) for k in range(n))
    return _reduce_basis(basis, key)


def is_groebner(basis: Sequence[MPoly], order="degrevlex") -> bool:
    key = order_key(order)
    basis = list(basis)
    for i in range(len(basis)):
        for j in range(i):
            if normal_form(_s_poly(basis[i], basis[j], key), basis, key):
                return False
    return True


def groebner(gens: Sequence[MPoly], order="degrevlex", verify: bool = True) -> tuple[MPoly, ...]:
    """Memoized reduced Groebner basis; ``verify`` re-checks every S-polynomial on the result."""
    gens = [g for g in gens if g]
    if not gens:
        return ()
    ring = gens[0].ring
    memo_key = (ring.names, frozenset(gens), order_name(order))
    with _memo_lock:
        hit = _memo.get(memo_key)
    if hit is not None:
        return hit
    basis = tuple(buchberger(gens, order))
    if verify and not is_groebner(basis, order):
        raise VerificationError("Groebner basis failed the S-polynomial self-check")
    with _memo_lock:
        _memo[memo_key] = basis
    return basis


def clear_memo() -> None:
    with _memo_lock:
        _memo.clear()


class Ideal:
    """An ideal of a polynomial ring given by generators."""

    def __init__(self, ring: PolyRing, gens: Sequence):
        self.ring = ring
        self.gens = tuple(ring(g) for g in gens if ring(g))

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens))})"

    def groebner(self, order="degrevlex") -> tuple[MPoly, ...]:
        return groebner(self.gens, order)

    def normal_form(self, f, order="degrevlex") -> MPoly:
        return normal_form(self.ring(f), self.groebner(order), order)

    def contains(self, f) -> bool:
        return not self.normal_form(f)

    __contains__ = contains

    def is_subset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring is other.ring and self.groebner() == other.groebner()

    def __hash__(self):
        return hash((self.ring.names, self.groebner()))

    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def __add__(self, other) -> "Ideal":
        if isinstance(other, Ideal):
            return Ideal(self.ring, self.gens + other.gens)
        return Ideal(self.ring, self.gens + (self.ring(other),))

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [a * b for a in self.gens for b in other.gens])

    def __pow__(self, k: int) -> "Ideal":
        if k < 1:
            raise InvalidInputError("ideal powers start at 1")
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def quotient(self, f) -> "Ideal":
        return ideal_quotient(self, f)

    def intersect(self, other: "Ideal") -> "Ideal":
        return ideal_intersection(self, other)


def _fresh(ring: PolyRing, stem: str = "t") -> str:
    name = stem
    k = 0
    while name in ring.index:
        k += 1
        name = f"{stem}{k}"
    return name


def ideal_intersection(i1: Ideal, i2: Ideal) -> Ideal:
    """I cap J = (t I + (1 - t) J) cap k[x], computed with a block elimination order on t."""
    ring = i1.ring
    t = _fresh(ring)
    big = ring.extend([t], front=True)
    tv = big.var(t)
    gens = [tv * g.to_ring(big) for g in i1.gens] + [(1 - tv) * g.to_ring(big) for g in i2.gens]
    gb = groebner(gens, elimination_key(1))
    out = [g.to_ring(ring) for g in gb if g.degree(t) <= 0]
    return Ideal(ring, out)


def ideal_quotient(ideal: Ideal, f) -> Ideal:
    """(I : f) = (I cap (f)) / f."""
    f = ideal.ring(f)
    if not f:
        return Ideal(ideal.ring, [1])
    inter = ideal_intersection(ideal, Ideal(ideal.ring, [f]))
    return Ideal(ideal.ring, [exact_divide(g, f) for g in inter.gens])


@dataclass(frozen=True)
class GenerationWitness:
    generator: MPoly
    quotient: Ideal
    unit_multiplier: MPoly | None


@dataclass(frozen=True)
class LocalGenerationResult:
    generates: bool
    witnesses: tuple[GenerationWitness, ...]

    @property
    def verdict(self) -> str:
        return "generates" if self.generates else "does_not_generate"


def local_generation_test(p: Ideal, q: Ideal, f) -> LocalGenerationResult:
    """Does f generate the maximal ideal of the local ring (R/q)_p?

    By Nakayama this holds iff every generator g of p has some s outside p with
    s g in q + (f) + p^2, i.e. iff ((q + (f) + p^2) : g) is not contained in p.
    Requires q inside p and p prime.
    """
    f = p.ring(f)
    if not q.is_subset(p):
        raise InvalidInputError("q must be contained in p")
    if not p.contains(f):
        return LocalGenerationResult(False, ())
    base = q + Ideal(p.ring, [f]) + p ** 2
    witnesses = []
    ok = True
    for g in p.gens:
        quot = ideal_quotient(base, g)
        outside = next((h for h in quot.groebner() if not p.contains(h)), None)
        witnesses.append(GenerationWitness(g, quot, outside))
        if outside is None:
            ok = False
    return LocalGenerationResult(ok, tuple(witnesses))
