"""Independent character oracle: Freudenthal multiplicities, character products and their decomposition.

Used to cross-check crystal sizes and tensor decompositions without touching the crystal code.
"""

from __future__ import annotations

from collections import Counter, deque
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import InvalidInputError
from .rational import Weight
from .root_data import RootTables, dominance_leq, dominant_conjugate, inner_product, weyl_dimension


def dominant_weights_below(tables: RootTables, lam: Weight) -> list[Weight]:
    """Dominant weights mu <= lam, found by subtracting positive roots through dominant weights."""
    lam = Weight(lam)
    seen = {lam}
    queue = deque([lam])
    while queue:
        mu = queue.popleft()
        for beta in tables.positive_roots:
            nu = mu - beta
            if nu.is_dominant() and nu not in seen:
                seen.add(nu)
                queue.append(nu)
    height = lambda w: sum(tables.weight_to_root(lam - w))  # noqa: E731
    return sorted(seen, key=lambda w: (height(w), tuple(-c for c in w)))


def weyl_orbit(tables: RootTables, mu: Weight) -> set[Weight]:
    mu = Weight(mu)
    seen = {mu}
    queue = deque([mu])
    while queue:
        v = queue.popleft()
        for i in range(tables.rank):
            w = tables.reflect(i, v)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def _dominant_multiplicities(tables: RootTables, lam: Weight) -> dict[Weight, int]:
    rho = tables.rho
    doms = dominant_weights_below(tables, lam)
    mult: dict[Weight, int] = {lam: 1}
    top = inner_product(tables, lam + rho, lam + rho)
    roots = tables.positive_roots

    def m(nu: Weight) -> int:
        d = dominant_conjugate(tables, nu)
        return mult.get(d, 0)

    for mu in doms[1:]:
        total = Fraction(0)
        for beta in roots:
            k = 1
            while True:
                nu = mu + beta * k
                d = dominant_conjugate(tables, nu)
                if not dominance_leq(tables, d, lam):
                    break
                total += mult.get(d, 0) * inner_product(tables, nu, beta)
                k += 1
        denom = top - inner_product(tables, mu + rho, mu + rho)
        val = 2 * total / denom
        if val.denominator != 1:
            raise AssertionError("Freudenthal produced a non-integral multiplicity")
        if val:
            mult[mu] = int(val)
    return mult


def character(tables: RootTables, lam: Sequence) -> Counter:
    """Weight multiplicities of the irreducible module of highest weight lam."""
    lam = Weight(lam)
    if not (lam.is_integral() and lam.is_dominant()):
        raise InvalidInputError("character needs a dominant integral weight")
    return Counter(dict(_character_cached(tables, tuple(lam))))


@lru_cache(maxsize=512)
def _character_cached(tables: RootTables, lam: tuple) -> tuple:
    out = {}
    for mu, k in _dominant_multiplicities(tables, Weight(lam)).items():
        for nu in weyl_orbit(tables, mu):
            out[nu] = k
    return tuple(sorted(out.items()))


def character_product(a: Counter, b: Counter) -> Counter:
    out: Counter = Counter()
    for u, m in a.items():
        for v, n in b.items():
            out[u + v] += m * n
    return out


def decompose_character(tables: RootTables, ch: Counter) -> Counter:
    """Peel off irreducible characters, highest dominant weight first."""
    ch = Counter({k: v for k, v in ch.items() if v})
    out: Counter = Counter()
    while ch:
        doms = [w for w in ch if w.is_dominant()]
        if not doms:
            raise AssertionError("character has no dominant weight left")
        # a maximal dominant weight: largest pairing with 2*rho^vee
        top = max(doms, key=lambda w: (sum(tables.weight_to_root(w)), tuple(w)))
        k = ch[top]
        if k < 0:
            raise AssertionError("negative multiplicity while decomposing")
        out[top] += k
        for nu, m in character(tables, top).items():
            ch[nu] -= k * m
            if ch[nu] == 0:
                del ch[nu]
    return out


def tensor_multiplicities(tables: RootTables, *lams: Sequence) -> Counter:
    ch = Counter({Weight.zero(tables.rank): 1})
    for lam in lams:
        ch = character_product(ch, character(tables, lam))
    return decompose_character(tables, ch)


def dimension(tables: RootTables, lam: Sequence) -> int:
    return weyl_dimension(tables, lam)
