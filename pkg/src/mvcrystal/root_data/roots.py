"""Cartan data, positive roots and coroots, Weyl group words, dominance order."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from ..errors import InvalidInputError, NonFiniteTypeError, NonReducedWordError
from ..rational import Weight, solve_exact

DEFAULT_ROOT_BOUND = 5000


def _cartan_A(n):
    return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]


def _cartan_B(n):
    m = _cartan_A(n)
    m[n - 1][n - 2] = -2
    return m


def _cartan_C(n):
    m = _cartan_A(n)
    m[n - 2][n - 1] = -2
    return m


def _cartan_D(n):
    # nodes 1..n-2 form a chain; n-1 and n both attach to n-2 (so D4 has node 2 central)
    m = _cartan_A(n)
    m[n - 2][n - 1] = m[n - 1][n - 2] = 0
    m[n - 3][n - 1] = m[n - 1][n - 3] = -1
    return m


_NAMED = re.compile(r"^([ABCDG])(\d+)$")


@dataclass(frozen=True)
class CartanDatum:
    cartan: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = ()
    name: str = ""

    def __post_init__(self):
        n = len(self.cartan)
        if n == 0:
            raise InvalidInputError("empty Cartan matrix")
        if any(len(row) != n for row in self.cartan):
            raise InvalidInputError("Cartan matrix must be square")
        for i, row in enumerate(self.cartan):
            for j, a in enumerate(row):
                if not isinstance(a, int) or isinstance(a, bool):
                    raise InvalidInputError("Cartan entries must be integers")
                if i == j and a != 2:
                    raise InvalidInputError("Cartan diagonal entries must be 2")
                if i != j and a > 0:
                    raise InvalidInputError("off-diagonal Cartan entries must be <= 0")
                if i != j and (a == 0) != (self.cartan[j][i] == 0):
                    raise InvalidInputError("Cartan matrix must satisfy a_ij = 0 <=> a_ji = 0")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i + 1) for i in range(n)))
        elif len(self.labels) != n:
            raise InvalidInputError("one label per node required")

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]], labels: Iterable[str] = (), name: str = "") -> "CartanDatum":
        try:
            cartan = tuple(tuple(int(a) if float(a) == int(a) else a for a in row) for row in matrix)
        except (TypeError, ValueError) as exc:
            raise InvalidInputError("Cartan matrix must be a list of integer rows") from exc
        return cls(cartan, tuple(labels), name)

    @classmethod
    def named(cls, name: str) -> "CartanDatum":
        m = _NAMED.match(name.strip().upper())
        if not m:
            raise InvalidInputError(f"unknown Cartan type {name!r}")
        kind, n = m.group(1), int(m.group(2))
        if kind == "A" and n >= 1:
            mat = _cartan_A(n)
        elif kind == "B" and n >= 2:
            mat = _cartan_B(n)
        elif kind == "C" and n >= 2:
            mat = _cartan_C(n)
        elif kind == "D" and n >= 4:
            mat = _cartan_D(n)
        elif kind == "G" and n == 2:
            mat = [[2, -1], [-3, 2]]
        else:
            raise InvalidInputError(f"unknown Cartan type {name!r}")
        return cls.from_matrix(mat, name=f"{kind}{n}")

    @classmethod
    def parse(cls, spec) -> "CartanDatum":
        """Accept a type name (``"A2"``), a JSON matrix string, a path to a JSON file, or a nested list."""
        if isinstance(spec, CartanDatum):
            return spec
        if isinstance(spec, (list, tuple)):
            return cls.from_matrix(spec)
        text = str(spec).strip()
        if text.startswith("["):
            return cls.from_matrix(json.loads(text))
        if _NAMED.match(text.upper()):
            return cls.named(text)
        try:
            with open(text) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise InvalidInputError(f"unknown Cartan type or file {text!r}") from exc
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"{text}: invalid JSON") from exc
        if isinstance(data, dict):
            return cls.from_matrix(data["cartan"], data.get("labels", ()), data.get("name", ""))
        return cls.from_matrix(data)


def _is_nonneg(v):
    return all(c >= 0 for c in v)


@dataclass(frozen=True)
class RootTables:
    datum: CartanDatum
    root_coords: tuple[tuple[int, ...], ...]
    coroot_coords: tuple[tuple[int, ...], ...]
    _inv_cartan: tuple[tuple[Fraction, ...], ...] = field(repr=False, compare=False)

    @property
    def rank(self) -> int:
        return self.datum.rank

    @property
    def cartan(self):
        return self.datum.cartan

    @cached_property
    def positive_roots(self) -> tuple[Weight, ...]:
        """Positive roots in fundamental-weight coordinates."""
        return tuple(self.root_to_weight(b) for b in self.root_coords)

    @property
    def positive_coroots(self) -> tuple[tuple[int, ...], ...]:
        """Positive coroots as pairings against the fundamental weights (= simple-coroot coordinates)."""
        return self.coroot_coords

    @cached_property
    def simple_roots(self) -> tuple[Weight, ...]:
        a = self.cartan
        return tuple(Weight(a[i][j] for i in range(self.rank)) for j in range(self.rank))

    @cached_property
    def rho(self) -> Weight:
        return Weight((1,) * self.rank)

    @cached_property
    def reflections(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        """Matrix of s_i acting on fundamental-weight coordinates (column vectors)."""
        mats = []
        n = self.rank
        for i in range(n):
            alpha = self.simple_roots[i]
            mats.append(tuple(tuple((1 if r == c else 0) - (alpha[r] if c == i else 0) for c in range(n)) for r in range(n)))
        return tuple(mats)

    def alpha(self, i: int) -> Weight:
        return self.simple_roots[i]

    def root_to_weight(self, b: Sequence[int]) -> Weight:
        a = self.cartan
        return Weight(sum(a[i][j] * b[j] for j in range(self.rank)) for i in range(self.rank))

    def weight_to_root(self, mu: Sequence) -> tuple[Fraction, ...]:
        inv = self._inv_cartan
        return tuple(sum(inv[i][j] * mu[j] for j in range(self.rank)) for i in range(self.rank))

    def pair(self, coroot: Sequence[int], mu: Sequence) -> Fraction | int:
        return sum(c * m for c, m in zip(coroot, mu))

    def reflect(self, i: int, mu: Weight) -> Weight:
        c = mu[i]
        if c == 0:
            return Weight(mu)
        return Weight(mu) - self.simple_roots[i] * c

    def reflect_root_coords(self, i: int, b: Sequence) -> tuple:
        a = self.cartan[i]
        c = sum(a[j] * b[j] for j in range(self.rank))
        out = list(b)
        out[i] -= c
        return tuple(out)

    def reflect_coweight(self, i: int, x: Sequence) -> tuple:
        """s_i on a coweight given by its pairings with the simple roots."""
        a = self.cartan[i]
        xi = x[i]
        return tuple(x[j] - xi * a[j] for j in range(self.rank))

    def coweight_pair_root(self, x: Sequence, b: Sequence) -> Fraction | int:
        return sum(xj * bj for xj, bj in zip(x, b))

    @cached_property
    def longest_word(self) -> tuple[int, ...]:
        return element_word(self, -self.rho)

    @cached_property
    def coroot_index(self) -> dict:
        return {c: k for k, c in enumerate(self.coroot_coords)}

    def dual(self, lam: Weight) -> Weight:
        """lambda* = -w0(lambda)."""
        return -weyl_act(self, self.longest_word, lam)

    def is_simply_laced(self) -> bool:
        return all(a in (0, -1) for i, row in enumerate(self.cartan) for j, a in enumerate(row) if i != j)


def build_root_system(datum: CartanDatum | str, bound: int = DEFAULT_ROOT_BOUND) -> RootTables:
    """Close the simple roots (paired with their coroots) under simple reflections.

    Roots are ordered by height, then lexicographically with earlier simple roots first.
    """
    datum = CartanDatum.parse(datum)
    n = datum.rank
    a = datum.cartan
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    found = {s: s for s in simple}
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            cobeta = found[beta]
            for i in range(n):
                if beta == simple[i]:
                    continue
                k = sum(a[i][j] * beta[j] for j in range(n))
                if k == 0:
                    continue
                nb = list(beta)
                nb[i] -= k
                nb = tuple(nb)
                if not _is_nonneg(nb):
                    raise NonFiniteTypeError("reflection produced a mixed-sign root; matrix is not a valid Cartan matrix")
                if nb in found:
                    continue
                kc = sum(cobeta[j] * a[j][i] for j in range(n))
                nc = list(cobeta)
                nc[i] -= kc
                found[nb] = tuple(nc)
                nxt.append(nb)
                if len(found) > bound:
                    raise NonFiniteTypeError(
                        f"positive-root closure exceeded {bound} roots; Cartan matrix is not of finite type"
                    )
        frontier = nxt
    order = sorted(found, key=lambda b: (sum(b), tuple(-c for c in b)))
    try:
        inv = []
        for j in range(n):
            col = solve_exact(a, [1 if r == j else 0 for r in range(n)])
            inv.append(col)
    except InvalidInputError as exc:
        raise NonFiniteTypeError("singular Cartan matrix is not of finite type") from exc
    inv_rows = tuple(tuple(inv[j][i] for j in range(n)) for i in range(n))
    tables = RootTables(datum, tuple(order), tuple(found[b] for b in order), inv_rows)
    if 2 * len(order) + n > 4 * bound:
        raise NonFiniteTypeError("root system too large")
    return tables


def rho_eval(tables: RootTables, mu: Sequence, J: Iterable[int] | None = None) -> Fraction | int:
    """Half the sum of <beta^vee, mu> over positive coroots supported on J (all of them when J is None)."""
    J = set(range(tables.rank)) if J is None else set(J)
    total = 0
    for c in tables.coroot_coords:
        if all(cj == 0 or j in J for j, cj in enumerate(c)):
            total += tables.pair(c, mu)
    res = Fraction(total, 2)
    return res.numerator if res.denominator == 1 else res


def dominance_leq(tables: RootTables, mu: Sequence, lam: Sequence, J: Iterable[int] | None = None) -> bool:
    """True iff lam - mu is a nonnegative integer combination of the simple roots indexed by J."""
    J = set(range(tables.rank)) if J is None else set(J)
    diff = Weight(lam) - Weight(mu)
    coeffs = tables.weight_to_root(diff)
    for j, c in enumerate(coeffs):
        if Fraction(c).denominator != 1 or c < 0:
            return False
        if c != 0 and j not in J:
            return False
    return True


def _check_word(tables: RootTables, word: Sequence[int]):
    for i in word:
        if not isinstance(i, int) or not 0 <= i < tables.rank:
            raise InvalidInputError(f"simple index {i!r} out of range")


def weyl_act(tables: RootTables, word: Sequence[int], mu: Sequence) -> Weight:
    """(s_{i1} ... s_{ik})(mu); the rightmost reflection is applied first."""
    _check_word(tables, word)
    out = Weight(mu)
    for i in reversed(word):
        out = tables.reflect(i, out)
    return out


def weyl_act_root(tables: RootTables, word: Sequence[int], b: Sequence) -> tuple:
    out = tuple(b)
    for i in reversed(word):
        out = tables.reflect_root_coords(i, out)
    return out


def weyl_act_coweight(tables: RootTables, word: Sequence[int], x: Sequence) -> tuple:
    out = tuple(x)
    for i in reversed(word):
        out = tables.reflect_coweight(i, out)
    return out


def weyl_length(tables: RootTables, word: Sequence[int]) -> int:
    """Number of positive roots sent to negative roots."""
    _check_word(tables, word)
    count = 0
    for b in tables.root_coords:
        img = weyl_act_root(tables, word, b)
        if any(c < 0 for c in img):
            count += 1
    return count


def is_reduced(tables: RootTables, word: Sequence[int]) -> bool:
    return weyl_length(tables, word) == len(word)


def element_word(tables: RootTables, rho_image: Sequence) -> tuple[int, ...]:
    """Lex-least reduced word of the Weyl element w determined by w(rho) = rho_image."""
    v = Weight(rho_image)
    word = []
    while True:
        i = next((k for k, c in enumerate(v) if c < 0), None)
        if i is None:
            break
        word.append(i)
        v = tables.reflect(i, v)
    if v != tables.rho:
        raise InvalidInputError("vector is not in the Weyl orbit of rho")
    return tuple(word)


def normalize_word(tables: RootTables, word: Sequence[int]) -> tuple[int, ...]:
    """Canonical (lex-least reduced) word for the element represented by ``word``."""
    return element_word(tables, weyl_act(tables, word, tables.rho))


def require_reduced(tables: RootTables, word: Sequence[int]) -> None:
    if not is_reduced(tables, word):
        raise NonReducedWordError(f"word {tuple(i + 1 for i in word)} is not reduced")


def dominant_conjugate(tables: RootTables, mu: Sequence) -> Weight:
    v = Weight(mu)
    while True:
        i = next((k for k, c in enumerate(v) if c < 0), None)
        if i is None:
            return v
        v = tables.reflect(i, v)


def weyl_dimension(tables: RootTables, lam: Sequence) -> int:
    """Weyl dimension formula: prod over positive coroots of <b, lam + rho> / <b, rho>."""
    lam = Weight(lam)
    if not (lam.is_integral() and lam.is_dominant()):
        raise InvalidInputError("Weyl dimension needs a dominant integral weight")
    num = Fraction(1)
    shifted = lam + tables.rho
    for c in tables.coroot_coords:
        num *= Fraction(tables.pair(c, shifted), tables.pair(c, tables.rho))
    assert num.denominator == 1
    return int(num)


def symmetrizer(tables: RootTables) -> tuple[Fraction, ...]:
    """Positive d_i with d_i a_ij = d_j a_ji, normalized so the smallest is 1."""
    n = tables.rank
    a = tables.cartan
    d: list = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and a[i][j] != 0 and d[j] is None:
                    d[j] = d[i] * a[i][j] / a[j][i]
                    stack.append(j)
    m = min(d)
    return tuple(x / m for x in d)


def inner_product(tables: RootTables, mu: Sequence, nu: Sequence) -> Fraction:
    """W-invariant form with (alpha_i, alpha_j) = d_i a_ij."""
    d = symmetrizer(tables)
    x = tables.weight_to_root(mu)
    y = tables.weight_to_root(nu)
    a = tables.cartan
    n = tables.rank
    return sum(x[i] * d[i] * a[i][j] * y[j] for i in range(n) for j in range(n))


@dataclass(frozen=True, order=True)
class AffineCoroot:
    """The pair (beta^vee, p): ``direction`` indexes ``RootTables.positive_coroots``."""

    direction: int
    level: int

    def label(self, tables: RootTables) -> str:
        c = tables.coroot_coords[self.direction]
        terms = []
        for j, m in enumerate(c):
            if m:
                terms.append(("" if m == 1 else f"{m}*") + f"a{j + 1}v")
        return f"({'+'.join(terms)},{self.level})"
