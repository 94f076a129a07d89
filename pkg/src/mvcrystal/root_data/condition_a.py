"""The chamber-chain condition (A) on reduced words of w0, chamber words of generic lines, and the
bounded witness scan for the vanishing lemma that condition (A) implies.

Coweights ``x`` are stored by their pairings ``x[j] = <x, alpha_j>``; the open Weyl chamber is
``{x : x[j] > 0 for all j}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import DegenerateLineError, InvalidInputError
from ..rational import Weight
from .fourier_motzkin import FourierMotzkin, integer_row
from .roots import RootTables, require_reduced, weyl_act_root


@dataclass(frozen=True)
class CondAResult:
    feasible: bool
    word: tuple[int, ...]
    witnesses: tuple[tuple[Fraction, ...], ...] | None
    slack: Fraction | None

    def __bool__(self):
        return self.feasible


def _prefix_roots(tables: RootTables, word: Sequence[int], k: int) -> list[tuple]:
    """w_k(alpha_j) in root coordinates for every j, where w_k = s_{i_1} ... s_{i_k}."""
    prefix = tuple(word[:k])
    n = tables.rank
    return [weyl_act_root(tables, prefix, tuple(1 if m == j else 0 for m in range(n))) for j in range(n)]


def condition_A_system(tables: RootTables, word: Sequence[int]):
    """Integer rows for: <x_k, w_k alpha_j> >= eps, (x_k - x_{k+1})[j] >= eps, eps <= 1."""
    n, ell = tables.rank, len(word)
    nvars = n * ell + 1
    eps = nvars - 1
    rows = []
    for k in range(1, ell + 1):
        base = (k - 1) * n
        for r in _prefix_roots(tables, word, k):
            coeffs = [0] * nvars
            for m, c in enumerate(r):
                coeffs[base + m] = c
            coeffs[eps] = -1
            rows.append(integer_row(coeffs))
        if k < ell:
            for j in range(n):
                coeffs = [0] * nvars
                coeffs[base + j] = 1
                coeffs[base + n + j] = -1
                coeffs[eps] = -1
                rows.append(integer_row(coeffs))
    top = [0] * nvars
    top[eps] = -1
    rows.append(integer_row(top, 1))
    return nvars, eps, rows


def verify_condition_A_witness(tables: RootTables, word: Sequence[int], xs: Sequence[Sequence]) -> bool:
    """Strict check that the x_k lie in the open cones required by condition (A)."""
    ell = len(word)
    if len(xs) != ell:
        return False
    for k in range(1, ell + 1):
        x = xs[k - 1]
        for r in _prefix_roots(tables, word, k):
            if tables.coweight_pair_root(x, r) <= 0:
                return False
        if k < ell and any(a - b <= 0 for a, b in zip(x, xs[k])):
            return False
    return True


def condition_A_check(tables: RootTables, word: Sequence[int]) -> CondAResult:
    """Decide condition (A) for a reduced word by maximizing a common slack with Fourier-Motzkin."""
    word = tuple(word)
    require_reduced(tables, word)
    if not word:
        return CondAResult(True, word, (), Fraction(1))
    nvars, eps, rows = condition_A_system(tables, word)
    res = FourierMotzkin(nvars, rows, eps).solve()
    if not res.feasible or res.optimum is None or res.optimum <= 0:
        return CondAResult(False, word, None, res.optimum)
    n = tables.rank
    pt = res.point
    xs = tuple(tuple(pt[k * n:(k + 1) * n]) for k in range(len(word)))
    if not verify_condition_A_witness(tables, word, xs):
        raise AssertionError("Fourier-Motzkin witness failed strict verification")
    return CondAResult(True, word, xs, res.optimum)


def chamber_word_from_line(tables: RootTables, x: Sequence, y: Sequence) -> tuple[int, ...]:
    """Word read off the chambers crossed by the segment from x to -y (both in the open chamber)."""
    x = tuple(Fraction(c) for c in x)
    y = tuple(Fraction(c) for c in y)
    n = tables.rank
    if len(x) != n or len(y) != n:
        raise InvalidInputError("coweight length does not match rank")
    if any(c <= 0 for c in x + y):
        raise InvalidInputError("x and y must lie in the open Weyl chamber")
    s = tuple(a + b for a, b in zip(x, y))
    events = []
    for b in tables.root_coords:
        t = tables.coweight_pair_root(x, b) / tables.coweight_pair_root(s, b)
        events.append((t, b))
    events.sort(key=lambda e: e[0])
    for (t1, _), (t2, _) in zip(events, events[1:]):
        if t1 == t2:
            raise DegenerateLineError(
                f"line meets two root hyperplanes at parameter {t1}; perturb x or y", parameter=t1
            )
    word: list[int] = []
    for _, beta in events:
        # wall crossed is w(alpha_i) = beta for the current chamber wC, w given by ``word``
        inv = tuple(reversed(word))
        img = weyl_act_root(tables, inv, beta)
        nz = [(j, c) for j, c in enumerate(img) if c != 0]
        if len(nz) != 1 or nz[0][1] != 1:
            raise AssertionError("crossed wall is not a simple wall of the current chamber")
        word.append(nz[0][0])
    return tuple(word)


def crossing_points(tables: RootTables, x: Sequence, y: Sequence) -> tuple[tuple[Fraction, ...], ...]:
    """Points of the segment x -> -y at the midpoint of each chamber visited after the first."""
    x = tuple(Fraction(c) for c in x)
    y = tuple(Fraction(c) for c in y)
    s = tuple(a + b for a, b in zip(x, y))
    ts = sorted(tables.coweight_pair_root(x, b) / tables.coweight_pair_root(s, b) for b in tables.root_coords)
    ts.append(Fraction(1))
    return tuple(tuple(a - t * c for a, c in zip(x, s)) for t in ((u + v) / 2 for u, v in zip(ts, ts[1:])))


def lemma_condA_witness_scan(tables: RootTables, word: Sequence[int], bound: int) -> list[tuple[Weight, ...]]:
    """All (nu_1..nu_l) with nu_k in w_k(Q_-) (root coefficients in [0, bound]), every proper partial sum in Q_+,
    and total sum 0.  Weights are returned in fundamental-weight coordinates, in sorted order."""
    word = tuple(word)
    require_reduced(tables, word)
    if bound < 0:
        raise InvalidInputError("bound must be nonnegative")
    n, ell = tables.rank, len(word)
    if ell == 0:
        return [()]
    cand: list[list[tuple]] = []
    for k in range(1, ell + 1):
        prefix = word[:k]
        opts = []
        for c in itertools.product(range(bound + 1), repeat=n):
            opts.append(weyl_act_root(tables, prefix, tuple(-v for v in c)))
        cand.append(opts)

    def add(a, b):
        return tuple(u + v for u, v in zip(a, b))

    def sub(a, b):
        return tuple(u - v for u, v in zip(a, b))

    zero = (0,) * n
    # back[k]: admissible values of mu_k = nu_1 + ... + nu_k
    back: list[set] = [set() for _ in range(ell + 1)]
    back[ell] = {zero}
    for k in range(ell, 0, -1):
        prev = set()
        for mu in back[k]:
            for nu in cand[k - 1]:
                m = sub(mu, nu)
                if k - 1 == 0:
                    if m == zero:
                        prev.add(m)
                elif all(c >= 0 for c in m):
                    prev.add(m)
        back[k - 1] = prev
    out = []

    def dfs(k, mu, acc):
        if k == ell:
            out.append(tuple(acc))
            return
        for nu in cand[k]:
            m = add(mu, nu)
            if m in back[k + 1]:
                acc.append(nu)
                dfs(k + 1, m, acc)
                acc.pop()

    if zero in back[0]:
        dfs(0, zero, [])
    res = [tuple(tables.root_to_weight(nu) for nu in tup) for tup in out]
    return sorted(set(res))
