"""Exact Fourier-Motzkin elimination for small systems of linear inequalities.

A system is a list of integer rows ``(a_0, ..., a_{n-1}, b)`` read as ``a . v + b >= 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from ..errors import BudgetExceededError

DEFAULT_ROW_BUDGET = 200_000


def _normalize(row: tuple[int, ...]) -> tuple[int, ...]:
    g = 0
    for c in row:
        if c:
            g = gcd(g, c)
            if g == 1:
                return row
    if g in (0, 1):
        return row
    return tuple(c // g for c in row)


def integer_row(coeffs: Sequence, const=0) -> tuple[int, ...]:
    """Clear denominators of a rational row."""
    vals = [Fraction(c) for c in coeffs] + [Fraction(const)]
    den = 1
    for v in vals:
        den = den * v.denominator // gcd(den, v.denominator)
    return _normalize(tuple(int(v * den) for v in vals))


@dataclass
class _Stage:
    var: int
    rows: list[tuple[int, ...]]


@dataclass(frozen=True)
class FMResult:
    feasible: bool
    point: tuple[Fraction, ...] | None
    optimum: Fraction | None


class FourierMotzkin:
    """Maximize one designated variable subject to ``rows``, eliminating every other variable."""

    def __init__(self, nvars: int, rows: Sequence[Sequence[int]], objective: int, budget: int = DEFAULT_ROW_BUDGET):
        self.nvars = nvars
        self.objective = objective
        self.budget = budget
        self.rows = [_normalize(tuple(int(c) for c in r)) for r in rows]
        for r in self.rows:
            if len(r) != nvars + 1:
                raise ValueError("row length does not match variable count")

    def _pick(self, rows, remaining):
        best, best_cost = None, None
        for v in remaining:
            pos = sum(1 for r in rows if r[v] > 0)
            neg = sum(1 for r in rows if r[v] < 0)
            cost = pos * neg - pos - neg
            if best_cost is None or cost < best_cost:
                best, best_cost = v, cost
        return best

    def solve(self) -> FMResult:
        n = self.nvars
        rows = list(dict.fromkeys(self.rows))
        hist = {r: frozenset([k]) for k, r in enumerate(rows)}
        stages: list[_Stage] = []
        remaining = [v for v in range(n) if v != self.objective]
        eliminated = 0
        while remaining:
            v = self._pick(rows, remaining)
            remaining.remove(v)
            stages.append(_Stage(v, rows))
            eliminated += 1
            pos = [r for r in rows if r[v] > 0]
            neg = [r for r in rows if r[v] < 0]
            new_rows = [r for r in rows if r[v] == 0]
            new_hist = {r: hist[r] for r in new_rows}
            for p in pos:
                hp = hist[p]
                a = p[v]
                for q in neg:
                    h = hp | hist[q]
                    # Chernikov: a combination built from more than (eliminated + 1) originals is redundant
                    if len(h) > eliminated + 1:
                        continue
                    b = -q[v]
                    row = _normalize(tuple(b * x + a * y for x, y in zip(p, q)))
                    if all(c == 0 for c in row[:-1]):
                        if row[-1] < 0:
                            return FMResult(False, None, None)
                        continue
                    old = new_hist.get(row)
                    if old is None or len(h) < len(old):
                        if old is None:
                            new_rows.append(row)
                        new_hist[row] = h
            if len(new_rows) > self.budget:
                raise BudgetExceededError(f"Fourier-Motzkin row count exceeded {self.budget}")
            rows, hist = new_rows, new_hist
        # only the objective remains
        o = self.objective
        lo, hi = None, None
        for r in rows:
            c, d = r[o], r[-1]
            if c == 0:
                if d < 0:
                    return FMResult(False, None, None)
            elif c > 0:
                val = Fraction(-d, c)
                lo = val if lo is None or val > lo else lo
            else:
                val = Fraction(d, -c)
                hi = val if hi is None or val < hi else hi
        if hi is None or (lo is not None and lo > hi):
            return FMResult(False, None, hi)
        values: list = [None] * n
        values[o] = hi
        for stage in reversed(stages):
            values[stage.var] = self._back_substitute(stage, values)
        return FMResult(True, tuple(values), hi)

    @staticmethod
    def _back_substitute(stage: _Stage, values) -> Fraction:
        v = stage.var
        lo, hi = None, None
        for r in stage.rows:
            c = r[v]
            if c == 0:
                continue
            rest = Fraction(r[-1])
            for k, a in enumerate(r[:-1]):
                if a and k != v:
                    rest += a * values[k]
            bound = -rest / c
            if c > 0:
                lo = bound if lo is None or bound > lo else lo
            else:
                hi = bound if hi is None or bound < hi else hi
        if lo is None and hi is None:
            return Fraction(0)
        if lo is None:
            return hi - 1
        if hi is None:
            return lo + 1
        return (lo + hi) / 2
