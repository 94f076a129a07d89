"""Piecewise-linear paths with exact rational data and the root operators on them.

A path is stored as a list of displacement steps with positive durations summing to 1.  Two paths
are equal when their canonical step sequences agree, which is equality modulo piecewise-linear
reparameterization.
"""

from __future__ import annotations

import enum
import os
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import BudgetExceededError, InvalidInputError, NonIntegralPathError
from .rational import Weight, is_integer, q, render
from .root_data import RootTables

DEFAULT_ORBIT_BUDGET = 200_000


def orbit_budget() -> int:
    """Orbit-size cap; overridable through ``MVCRYSTAL_ORBIT_BUDGET``."""
    raw = os.environ.get("MVCRYSTAL_ORBIT_BUDGET")
    if raw is None:
        return DEFAULT_ORBIT_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise InvalidInputError("MVCRYSTAL_ORBIT_BUDGET must be an integer") from exc
    if value <= 0:
        raise InvalidInputError("MVCRYSTAL_ORBIT_BUDGET must be positive")
    return value


def _proportional(u: Weight, v: Weight) -> bool:
    """True iff v = c*u with c > 0 (both nonzero)."""
    c = None
    for a, b in zip(u, v):
        if a == 0 and b == 0:
            continue
        if a == 0 or b == 0:
            return False
        r = Fraction(b) / a
        if r <= 0:
            return False
        if c is None:
            c = r
        elif r != c:
            return False
    return True


def _canonical(steps: Sequence[Weight], durations: Sequence) -> tuple[tuple[Weight, ...], tuple]:
    out_s: list[Weight] = []
    out_d: list = []
    for s, d in zip(steps, durations):
        if s.is_zero():
            continue
        if out_s and _proportional(out_s[-1], s):
            out_s[-1] = out_s[-1] + s
            out_d[-1] = out_d[-1] + d
        else:
            out_s.append(s)
            out_d.append(d)
    total = sum(out_d, Fraction(0))
    if out_d and total != 1:
        out_d = [q(Fraction(d) / total) for d in out_d]
    return tuple(out_s), tuple(q(d) for d in out_d)


class Path:
    """A piecewise-linear path from 0 to an integral weight, in canonical form."""

    __slots__ = ("steps", "durations", "rank", "__dict__")

    def __init__(self, steps: Iterable[Sequence], durations: Iterable | None = None, rank: int | None = None):
        steps = [Weight(s) for s in steps]
        if durations is None:
            durations = [Fraction(1, len(steps))] * len(steps) if steps else []
        else:
            durations = [q(d) for d in durations]
        if len(durations) != len(steps):
            raise InvalidInputError("one duration per step required")
        if any(d <= 0 for d in durations):
            raise InvalidInputError("durations must be positive")
        if steps:
            rank = len(steps[0]) if rank is None else rank
            if any(len(s) != rank for s in steps):
                raise InvalidInputError("all steps must have the same rank")
        elif rank is None:
            raise InvalidInputError("rank required for the constant path")
        self.rank = rank
        self.steps, self.durations = _canonical(steps, durations)
        if not self.weight.is_integral():
            raise InvalidInputError(f"path endpoint {self.weight!r} is not an integral weight")

    @classmethod
    def _raw(cls, steps: tuple[Weight, ...], durations: tuple, rank: int) -> "Path":
        obj = object.__new__(cls)
        obj.rank = rank
        obj.steps, obj.durations = _canonical(steps, durations)
        return obj

    @classmethod
    def from_segments(cls, segments: Iterable[tuple[Sequence, object]], rank: int | None = None) -> "Path":
        """Build from (direction, duration) pairs; the displacement is direction * duration."""
        steps, durs = [], []
        for direction, dur in segments:
            dur = q(dur)
            steps.append(Weight(direction) * dur)
            durs.append(dur)
        return cls(steps, durs, rank)

    @property
    def segments(self) -> tuple[tuple[Weight, object], ...]:
        return tuple((s / d, d) for s, d in zip(self.steps, self.durations))

    @cached_property
    def weight(self) -> Weight:
        total = Weight.zero(self.rank)
        for s in self.steps:
            total = total + s
        return total

    @cached_property
    def vertices(self) -> tuple[Weight, ...]:
        out = [Weight.zero(self.rank)]
        for s in self.steps:
            out.append(out[-1] + s)
        return tuple(out)

    @cached_property
    def times(self) -> tuple:
        out = [0]
        for d in self.durations:
            out.append(q(out[-1] + d))
        return tuple(out)

    def heights(self, i: int) -> list:
        return [v[i] for v in self.vertices]

    def at(self, t) -> Weight:
        t = Fraction(t)
        if not 0 <= t <= 1:
            raise InvalidInputError("time outside [0, 1]")
        ts = self.times
        for k, s in enumerate(self.steps):
            if t <= ts[k + 1]:
                return self.vertices[k] + s * ((t - ts[k]) / self.durations[k])
        return self.weight

    def is_dominant(self) -> bool:
        """Image contained in the dominant cone."""
        return all(v.is_dominant() for v in self.vertices)

    def __eq__(self, other):
        return isinstance(other, Path) and self.rank == other.rank and self.steps == other.steps

    def __hash__(self):
        return hash((self.rank, self.steps))

    def sort_key(self):
        return tuple(tuple(Fraction(c) for c in s) for s in self.steps)

    def __repr__(self):
        inner = ", ".join(f"({s.label()}, {render(d)})" for s, d in zip(self.steps, self.durations))
        return f"Path[{inner}]"

    def to_json(self) -> list:
        return [{"direction": [render(c) for c in d], "duration": render(t)} for d, t in self.segments]

    @classmethod
    def from_json(cls, data, rank: int | None = None) -> "Path":
        if not isinstance(data, list):
            raise InvalidInputError("path JSON must be a list of segments")
        segs = []
        for seg in data:
            if not isinstance(seg, dict) or set(seg) != {"direction", "duration"}:
                raise InvalidInputError("each segment needs exactly 'direction' and 'duration'")
            segs.append((seg["direction"], seg["duration"]))
        return cls.from_segments(segs, rank)


def straight_path(lam: Sequence, rank: int | None = None) -> Path:
    lam = Weight(lam)
    if not lam.is_integral():
        raise InvalidInputError("straight path needs an integral weight")
    return Path([lam], [1], rank=len(lam) if rank is None else rank)


def constant_path(rank: int) -> Path:
    return Path([], [], rank=rank)


def concatenate(*paths: Path) -> Path:
    """pi * eta: run each path in turn at proportionally scaled speed."""
    if not paths:
        raise InvalidInputError("nothing to concatenate")
    rank = paths[0].rank
    if any(p.rank != rank for p in paths):
        raise InvalidInputError("rank mismatch in concatenation")
    n = len(paths)
    steps, durs = [], []
    for p in paths:
        steps.extend(p.steps)
        durs.extend(Fraction(d, n) for d in p.durations)
    return Path._raw(tuple(steps), tuple(durs), rank)


@dataclass(frozen=True)
class StringStats:
    min_value: object
    endpoint_pairing: object
    epsilon: object
    phi: object
    first_min_time: object
    last_min_time: object


def path_stats(p: Path, i: int) -> StringStats:
    h = p.heights(i)
    m = min(h)
    first = h.index(m)
    last = len(h) - 1 - h[::-1].index(m)
    qv = h[-1]
    return StringStats(m, qv, q(-m), q(qv - m), p.times[first], p.times[last])


def epsilon(p: Path, i: int):
    return -min(p.heights(i))


def phi(p: Path, i: int):
    h = p.heights(i)
    return h[-1] - min(h)


def _split(steps: list, durs: list, k: int, s: Fraction):
    """Split segment k at fraction s in (0, 1) of its length."""
    st, d = steps[k], durs[k]
    steps[k:k + 1] = [st * s, st * (1 - s)]
    durs[k:k + 1] = [d * s, d * (1 - s)]


def _reflect(step: Weight, alpha: Weight, i: int) -> Weight:
    c = step[i]
    return step if c == 0 else step - alpha * c


def _require_integral_min(p: Path, i: int, m) -> None:
    if not is_integer(m):
        raise NonIntegralPathError(f"minimum {render(m)} of coordinate {i + 1} is not an integer", color=i + 1)


def e_op(p: Path, i: int, tables: RootTables) -> Path | None:
    """Raising operator: reflect between the last visit to p+1 and the (extended) first visit to p."""
    h = p.heights(i)
    m = min(h)
    _require_integral_min(p, i, m)
    if m >= 0:
        return None
    k1 = h.index(m)
    j = max(k for k in range(k1) if h[k] >= m + 1)
    if any(h[k] < m + 1 for k in range(j)):
        raise NonIntegralPathError("non-integral local minimum before the cut", color=i + 1)
    if any(h[k] < h[k + 1] for k in range(j + 1, k1)):
        raise NonIntegralPathError("pairing not weakly decreasing on the cut", color=i + 1)
    steps, durs = list(p.steps), list(p.durations)
    start = j
    if h[j] > m + 1:
        s = Fraction(h[j] - (m + 1)) / (h[j] - h[j + 1])
        _split(steps, durs, j, s)
        start = j + 1
        k1 += 1
    k2 = k1
    while k2 < len(steps) and steps[k2][i] == 0:
        k2 += 1
    alpha = tables.alpha(i)
    for k in range(start, k2):
        steps[k] = _reflect(steps[k], alpha, i)
    return Path._raw(tuple(steps), tuple(durs), p.rank)


def f_op(p: Path, i: int, tables: RootTables) -> Path | None:
    """Lowering operator: the mirrored cut, from the start of the last flat at p to the next visit to p+1."""
    h = p.heights(i)
    m = min(h)
    _require_integral_min(p, i, m)
    if h[-1] - m < 1:
        return None
    k0 = len(h) - 1 - h[::-1].index(m)
    ka = k0
    while ka > 0 and h[ka - 1] == m:
        ka -= 1
    j = next(k for k in range(k0 + 1, len(h)) if h[k] >= m + 1)
    if any(h[k] > h[k + 1] for k in range(k0, j - 1)):
        raise NonIntegralPathError("pairing not weakly increasing on the cut", color=i + 1)
    if any(h[k] < m + 1 for k in range(j, len(h))):
        raise NonIntegralPathError("non-integral local minimum after the cut", color=i + 1)
    steps, durs = list(p.steps), list(p.durations)
    end = j
    if h[j] > m + 1:
        s = Fraction(m + 1 - h[j - 1]) / (h[j] - h[j - 1])
        _split(steps, durs, j - 1, s)
    alpha = tables.alpha(i)
    for k in range(ka, end):
        steps[k] = _reflect(steps[k], alpha, i)
    return Path._raw(tuple(steps), tuple(durs), p.rank)


def local_absolute_minima(values: Sequence) -> list:
    """Values of the local absolute minima of the piecewise-linear function through ``values``."""
    runs = []
    for v in values:
        if not runs or runs[-1] != v:
            runs.append(v)
    out = []
    for k, v in enumerate(runs):
        left = k == 0 or runs[k - 1] > v
        right = k == len(runs) - 1 or runs[k + 1] > v
        if left and right:
            out.append(v)
    return out


def locally_integral(p: Path) -> bool:
    """All local absolute minima of every simple-coroot pairing are integers (this path only)."""
    return all(is_integer(v) for i in range(p.rank) for v in local_absolute_minima(p.heights(i)))


def _line_meets_lattice(point: Weight, direction: Weight) -> bool:
    """Does the affine line point + R*direction contain a lattice point?  (Then it contains infinitely many.)"""
    den = 1
    for c in direction:
        den = den * Fraction(c).denominator // _gcd(den, Fraction(c).denominator)
    d = [int(Fraction(c) * den) for c in direction]
    g = 0
    for c in d:
        g = _gcd(g, abs(c))
    d = [c // g for c in d]
    for k, c in enumerate(d):
        if c == 0 and not is_integer(point[k]):
            return False
    k0 = next(k for k, c in enumerate(d) if c != 0)
    for m in range(abs(d[k0])):
        v = (m - Fraction(point[k0])) / d[k0]
        if all(is_integer(Fraction(point[k]) + v * d[k]) for k in range(len(d))):
            return True
    return False


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def satisfies_condition_star(p: Path) -> bool:
    """Every segment's affine line meets at least two lattice points."""
    return all(_line_meets_lattice(v, s) for v, s in zip(p.vertices, p.steps))


class Integrality(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclass(frozen=True)
class IntegralityReport:
    verdict: Integrality
    reason: str
    explored: int = 0

    def __bool__(self):
        return self.verdict is Integrality.TRUE


def is_integral(p: Path, tables: RootTables, budget: int | None = None) -> IntegralityReport:
    """Semi-decide integrality: exact sufficient conditions first, then a bounded orbit search."""
    if all(s.is_dominant() for s in p.steps):
        reason = "condition_star" if satisfies_condition_star(p) else "dominant_monotone"
        return IntegralityReport(Integrality.TRUE, reason)
    budget = orbit_budget() if budget is None else budget
    seen = {p}
    queue = deque([p])
    while queue:
        cur = queue.popleft()
        if not locally_integral(cur):
            return IntegralityReport(Integrality.FALSE, "non_integral_minimum", len(seen))
        for i in range(tables.rank):
            for op in (e_op, f_op):
                try:
                    nxt = op(cur, i, tables)
                except NonIntegralPathError:
                    return IntegralityReport(Integrality.FALSE, "non_integral_minimum", len(seen))
                if nxt is not None and nxt not in seen:
                    if len(seen) >= budget:
                        return IntegralityReport(Integrality.BUDGET_EXCEEDED, "budget", len(seen))
                    seen.add(nxt)
                    queue.append(nxt)
    return IntegralityReport(Integrality.TRUE, "orbit_search", len(seen))


@dataclass(frozen=True)
class PathOrbit:
    """The operator orbit of a path: members in BFS order plus the f-edges per color."""

    paths: tuple[Path, ...]
    f_edges: tuple[dict, ...]

    @cached_property
    def index(self) -> dict:
        return {p: k for k, p in enumerate(self.paths)}

    @cached_property
    def dominant(self) -> Path:
        doms = [p for p in self.paths if p.is_dominant()]
        if len(doms) != 1:
            raise NonIntegralPathError(f"orbit contains {len(doms)} dominant paths")
        return doms[0]


def path_orbit(p: Path, tables: RootTables, budget: int | None = None) -> PathOrbit:
    budget = orbit_budget() if budget is None else budget
    index = {p: 0}
    order = [p]
    f_edges: list[dict] = [dict() for _ in range(tables.rank)]
    queue = deque([p])
    while queue:
        cur = queue.popleft()
        src = index[cur]
        for i in range(tables.rank):
            for op in (e_op, f_op):
                nxt = op(cur, i, tables)
                if nxt is None:
                    continue
                if nxt not in index:
                    if len(order) >= budget:
                        raise BudgetExceededError(f"orbit exceeded {budget} paths")
                    index[nxt] = len(order)
                    order.append(nxt)
                    queue.append(nxt)
                dst = index[nxt]
                if op is f_op:
                    f_edges[i][src] = dst
                else:
                    f_edges[i][dst] = src
    return PathOrbit(tuple(order), tuple(f_edges))


def crystal_closure(p: Path, tables: RootTables, budget: int | None = None) -> frozenset:
    return frozenset(path_orbit(p, tables, budget).paths)
