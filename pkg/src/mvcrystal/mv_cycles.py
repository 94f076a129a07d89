"""MV-cycle labels built from tuples of integral paths.

A label records the paths, per-factor weights nu_j and dominant weights lambda_j, both dimension
conventions (starred rho(|lambda| + mu) and unstarred rho(|lambda| - mu)), the affine-coroot crossing
data of every path and the symbolic generator word read from it.  Cycles are never materialized as
point sets.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidInputError, MismatchError, NonIntegralPathError
from .path_model import Integrality, Path, concatenate, e_op, f_op, is_integral, path_stats
from .rational import Weight, render
from .root_data import AffineCoroot, RootTables, dominance_leq, rho_eval

STARRED = "starred"
UNSTARRED = "unstarred"


@dataclass(frozen=True)
class CrossingDatum:
    time: object
    coroots: tuple[AffineCoroot, ...]


def _coroot_order(tables: RootTables):
    """Within one crossing time: higher coroots first, then enumeration order."""
    return lambda ac: (-sum(tables.coroot_coords[ac.direction]), ac.direction, ac.level)


def crossings(p: Path, tables: RootTables) -> list[CrossingDatum]:
    """Times t in [0,1) at which the path leaves some half-space <beta^vee, x> <= n, with those (beta^vee, n)."""
    events: dict = defaultdict(list)
    for k, step in enumerate(p.steps):
        start = p.vertices[k]
        t0, dur = p.times[k], p.durations[k]
        for m, c in enumerate(tables.coroot_coords):
            g0 = tables.pair(c, start)
            dg = tables.pair(c, step)
            if dg <= 0:
                continue
            g1 = g0 + dg
            n = -((-Fraction(g0)).__floor__())  # ceil(g0)
            while n < g1:
                t = t0 + (n - Fraction(g0)) / dg * dur
                events[Fraction(t)].append(AffineCoroot(m, int(n)))
                n += 1
    key = _coroot_order(tables)
    out = []
    for t in sorted(events):
        tt = t.numerator if t.denominator == 1 else t
        out.append(CrossingDatum(tt, tuple(sorted(set(events[t]), key=key))))
    return out


@dataclass(frozen=True)
class Token:
    kind: str  # "x" or "z"
    coroot: AffineCoroot | None = None
    slot: int = 0
    weight: Weight | None = None

    def render(self, tables: RootTables) -> str:
        if self.kind == "x":
            return f"x[{self.coroot.label(tables)}](c{self.slot})"
        return f"z^{{{self.weight.label()}}}"

    def to_json(self, tables: RootTables) -> dict:
        if self.kind == "x":
            return {
                "kind": "x",
                "coroot": list(tables.coroot_coords[self.coroot.direction]),
                "level": self.coroot.level,
                "slot": self.slot,
            }
        return {"kind": "z", "weight": self.weight.to_json()}


@dataclass(frozen=True)
class MVCycleLabel:
    tables: RootTables = field(repr=False, compare=False)
    paths: tuple[Path, ...]
    nus: tuple[Weight, ...]
    lambdas: tuple[Weight, ...]
    mu: Weight
    lam_total: Weight
    dim_starred: object
    dim_unstarred: object
    crossings: tuple[tuple[CrossingDatum, ...], ...]
    generator_word: tuple[Token, ...]

    @property
    def parameter_count(self) -> int:
        return sum(1 for t in self.generator_word if t.kind == "x")

    def word_text(self) -> str:
        return " ".join(t.render(self.tables) for t in self.generator_word)

    def to_json(self) -> dict:
        return {
            "paths": [p.to_json() for p in self.paths],
            "nu": [n.to_json() for n in self.nus],
            "lambda": [lam.to_json() for lam in self.lambdas],
            "mu": self.mu.to_json(),
            "lambda_total": self.lam_total.to_json(),
            "dim_starred": render(self.dim_starred),
            "dim_unstarred": render(self.dim_unstarred),
            "parameter_count": self.parameter_count,
            "crossings": [
                [{"time": render(c.time), "coroots": [ac.label(self.tables) for ac in c.coroots]} for c in cs]
                for cs in self.crossings
            ],
            "generator_word": self.word_text(),
            "generator_tokens": [t.to_json(self.tables) for t in self.generator_word],
        }


def highest_path(p: Path, tables: RootTables) -> Path:
    """Raise with any applicable e_i until none applies; this is the dominant path of the orbit."""
    cur = p
    while True:
        for i in range(tables.rank):
            nxt = e_op(cur, i, tables)
            if nxt is not None:
                cur = nxt
                break
        else:
            if not cur.is_dominant():
                raise NonIntegralPathError("orbit source is not dominant")
            return cur


def cycle_label(paths: Sequence[Path], tables: RootTables, check_integral: bool = True) -> MVCycleLabel:
    paths = tuple(paths)
    if not paths:
        raise InvalidInputError("a label needs at least one path")
    for p in paths:
        if p.rank != tables.rank:
            raise MismatchError("path rank does not match the root datum")
        if check_integral:
            rep = is_integral(p, tables)
            if rep.verdict is Integrality.FALSE:
                raise NonIntegralPathError(f"path {p!r} is not integral")
    nus = tuple(p.weight for p in paths)
    lambdas = tuple(highest_path(p, tables).weight for p in paths)
    mu = sum(nus[1:], nus[0])
    lam_total = sum(lambdas[1:], lambdas[0])
    cross = tuple(tuple(crossings(p, tables)) for p in paths)
    tokens: list[Token] = []
    slot = 0
    for p, cs in zip(paths, cross):
        for datum in cs:
            for ac in datum.coroots:
                slot += 1
                tokens.append(Token("x", ac, slot))
        tokens.append(Token("z", weight=p.weight))
    return MVCycleLabel(
        tables, paths, nus, lambdas, mu, lam_total,
        rho_eval(tables, lam_total + mu), rho_eval(tables, lam_total - mu),
        cross, tuple(tokens),
    )


# ----- crystal structure on labels ---------------------------------------------------------------

def _ordered(paths: Sequence[Path], family: str) -> tuple[Path, ...]:
    """Order-reversal adapter: the unstarred family uses the opposite tensor product."""
    if family == STARRED:
        return tuple(paths)
    if family == UNSTARRED:
        return tuple(reversed(paths))
    raise InvalidInputError(f"unknown family {family!r}")


def tensor_rule_factor(stats: Sequence[tuple[int, int]], raising: bool) -> int | None:
    """Which factor of b_1 (x) ... (x) b_n receives e_i (raising) or f_i, from per-factor (eps, phi).

    Kashiwara convention, via the signature rule: ``-`` contributes eps, ``+`` contributes phi,
    cancel adjacent ``+ -`` pairs (a ``+`` to the left of a ``-``).
    """
    # reduced signature: list of (factor, sign) after cancellation
    stack: list[tuple[int, str]] = []
    for k, (eps, phi) in enumerate(stats):
        for _ in range(eps):
            if stack and stack[-1][1] == "+":
                stack.pop()
            else:
                stack.append((k, "-"))
        for _ in range(phi):
            stack.append((k, "+"))
    minus = [k for k, s in stack if s == "-"]
    plus = [k for k, s in stack if s == "+"]
    if raising:
        return minus[-1] if minus else None
    return plus[0] if plus else None


def _apply(paths: tuple[Path, ...], i: int, tables: RootTables, raising: bool, family: str):
    order = _ordered(paths, family)
    stats = []
    for p in order:
        s = path_stats(p, i)
        stats.append((int(s.epsilon), int(s.phi)))
    k = tensor_rule_factor(stats, raising)
    if k is None:
        return None
    op = e_op if raising else f_op
    new = list(order)
    new[k] = op(order[k], i, tables)
    return _ordered(tuple(new), family)


def label_e(label: MVCycleLabel, i: int, family: str = STARRED) -> MVCycleLabel | None:
    out = _apply(label.paths, i, label.tables, True, family)
    return None if out is None else cycle_label(out, label.tables, check_integral=False)


def label_f(label: MVCycleLabel, i: int, family: str = STARRED) -> MVCycleLabel | None:
    out = _apply(label.paths, i, label.tables, False, family)
    return None if out is None else cycle_label(out, label.tables, check_integral=False)


@dataclass(frozen=True)
class LabelStats:
    mu_i: Weight
    epsilon: int
    phi: int
    p: object


def label_stats(label: MVCycleLabel, i: int, family: str = STARRED) -> LabelStats:
    """Closed forms: with p the minimum of <alpha_i^vee, .> along the concatenation,
    mu_{i} = nu - p alpha_i, eps_i = -p, phi_i = q - p."""
    conc = concatenate(*_ordered(label.paths, family))
    s = path_stats(conc, i)
    return LabelStats(label.mu - label.tables.alpha(i) * s.min_value, int(s.epsilon), int(s.phi), s.min_value)


# ----- triangularity -------------------------------------------------------------------------------

@dataclass(frozen=True)
class Admissibility:
    admissible: bool
    strict: bool

    def __bool__(self):
        return self.admissible


def triangularity_admissible_weights(tables: RootTables, nus_p: Sequence, nus_pp: Sequence,
                                     equal: bool | None = None) -> Admissibility:
    """nu'_1 + ... + nu'_k >= nu''_1 + ... + nu''_k for k < n; ``strict`` is the refinement
    'Z' = Z'' or some displayed inequality is strict'."""
    if len(nus_p) != len(nus_pp):
        raise MismatchError("labels have different numbers of factors")
    tot_p = sum((Weight(x) for x in nus_p), Weight.zero(tables.rank))
    tot_pp = sum((Weight(x) for x in nus_pp), Weight.zero(tables.rank))
    if tot_p != tot_pp:
        raise MismatchError("labels have different total weights")
    a = Weight.zero(tables.rank)
    b = Weight.zero(tables.rank)
    ok, some_strict = True, False
    for k in range(len(nus_p) - 1):
        a = a + Weight(nus_p[k])
        b = b + Weight(nus_pp[k])
        if not dominance_leq(tables, b, a):
            ok = False
        elif a != b:
            some_strict = True
    if equal is None:
        equal = tuple(map(Weight, nus_p)) == tuple(map(Weight, nus_pp))
    return Admissibility(ok, ok and (equal or some_strict))


def triangularity_admissible(zp: MVCycleLabel, zpp: MVCycleLabel) -> Admissibility:
    if zp.lambdas != zpp.lambdas:
        raise MismatchError("labels have different dominant weights")
    return triangularity_admissible_weights(zp.tables, zp.nus, zpp.nus, equal=zp.paths == zpp.paths)


# ----- semisimple rank one -------------------------------------------------------------------------

@dataclass(frozen=True)
class Rank1Cycle:
    p: int
    dim: int


def rank1_cycle(tables: RootTables, mu: Sequence, nu: Sequence, i: int = 0) -> Rank1Cycle | None:
    """The cycle closure(Gr^mu) cap T_nu for the rank-one Levi of color i: nonempty iff nu = mu - p alpha_i
    with 0 <= p <= <alpha_i^vee, mu>; then it is an affine space of dimension p."""
    mu, nu = Weight(mu), Weight(nu)
    r = mu[i]
    if r < 0:
        raise InvalidInputError("mu must be dominant for the chosen color")
    diff = mu - nu
    alpha = tables.alpha(i)
    p = Fraction(diff[i], alpha[i])
    if diff != alpha * p or p.denominator != 1 or not 0 <= p <= r:
        return None
    return Rank1Cycle(int(p), int(p))


def labels_from_orbits(tables: RootTables, orbits: Iterable[Sequence[Path]]) -> list[tuple[Path, ...]]:
    """All path tuples drawn from the given orbits (cartesian product)."""
    import itertools

    return [tuple(t) for t in itertools.product(*orbits)]
