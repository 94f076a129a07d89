"""Finite crystal graphs: B(lambda) from paths, tensor products, decomposition, Levi branching,
extremal elements, the involution sigma, invariant elements and the cyclic rotation of invariants.

Tensor products follow Kashiwara's convention: on b1 (x) b2, e_i acts on b1 iff phi_i(b1) >= eps_i(b2)
and f_i acts on b1 iff phi_i(b1) > eps_i(b2).
"""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import CrystalAxiomError, InvalidInputError, MismatchError, NotInvariantError
from .path_model import Path, path_orbit, straight_path
from .rational import Weight
from .root_data import RootTables, require_reduced, rho_eval, weyl_act


def _walk_lengths(op: np.ndarray, n: int) -> np.ndarray:
    """Length of the chain b, op(b), op(op(b)), ...; raises on cycles."""
    out = np.full(n, -1, dtype=np.int64)
    for start in range(n):
        if out[start] >= 0:
            continue
        chain = [start]
        cur = op[start]
        while cur >= 0 and out[cur] < 0:
            chain.append(cur)
            if len(chain) > n:
                raise CrystalAxiomError("infinite string detected")
            cur = op[cur]
        base = 0 if cur < 0 else out[cur] + 1
        for k, b in enumerate(reversed(chain)):
            out[b] = base + k
    return out


class CrystalGraph:
    """A finite semi-normal crystal with integer arrays for its operators.

    ``f[i, b]`` / ``e[i, b]`` give the image index or -1; ``wt[b]`` is the weight in fundamental
    coordinates.  ``provenance[b]`` is a Path for path crystals and a tuple of factor indices for
    tensor products.
    """

    def __init__(self, tables: RootTables, wt: np.ndarray, f: np.ndarray, e: np.ndarray | None = None,
                 eps: np.ndarray | None = None, phi: np.ndarray | None = None,
                 provenance: Sequence | None = None, factors: tuple = (), name: str = "", check: bool = True):
        self.tables = tables
        self.wt = np.asarray(wt, dtype=np.int64).reshape(-1, tables.rank)
        self.n = self.wt.shape[0]
        self.f = np.asarray(f, dtype=np.int64).reshape(tables.rank, self.n)
        if e is None:
            e = np.full_like(self.f, -1)
            for i in range(tables.rank):
                src = np.nonzero(self.f[i] >= 0)[0]
                e[i, self.f[i, src]] = src
        self.e = np.asarray(e, dtype=np.int64)
        if eps is None:
            eps = np.stack([_walk_lengths(self.e[i], self.n) for i in range(tables.rank)], axis=1)
        if phi is None:
            phi = np.stack([_walk_lengths(self.f[i], self.n) for i in range(tables.rank)], axis=1)
        self.eps = np.asarray(eps, dtype=np.int64).reshape(self.n, tables.rank)
        self.phi = np.asarray(phi, dtype=np.int64).reshape(self.n, tables.rank)
        self._provenance = provenance
        self.factors = tuple(factors)
        self.name = name
        self._lock = threading.Lock()
        if check:
            self.check_axioms()

    # ----- basic queries -------------------------------------------------
    @property
    def rank(self) -> int:
        return self.tables.rank

    def __len__(self):
        return self.n

    def weight(self, b: int) -> Weight:
        return Weight(int(c) for c in self.wt[b])

    def f_op(self, b: int, i: int) -> int | None:
        t = int(self.f[i, b])
        return None if t < 0 else t

    def e_op(self, b: int, i: int) -> int | None:
        t = int(self.e[i, b])
        return None if t < 0 else t

    def epsilon(self, b: int, i: int) -> int:
        return int(self.eps[b, i])

    def phi_(self, b: int, i: int) -> int:
        return int(self.phi[b, i])

    def provenance(self, b: int):
        if self._provenance is None:
            return None
        return self._provenance[b]

    @cached_property
    def _alpha_arr(self) -> np.ndarray:
        return np.array([list(a) for a in self.tables.simple_roots], dtype=np.int64)

    def check_axioms(self) -> None:
        """Semi-normal crystal axioms; raises CrystalAxiomError on the first violation."""
        n, rank = self.n, self.rank
        idx = np.arange(n)
        for i in range(rank):
            fi, ei = self.f[i], self.e[i]
            src = idx[fi >= 0]
            if np.any(ei[fi[src]] != src):
                raise CrystalAxiomError(f"e_{i + 1} is not inverse to f_{i + 1}")
            src_e = idx[ei >= 0]
            if np.any(fi[ei[src_e]] != src_e):
                raise CrystalAxiomError(f"f_{i + 1} is not inverse to e_{i + 1}")
            if np.any(self.wt[fi[src]] != self.wt[src] - self._alpha_arr[i]):
                raise CrystalAxiomError(f"f_{i + 1} does not lower the weight by alpha_{i + 1}")
            if np.any(self.phi[:, i] - self.eps[:, i] != self.wt[:, i]):
                raise CrystalAxiomError(f"phi - eps differs from the pairing for color {i + 1}")
            if np.any((self.phi[:, i] > 0) != (fi >= 0)) or np.any((self.eps[:, i] > 0) != (ei >= 0)):
                raise CrystalAxiomError(f"string lengths inconsistent with edges for color {i + 1}")
            if np.any(self.eps[src, i] + 1 != self.eps[fi[src], i]):
                raise CrystalAxiomError(f"eps_{i + 1} does not increase along f_{i + 1}")

    # ----- components ---------------------------------------------------
    @cached_property
    def component_labels(self) -> np.ndarray:
        return np.asarray(kernels.component_labels(self.f, self.n))

    def components(self, colors: Iterable[int] | None = None) -> np.ndarray:
        if colors is None:
            return self.component_labels
        colors = sorted(set(colors))
        if not colors:
            return np.arange(self.n, dtype=np.int64)
        return np.asarray(kernels.component_labels(np.ascontiguousarray(self.f[colors]), self.n))

    def sources(self, colors: Iterable[int] | None = None) -> np.ndarray:
        colors = list(range(self.rank)) if colors is None else sorted(set(colors))
        if not colors:
            return np.arange(self.n)
        return np.nonzero(np.all(self.eps[:, colors] == 0, axis=1))[0]

    @cached_property
    def highest_elements(self) -> tuple[int, ...]:
        return tuple(int(b) for b in self.sources())

    @cached_property
    def lowest_elements(self) -> tuple[int, ...]:
        return tuple(int(b) for b in np.nonzero(np.all(self.phi == 0, axis=1))[0])

    def to_highest(self, b: int) -> int:
        """The highest element of b's component (follow any raising operator until none applies)."""
        while True:
            for i in range(self.rank):
                t = self.e[i, b]
                if t >= 0:
                    b = int(t)
                    break
            else:
                return b

    def to_lowest(self, b: int) -> int:
        while True:
            for i in range(self.rank):
                t = self.f[i, b]
                if t >= 0:
                    b = int(t)
                    break
            else:
                return b

    # ----- addresses ----------------------------------------------------
    @cached_property
    def addresses(self) -> dict[int, tuple[int, ...]]:
        """Lex-least f-address (colors in order of application) of every element from its component's source."""
        out: dict[int, tuple[int, ...]] = {}
        for h in self.highest_elements:
            out[h] = ()
            level = [h]
            while level:
                cand: dict[int, tuple[int, ...]] = {}
                for b in level:
                    for i in range(self.rank):
                        t = int(self.f[i, b])
                        if t < 0:
                            continue
                        addr = out[b] + (i,)
                        if t not in cand or addr < cand[t]:
                            cand[t] = addr
                out.update(cand)
                level = sorted(cand)
        if len(out) != self.n:
            raise CrystalAxiomError("some elements are unreachable from a highest element")
        return out

    def follow(self, start: int, word: Sequence[int], lowering: bool = True) -> int | None:
        """Apply operators in the order listed; None if one of them is undefined."""
        ops = self.f if lowering else self.e
        b = start
        for i in word:
            t = int(ops[i, b])
            if t < 0:
                return None
            b = t
        return b

    def element_label(self, b: int) -> str:
        prov = self.provenance(b)
        if isinstance(prov, tuple):
            return "(" + ",".join(str(x) for x in prov) + ")"
        addr = self.addresses[b]
        return "f[" + ",".join(str(i + 1) for i in addr) + "]"

    # ----- serialization ------------------------------------------------
    def to_json(self) -> dict:
        nodes = []
        for b in range(self.n):
            node = {"id": b, "weight": self.weight(b).to_json(), "address": [i + 1 for i in self.addresses[b]]}
            prov = self.provenance(b)
            if isinstance(prov, Path):
                node["path"] = prov.to_json()
            elif isinstance(prov, tuple):
                node["factors"] = list(prov)
            nodes.append(node)
        edges = {str(i + 1): [[int(b), int(self.f[i, b])] for b in range(self.n) if self.f[i, b] >= 0]
                 for i in range(self.rank)}
        return {"cartan": [list(r) for r in self.tables.cartan], "nodes": nodes, "f_edges": edges}

    def edge_count(self, i: int) -> int:
        return int(np.count_nonzero(self.f[i] >= 0))


def _check_tables(a: RootTables, b: RootTables):
    if a.cartan != b.cartan:
        raise MismatchError("crystals over different root data")


_B_CACHE: dict = {}
_B_LOCK = threading.Lock()


def b_lambda(tables: RootTables, lam: Sequence, budget: int | None = None) -> CrystalGraph:
    """B(lambda) as the operator orbit of the straight path to lambda, elements ordered by address."""
    lam = Weight(lam)
    if len(lam) != tables.rank or not lam.is_integral() or not lam.is_dominant():
        raise InvalidInputError(f"{lam!r} is not a dominant integral weight of rank {tables.rank}")
    key = (tables.cartan, tuple(lam))
    with _B_LOCK:
        hit = _B_CACHE.get(key)
    if hit is not None:
        return hit
    orbit = path_orbit(straight_path(lam), tables, budget)
    n = len(orbit.paths)
    f = np.full((tables.rank, n), -1, dtype=np.int64)
    for i, edges in enumerate(orbit.f_edges):
        for s, t in edges.items():
            f[i, s] = t
    wt = np.array([[int(c) for c in p.weight] for p in orbit.paths], dtype=np.int64).reshape(n, tables.rank)
    raw = CrystalGraph(tables, wt, f, provenance=orbit.paths, check=False)
    if raw.highest_elements != (0,):
        raise CrystalAxiomError("path orbit of a dominant straight path must have a unique source")
    # canonical order: by (depth, lex-least address)
    addr = raw.addresses
    order = sorted(range(n), key=lambda b: (len(addr[b]), addr[b]))
    pos = np.empty(n, dtype=np.int64)
    pos[order] = np.arange(n)
    f2 = np.full_like(f, -1)
    for i in range(tables.rank):
        src = np.nonzero(f[i] >= 0)[0]
        f2[i, pos[src]] = pos[f[i, src]]
    g = CrystalGraph(tables, wt[order], f2, provenance=tuple(orbit.paths[b] for b in order),
                     name=f"B({lam.label()})")
    g.highest_weight = lam
    with _B_LOCK:
        _B_CACHE[key] = g
    return g


def b_zero(tables: RootTables) -> CrystalGraph:
    return b_lambda(tables, Weight.zero(tables.rank))


def _tensor2(c1: CrystalGraph, c2: CrystalGraph) -> CrystalGraph:
    _check_tables(c1.tables, c2.tables)
    f, e, eps, phi = kernels.tensor_edges(c1.f, c1.e, c1.eps, c1.phi, c2.f, c2.e, c2.eps, c2.phi)
    wt = (c1.wt[:, None, :] + c2.wt[None, :, :]).reshape(-1, c1.rank)
    return CrystalGraph(c1.tables, wt, np.asarray(f), np.asarray(e), np.asarray(eps), np.asarray(phi),
                        check=False)


class TensorCrystal(CrystalGraph):
    """Left-associated tensor product; element b is the tuple ``provenance(b)`` of factor indices."""

    def provenance(self, b: int) -> tuple[int, ...]:
        return tuple(int(x) for x in np.unravel_index(b, self.shape))

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(c.n for c in self.factors)

    def index(self, elems: Sequence[int]) -> int:
        if len(elems) != len(self.factors):
            raise InvalidInputError("component count does not match the number of factors")
        for x, c in zip(elems, self.factors):
            if not 0 <= x < c.n:
                raise InvalidInputError("factor element index out of range")
        return int(np.ravel_multi_index(tuple(elems), self.shape))


def tensor(*crystals: CrystalGraph, check: bool = True) -> TensorCrystal:
    """Tensor product of crystals (left-associated), with the axiom suite re-verified."""
    if not crystals:
        raise InvalidInputError("tensor of no crystals")
    acc = crystals[0]
    for c in crystals[1:]:
        acc = _tensor2(acc, c)
    out = TensorCrystal(acc.tables, acc.wt, acc.f, acc.e, acc.eps, acc.phi, factors=crystals, check=check,
                        name=" x ".join(c.name for c in crystals))
    return out


def decompose(c: CrystalGraph) -> Counter:
    """Multiset of highest weights, one per connected component."""
    labels = c.component_labels
    sources = c.highest_elements
    per_comp = Counter(int(labels[s]) for s in sources)
    comps = set(int(x) for x in np.unique(labels))
    bad = [k for k in comps if per_comp.get(k, 0) != 1]
    if bad:
        raise CrystalAxiomError(f"{len(bad)} components without a unique highest element")
    return Counter(c.weight(s) for s in sources)


@dataclass(frozen=True)
class LeviBranching:
    colors: tuple[int, ...]
    labels: np.ndarray
    mu: tuple[Weight, ...]

    def component_sizes(self) -> Counter:
        return Counter(Counter(self.labels.tolist()).values())


def branch_to_levi(c: CrystalGraph, J: Iterable[int]) -> LeviBranching:
    """Restrict to the colors in J; mu_J(b) is the weight of the J-highest element of b's J-component."""
    J = tuple(sorted(set(J)))
    for j in J:
        if not 0 <= j < c.rank:
            raise InvalidInputError(f"color {j} out of range")
    labels = c.components(J)
    src_of = {}
    for s in c.sources(J):
        lab = int(labels[s])
        if lab in src_of:
            raise CrystalAxiomError("J-component with several J-highest elements")
        src_of[lab] = int(s)
    mu = tuple(c.weight(src_of[int(labels[b])]) for b in range(c.n))
    if len(J) == 1:
        (i,) = J
        alpha = c.tables.alpha(i)
        for b in range(c.n):
            if mu[b] != c.weight(b) + alpha * c.epsilon(b, i):
                raise CrystalAxiomError("rank-one mu_J disagrees with wt + eps * alpha")
    return LeviBranching(J, labels, mu)


def extremal_element(c: CrystalGraph, word: Sequence[int], start: int | None = None) -> int:
    """theta(w, lambda) applied to the highest element: f_{i_1}^{n_1} ... f_{i_l}^{n_l}, rightmost first."""
    tables = c.tables
    word = tuple(word)
    require_reduced(tables, word)
    if start is None:
        if len(c.highest_elements) != 1:
            raise InvalidInputError("crystal has several highest elements; pass start=")
        start = c.highest_elements[0]
    lam = c.weight(start)
    b = start
    for j in range(len(word) - 1, -1, -1):
        i = word[j]
        n_j = weyl_act(tables, word[j + 1:], lam)[i]
        for _ in range(int(n_j)):
            t = c.f_op(b, i)
            if t is None:
                raise CrystalAxiomError("extremal string ended early")
            b = t
    expected = weyl_act(tables, word, lam)
    if c.weight(b) != expected:
        raise CrystalAxiomError("extremal element has the wrong weight")
    return b


@dataclass(frozen=True)
class SigmaMap:
    source: CrystalGraph
    target: CrystalGraph
    image: tuple[int, ...]

    def __call__(self, b: int) -> int:
        return self.image[b]


def sigma(c: CrystalGraph) -> SigmaMap:
    """Replay each element's f-address from the highest of B(lambda) as an e-address from the lowest of B(lambda*)."""
    if len(c.highest_elements) != 1:
        raise InvalidInputError("sigma needs a connected crystal B(lambda)")
    lam = c.weight(c.highest_elements[0])
    tgt = b_lambda(c.tables, c.tables.dual(lam))
    (low,) = tgt.lowest_elements
    image = []
    for b in range(c.n):
        t = tgt.follow(low, c.addresses[b], lowering=False)
        if t is None:
            raise CrystalAxiomError("sigma address replay failed")
        image.append(t)
    for i in range(c.rank):
        for b in range(c.n):
            fb = c.f_op(b, i)
            if fb is not None and tgt.e_op(image[b], i) != image[fb]:
                raise CrystalAxiomError("sigma does not intertwine f and e")
            if c.weight(b) != -tgt.weight(image[b]):
                raise CrystalAxiomError("sigma does not negate weights")
    return SigmaMap(c, tgt, tuple(image))


def is_invariant(c: CrystalGraph, b: int) -> bool:
    return bool(np.all(c.wt[b] == 0) and np.all(c.eps[b] == 0) and np.all(c.phi[b] == 0))


def invariant_elements(c: CrystalGraph) -> list:
    """Elements spanning trivial components, as factor tuples for tensor crystals."""
    mask = np.all(c.wt == 0, axis=1) & np.all(c.eps == 0, axis=1) & np.all(c.phi == 0, axis=1)
    out = [int(b) for b in np.nonzero(mask)[0]]
    if isinstance(c, TensorCrystal):
        return [c.provenance(b) for b in out]
    return out


# ----- cyclic rotation of invariants --------------------------------------------------------------

_CONVENTION_LOCK = threading.Lock()
_CONVENTION: str | None = None


def first_factor_extremal() -> str:
    """Which extreme the first tensor factor occupies in an invariant element ("highest" or "lowest").

    Derived once from A1 B(w) (x) B(w) rather than hard-coded.
    """
    global _CONVENTION
    with _CONVENTION_LOCK:
        if _CONVENTION is None:
            from .root_data import build_root_system

            t = build_root_system("A1")
            b = b_lambda(t, (1,))
            (inv,) = invariant_elements(tensor(b, b))
            if inv[0] in b.highest_elements:
                _CONVENTION = "highest"
            elif inv[0] in b.lowest_elements:
                _CONVENTION = "lowest"
            else:
                raise CrystalAxiomError("invariant of B(w) x B(w) has a non-extremal first factor")
        return _CONVENTION


@dataclass(frozen=True)
class RotationResult:
    factors: tuple[CrystalGraph, ...]
    index: tuple[int, ...]
    sign: int


_TENSOR_CACHE: dict = {}


def _cached_tensor(factors: tuple[CrystalGraph, ...]) -> TensorCrystal:
    key = tuple(id(c) for c in factors)
    hit = _TENSOR_CACHE.get(key)
    if hit is None or hit[0] != factors:
        hit = (factors, tensor(*factors, check=False))
        _TENSOR_CACHE[key] = hit
    return hit[1]


def rotate_satake(factors: Sequence[CrystalGraph], idx: Sequence[int]) -> RotationResult:
    """Map an invariant index of B(l1) x M to the corresponding invariant index of M x B(l1)."""
    factors = tuple(factors)
    idx = tuple(int(x) for x in idx)
    if len(factors) < 2:
        raise InvalidInputError("rotation needs at least two factors")
    full = _cached_tensor(factors)
    if not is_invariant(full, full.index(idx)):
        raise NotInvariantError(f"{idx} is not an invariant element")
    first, rest = factors[0], factors[1:]
    M = _cached_tensor(rest) if len(rest) > 1 else rest[0]
    r = M.index(idx[1:]) if isinstance(M, TensorCrystal) else idx[1]
    if first_factor_extremal() == "highest":
        k = M.to_highest(r)
        (b_new,) = first.lowest_elements
    else:
        k = M.to_lowest(r)
        (b_new,) = first.highest_elements
    k_tuple = M.provenance(k) if isinstance(M, TensorCrystal) else (k,)
    new_factors = rest + (first,)
    new_idx = tuple(k_tuple) + (b_new,)
    lam1 = first.weight(first.highest_elements[0])
    sign = -1 if (2 * rho_eval(first.tables, lam1)) % 2 else 1
    rotated = _cached_tensor(new_factors)
    if not is_invariant(rotated, rotated.index(new_idx)):
        raise CrystalAxiomError("rotation produced a non-invariant element")
    return RotationResult(new_factors, new_idx, sign)


def is_isomorphic(c1: CrystalGraph, c2: CrystalGraph) -> bool:
    """Compare highest weights, then address-labeled edge sets component by component."""
    if c1.tables.cartan != c2.tables.cartan or c1.n != c2.n:
        return False
    if decompose(c1) != decompose(c2):
        return False

    def signature(c: CrystalGraph):
        labels = c.component_labels
        sigs = []
        comp_members: dict[int, list[int]] = {}
        for b in range(c.n):
            comp_members.setdefault(int(labels[b]), []).append(b)
        for members in comp_members.values():
            addr = c.addresses
            src = next(b for b in members if not addr[b])
            edges = sorted(
                (addr[b], i, addr[int(c.f[i, b])]) for b in members for i in range(c.rank) if c.f[i, b] >= 0
            )
            sigs.append((tuple(c.wt[src]), tuple(edges)))
        return sorted(sigs)

    return signature(c1) == signature(c2)
