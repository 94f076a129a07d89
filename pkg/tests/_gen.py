"""Shared generators for random integral paths and labels."""

from __future__ import annotations

from functools import lru_cache

from hypothesis import strategies as st

from mvcrystal.crystal import b_lambda
from mvcrystal.path_model import concatenate
from mvcrystal.root_data import build_root_system

SMALL_TYPES = ("A1", "A2", "A3", "B2", "D4")


@lru_cache(maxsize=None)
def tables(name):
    return build_root_system(name)


@lru_cache(maxsize=None)
def orbit_paths(name, lam):
    c = b_lambda(tables(name), lam)
    return tuple(c.provenance(b) for b in range(c.n))


def fundamental(name, i):
    t = tables(name)
    return tuple(1 if j == i else 0 for j in range(t.rank))


@st.composite
def integral_paths(draw, types=SMALL_TYPES, max_pieces=3):
    """Concatenation of random elements of B(w_i) orbits; concatenations of integral paths are integral."""
    name = draw(st.sampled_from(types))
    t = tables(name)
    k = draw(st.integers(1, max_pieces))
    pieces = []
    for _ in range(k):
        i = draw(st.integers(0, t.rank - 1))
        paths = orbit_paths(name, fundamental(name, i))
        pieces.append(paths[draw(st.integers(0, len(paths) - 1))])
    return name, concatenate(*pieces)


@st.composite
def orbit_members(draw, types=SMALL_TYPES):
    name = draw(st.sampled_from(types))
    t = tables(name)
    i = draw(st.integers(0, t.rank - 1))
    paths = orbit_paths(name, fundamental(name, i))
    return name, paths[draw(st.integers(0, len(paths) - 1))]
