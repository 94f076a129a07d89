import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from _gen import tables
from mvcrystal import _kernels_py, kernels
from mvcrystal.characters import character, character_product, decompose_character, tensor_multiplicities
from mvcrystal.crystal import (
    b_lambda,
    branch_to_levi,
    decompose,
    extremal_element,
    first_factor_extremal,
    invariant_elements,
    is_isomorphic,
    rotate_satake,
    sigma,
    tensor,
)
from mvcrystal.errors import InvalidInputError, NotInvariantError
from mvcrystal.rational import Weight
from mvcrystal.root_data import weyl_act, weyl_dimension

CASES = [("A1", (1,)), ("A1", (3,)), ("A2", (1, 0)), ("A2", (1, 1)), ("A2", (2, 0)), ("A3", (0, 1, 0)),
         ("A3", (1, 0, 1)), ("B2", (1, 0)), ("B2", (0, 1)), ("G2", (0, 1)), ("D4", (0, 1, 0, 0))]


@pytest.mark.parametrize("name,lam", CASES)
def test_size_and_character(name, lam):
    t = tables(name)
    c = b_lambda(t, lam)
    assert c.n == weyl_dimension(t, lam)
    weights = {}
    for b in range(c.n):
        w = c.weight(b)
        weights[w] = weights.get(w, 0) + 1
    assert weights == dict(character(t, lam))
    assert c.highest_elements == (0,)
    assert len(c.lowest_elements) == 1


def test_d4_adjoint_weight_zero():
    c = b_lambda(tables("D4"), (0, 1, 0, 0))
    assert sum(1 for b in range(c.n) if c.weight(b) == Weight((0, 0, 0, 0))) == 4
    assert [c.edge_count(i) for i in range(4)] == [10, 10, 10, 10]


def test_rejects_non_dominant():
    with pytest.raises(InvalidInputError):
        b_lambda(tables("A2"), (-1, 0))


def test_a2_tensor_oracle():
    t = tables("A2")
    w1 = b_lambda(t, (1, 0))
    dec = decompose(tensor(w1, w1))
    assert dec == {Weight((2, 0)): 1, Weight((0, 1)): 1}
    w2 = b_lambda(t, (0, 1))
    assert decompose(tensor(w1, w2)) == {Weight((1, 1)): 1, Weight((0, 0)): 1}


@settings(max_examples=25)
@given(st.sampled_from(["A1", "A2", "B2"]), st.data())
def test_decomposition_matches_characters(name, data):
    t = tables(name)
    lam = tuple(data.draw(st.integers(0, 2)) for _ in range(t.rank))
    mu = tuple(data.draw(st.integers(0, 1)) for _ in range(t.rank))
    dec = decompose(tensor(b_lambda(t, lam), b_lambda(t, mu)))
    assert dec == tensor_multiplicities(t, lam, mu)
    assert dec == decompose_character(t, character_product(character(t, lam), character(t, mu)))


def test_kernel_backends_agree():
    t = tables("A2")
    a, b = b_lambda(t, (1, 1)), b_lambda(t, (2, 0))
    args = (a.f, a.e, a.eps, a.phi, b.f, b.e, b.eps, b.phi)
    for x, y in zip(_kernels_py.tensor_edges(*args), kernels.tensor_edges(*args)):
        assert np.array_equal(np.asarray(x), np.asarray(y))
    c = tensor(a, b)
    assert np.array_equal(_kernels_py.component_labels(c.f, c.n), np.asarray(kernels.component_labels(c.f, c.n)))


def test_levi_branching_rank_one():
    t = tables("A2")
    c = b_lambda(t, (1, 1))
    br = branch_to_levi(c, [0])
    # sl3 adjoint restricted to the first sl2: 3 + 2 + 2 + 1
    assert br.component_sizes() == {3: 1, 2: 2, 1: 1}
    for b in range(c.n):
        assert br.mu[b] == c.weight(b) + t.alpha(0) * c.epsilon(b, 0)


def test_levi_full_and_empty():
    t = tables("A2")
    c = b_lambda(t, (1, 1))
    assert all(m == Weight((1, 1)) for m in branch_to_levi(c, [0, 1]).mu)
    assert list(branch_to_levi(c, []).mu) == [c.weight(b) for b in range(c.n)]


def test_extremal_elements():
    t = tables("A2")
    c = b_lambda(t, (1, 1))
    low = extremal_element(c, t.longest_word)
    assert c.weight(low) == weyl_act(t, t.longest_word, (1, 1))
    assert low in c.lowest_elements


def test_sigma_is_involutive_up_to_duality():
    t = tables("A2")
    c = b_lambda(t, (1, 0))
    s = sigma(c)
    back = sigma(s.target)
    assert all(back(s(b)) == b for b in range(c.n))


def test_invariants_and_rotation():
    assert first_factor_extremal() == "highest"
    t = tables("A2")
    w1 = b_lambda(t, (1, 0))
    facs = (w1, w1, w1)
    invs = invariant_elements(tensor(*facs))
    assert len(invs) == tensor_multiplicities(t, (1, 0), (1, 0), (1, 0))[Weight((0, 0))] == 1
    r = rotate_satake(facs, invs[0])
    assert r.index in invs
    with pytest.raises(NotInvariantError):
        rotate_satake(facs, (0, 0, 0))


def test_isomorphism():
    t = tables("A2")
    w1, w2 = b_lambda(t, (1, 0)), b_lambda(t, (0, 1))
    assert is_isomorphic(tensor(w1, w2), tensor(w2, w1))
    assert not is_isomorphic(tensor(w1, w1), tensor(w1, w2))


def test_pure_python_switch():
    import os
    import subprocess
    import sys

    env = dict(os.environ, MVCRYSTAL_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from mvcrystal import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    assert kernels.BACKEND in ("python", "cython")


def test_benchmark_smoke():
    import importlib.util
    import pathlib

    path = pathlib.Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    spec = importlib.util.spec_from_file_location("bench_kernels", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    rows = mod.run(1)
    assert [r["elements"] for r in rows] == [120, 300, 1568]
