import pytest
from hypothesis import given, settings, strategies as st

from _gen import fundamental, orbit_paths, tables
from mvcrystal.crystal import b_lambda, branch_to_levi, tensor
from mvcrystal.errors import InvalidInputError, MismatchError, NonIntegralPathError
from mvcrystal.mv_cycles import (
    STARRED,
    UNSTARRED,
    cycle_label,
    label_e,
    label_f,
    label_stats,
    rank1_cycle,
    tensor_rule_factor,
    triangularity_admissible,
    triangularity_admissible_weights,
)
from mvcrystal.path_model import Path, f_op, straight_path
from mvcrystal.rational import Weight


def test_frozen_a2_label():
    t = tables("A2")
    lab = cycle_label([straight_path((1, 0)), straight_path((-1, 1))], t)
    assert lab.word_text() == "x[(a1v+a2v,0)](c1) x[(a1v,0)](c2) z^{w1} x[(a2v,0)](c3) z^{-w1+w2}"
    assert (lab.dim_starred, lab.dim_unstarred, lab.parameter_count) == (3, 1, 3)
    assert lab.mu == Weight((0, 1)) and lab.lam_total == Weight((2, 0))


def test_frozen_a2_adjoint_label():
    t = tables("A2")
    lab = cycle_label([f_op(straight_path((1, 1)), 0, t)], t)
    assert lab.word_text() == "x[(a1v+a2v,0)](c1) x[(a2v,0)](c2) x[(a2v,1)](c3) z^{-w1+2*w2}"
    low = label_f(lab, 1)
    assert low.dim_starred == 2 and low.mu == Weight((0, 0))
    assert label_stats(lab, 0).p == -1


def test_label_rejects_bad_input():
    t = tables("A1")
    with pytest.raises(InvalidInputError):
        cycle_label([], t)
    with pytest.raises(MismatchError):
        cycle_label([straight_path((1, 0))], t)
    h = Path.from_segments([((-1,), "1/2"), ((3,), "1/2")])
    with pytest.raises(NonIntegralPathError):
        cycle_label([h], t)


def test_tensor_rule_factor():
    assert tensor_rule_factor([(0, 1), (1, 0)], raising=False) is None
    assert tensor_rule_factor([(0, 2), (1, 0)], raising=False) == 0
    assert tensor_rule_factor([(0, 0), (1, 1)], raising=True) == 1
    assert tensor_rule_factor([(1, 0), (0, 1)], raising=True) == 0


def test_rank_one_cycles():
    t = tables("A2")
    assert rank1_cycle(t, (2, 0), (0, 1)).dim == 1
    assert rank1_cycle(t, (2, 0), (1, 0)) is None
    assert rank1_cycle(t, (2, 0), (-2, 2)).p == 2


def test_triangularity():
    t = tables("A2")
    assert triangularity_admissible_weights(t, [(1, 0), (-1, 1)], [(1, 0), (-1, 1)]).strict
    assert triangularity_admissible_weights(t, [(1, 0), (-1, 1)], [(-1, 1), (1, 0)])
    assert not triangularity_admissible_weights(t, [(-1, 1), (1, 0)], [(1, 0), (-1, 1)])
    a = cycle_label([straight_path((1, 0)), straight_path((-1, 1))], t)
    b = cycle_label([straight_path((-1, 1)), straight_path((1, 0))], t)
    assert triangularity_admissible(a, b)
    with pytest.raises(MismatchError):
        triangularity_admissible(a, cycle_label([straight_path((1, 1))], t))


@st.composite
def labels(draw, types=("A2", "A3")):
    name = draw(st.sampled_from(types))
    t = tables(name)
    k = draw(st.integers(1, 3))
    lams, idx, paths = [], [], []
    for _ in range(k):
        lam = fundamental(name, draw(st.integers(0, t.rank - 1)))
        orb = orbit_paths(name, lam)
        j = draw(st.integers(0, len(orb) - 1))
        lams.append(lam)
        idx.append(j)
        paths.append(orb[j])
    return name, lams, tuple(idx), cycle_label(paths, t)


@settings(max_examples=50)
@given(labels())
def test_mu_closed_form_matches_levi_source(case):
    name, lams, idx, lab = case
    t = tables(name)
    crys = tensor(*[b_lambda(t, lam) for lam in lams]) if len(lams) > 1 else b_lambda(t, lams[0])
    b = crys.index(idx) if len(lams) > 1 else idx[0]
    for i in range(t.rank):
        assert label_stats(lab, i).mu_i == branch_to_levi(crys, [i]).mu[b]


@settings(max_examples=60)
@given(labels(("A2", "A3", "B2")), st.sampled_from([STARRED, UNSTARRED]))
def test_label_operators(case, family):
    name, _, _, lab = case
    t = tables(name)
    assert lab.parameter_count == lab.dim_starred
    for i in range(t.rank):
        low = label_f(lab, i, family)
        if low is not None:
            assert low.mu == lab.mu - t.alpha(i)
            assert label_e(low, i, family).paths == lab.paths
        st_ = label_stats(lab, i, family)
        assert st_.phi - st_.epsilon == lab.mu[i]
