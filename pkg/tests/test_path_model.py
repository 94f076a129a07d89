from fractions import Fraction

import pytest
from hypothesis import given, settings

from _gen import integral_paths, orbit_members, tables
from mvcrystal.errors import InvalidInputError, NonIntegralPathError
from mvcrystal.mv_cycles import tensor_rule_factor
from mvcrystal.path_model import (
    Integrality,
    Path,
    concatenate,
    constant_path,
    e_op,
    epsilon,
    f_op,
    is_integral,
    local_absolute_minima,
    path_orbit,
    phi,
    satisfies_condition_star,
    straight_path,
)
from mvcrystal.rational import Weight

h = Fraction(1, 2)


def test_a1_lowering_oracle():
    # f on the straight path to 2w: reflect the first half, giving down to -1 then up to +1.
    t = tables("A1")
    p = f_op(straight_path((2,)), 0, t)
    assert p == Path.from_segments([((-2,), h), ((2,), h)])
    assert p.weight == Weight((0,))
    assert f_op(p, 0, t) == straight_path((-2,))
    assert f_op(straight_path((-2,)), 0, t) is None


def test_a2_straight_operators():
    t = tables("A2")
    p = straight_path((1, 0))
    assert f_op(p, 0, t) == straight_path((-1, 1))
    assert e_op(p, 0, t) is None
    assert f_op(p, 1, t) is None


def test_segments_merge_and_json_roundtrip():
    p = Path.from_segments([((1, 0), h), ((1, 0), h)])
    assert p == straight_path((1, 0))
    assert Path.from_json(p.to_json()) == p


def test_path_validation():
    with pytest.raises(InvalidInputError):
        Path.from_json({"direction": [1]})
    with pytest.raises(InvalidInputError):
        Path.from_json([{"direction": [1], "duration": "1", "extra": 0}])


def test_constant_path_has_no_operators():
    t = tables("A2")
    c = constant_path(2)
    assert all(f_op(c, i, t) is None and e_op(c, i, t) is None for i in range(2))


def test_local_minima():
    assert local_absolute_minima([0, -1, 0, -2, 1]) == [-1, -2]
    assert local_absolute_minima([0, 1, 2]) == [0]


def test_non_integral_path_detected():
    # Dips to -1/2 and ends at w: the minimum is not an integer.
    t = tables("A1")
    p = Path.from_segments([((-1,), h), ((3,), h)])
    assert is_integral(p, t).verdict is Integrality.FALSE
    with pytest.raises(NonIntegralPathError):
        f_op(p, 0, t)


def test_condition_star_fast_path():
    t = tables("A2")
    p = straight_path((1, 1))
    assert satisfies_condition_star(p)
    assert is_integral(p, t).reason == "condition_star"


def test_orbit_size_matches_dimension():
    t = tables("A3")
    assert len(path_orbit(straight_path((1, 0, 1)), t).paths) == 15


@settings(max_examples=150)
@given(integral_paths())
def test_axioms_on_random_paths(case):
    name, p = case
    t = tables(name)
    for i in range(t.rank):
        assert phi(p, i) - epsilon(p, i) == p.weight[i]
        fp = f_op(p, i, t)
        if fp is not None:
            assert fp.weight == p.weight - t.alpha(i)
            assert e_op(fp, i, t) == p
            assert epsilon(fp, i) == epsilon(p, i) + 1
        else:
            assert phi(p, i) == 0
        ep = e_op(p, i, t)
        if ep is not None:
            assert ep.weight == p.weight + t.alpha(i)
            assert f_op(ep, i, t) == p
        else:
            assert epsilon(p, i) == 0


@settings(max_examples=100)
@given(orbit_members(), orbit_members())
def test_concatenation_is_tensor_product(a, b):
    if a[0] != b[0]:
        return
    t = tables(a[0])
    p1, p2 = a[1], b[1]
    c = concatenate(p1, p2)
    for i in range(t.rank):
        stats = [(int(epsilon(x, i)), int(phi(x, i))) for x in (p1, p2)]
        for raising, op in ((True, e_op), (False, f_op)):
            k = tensor_rule_factor(stats, raising)
            if k is None:
                assert op(c, i, t) is None
            else:
                parts = [p1, p2]
                parts[k] = op(parts[k], i, t)
                assert op(c, i, t) == concatenate(*parts)
