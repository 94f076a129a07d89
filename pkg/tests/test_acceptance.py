"""Acceptance criteria 1-10 with their tolerances and time limits.

Each test records a one-line PASS/FAIL verdict with its runtime; the lines are printed in the pytest
terminal summary, or directly when the module is run as a script.
"""

from __future__ import annotations

import itertools
import random
import time
from collections import Counter
from contextlib import contextmanager
from fractions import Fraction

import pytest

from mvcrystal.characters import character, character_product, decompose_character
from mvcrystal.crystal import (
    b_lambda,
    branch_to_levi,
    decompose,
    invariant_elements,
    rotate_satake,
    tensor,
)
from mvcrystal.errors import DegenerateLineError
from mvcrystal.mv_cycles import cycle_label, label_stats, tensor_rule_factor
from mvcrystal.path_model import concatenate, e_op, epsilon, f_op, phi
from mvcrystal.rational import Weight
from mvcrystal.root_data import (
    build_root_system,
    chamber_word_from_line,
    condition_A_check,
    lemma_condA_witness_scan,
    weyl_dimension,
)
from mvcrystal.symbolic import (
    Ideal,
    PolyMatrix,
    PolyRing,
    RatFunc,
    groebner,
    ideal_quotient,
    is_groebner,
    linsolve_ratfunc,
    normal_form,
    verify_solution,
)
from mvcrystal.worked_examples import verify_d4, verify_sl3

RESULTS: dict[int, str] = {}
SEED = 20240601


@contextmanager
def criterion(number: int, title: str, limit: float | None):
    """Time the body; record PASS only if it finished without error inside ``limit`` seconds."""
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = limit is None or elapsed < limit
        verdict = "PASS" if ok and within else "FAIL"
        bound = f" (limit {limit:g} s)" if limit is not None else ""
        RESULTS[number] = f"criterion {number:2d} {verdict}  {title}: {elapsed:.2f} s{bound}"
        print(RESULTS[number])
    assert within, f"criterion {number} took {elapsed:.2f} s, limit {limit} s"


def _tables(name, cache={}):
    if name not in cache:
        cache[name] = build_root_system(name)
    return cache[name]


def _orbit(name, lam):
    c = b_lambda(_tables(name), lam)
    return [c.provenance(b) for b in range(c.n)]


def _fund(name, i):
    return tuple(1 if j == i else 0 for j in range(_tables(name).rank))


def _random_path(rng, types):
    name = rng.choice(types)
    t = _tables(name)
    pieces = []
    for _ in range(rng.randint(1, 3)):
        if rng.random() < 0.8:
            lam = _fund(name, rng.randrange(t.rank))
        else:
            lam = tuple(rng.randint(0, 1) for _ in range(t.rank - 1)) + (1,)
        pieces.append(rng.choice(_orbit(name, lam)))
    return name, concatenate(*pieces)


# ----- 1 -------------------------------------------------------------------------------------------

def test_criterion_01_crystal_sizes():
    with criterion(1, "crystal sizes equal the Weyl dimension formula", 5.0):
        cases = [("A1", (1,)), ("A1", (2,))]
        for name in ("A2", "A3"):
            r = _tables(name).rank
            w1, w2 = _fund(name, 0), _fund(name, 1)
            cases += [(name, w1), (name, w2), (name, tuple(a + b for a, b in zip(w1, w2))),
                      (name, tuple(2 * a for a in w1))]
            assert len(w1) == r
        cases.append(("D4", (0, 1, 0, 0)))
        for name, lam in cases:
            t = _tables(name)
            assert b_lambda(t, lam).n == weyl_dimension(t, lam), (name, lam)
        adj = b_lambda(_tables("D4"), (0, 1, 0, 0))
        assert adj.n == 28
        assert sum(1 for b in range(adj.n) if adj.weight(b) == Weight((0, 0, 0, 0))) == 4


# ----- 2 -------------------------------------------------------------------------------------------

def _weights_up_to_dim(name, bound, top=3):
    t = _tables(name)
    out = []
    for lam in itertools.product(range(top), repeat=t.rank):
        if any(lam) and weyl_dimension(t, lam) <= bound:
            out.append(lam)
    return out


def test_criterion_02_tensor_decomposition():
    with criterion(2, "tensor decomposition equals the character product", 30.0):
        rng = random.Random(SEED)
        pools = {name: _weights_up_to_dim(name, 200) for name in ("A1", "A2", "D4")}
        names = ["A1"] * 6 + ["A2"] * 8 + ["D4"] * 6
        for name in names:
            t = _tables(name)
            lam, mu = rng.choice(pools[name]), rng.choice(pools[name])
            got = decompose(tensor(b_lambda(t, lam), b_lambda(t, mu)))
            want = decompose_character(t, character_product(character(t, lam), character(t, mu)))
            assert got == want, (name, lam, mu)


# ----- 3 -------------------------------------------------------------------------------------------

def test_criterion_03_axioms_on_random_paths():
    with criterion(3, "crystal axioms on 500 random integral paths", None):
        rng = random.Random(SEED + 3)
        failures = 0
        for _ in range(500):
            name, p = _random_path(rng, ("A1", "A2", "A3", "B2", "G2", "D4"))
            t = _tables(name)
            for i in range(t.rank):
                ok = phi(p, i) - epsilon(p, i) == p.weight[i]
                fp, ep = f_op(p, i, t), e_op(p, i, t)
                if fp is not None:
                    ok &= fp.weight == p.weight - t.alpha(i) and e_op(fp, i, t) == p
                else:
                    ok &= phi(p, i) == 0
                if ep is not None:
                    ok &= ep.weight == p.weight + t.alpha(i) and f_op(ep, i, t) == p
                else:
                    ok &= epsilon(p, i) == 0
                failures += not ok
        assert failures == 0


# ----- 4 -------------------------------------------------------------------------------------------

def test_criterion_04_concatenation_morphism():
    with criterion(4, "concatenation is a strict crystal morphism on 200 pairs", None):
        rng = random.Random(SEED + 4)
        failures = 0
        for _ in range(200):
            name, p1 = _random_path(rng, ("A1", "A2", "A3", "B2", "D4"))
            _, p2 = _random_path(rng, (name,))
            t = _tables(name)
            c = concatenate(p1, p2)
            for i in range(t.rank):
                stats = [(int(epsilon(x, i)), int(phi(x, i))) for x in (p1, p2)]
                for raising, op in ((True, e_op), (False, f_op)):
                    k = tensor_rule_factor(stats, raising)
                    if k is None:
                        want = None
                    else:
                        parts = [p1, p2]
                        parts[k] = op(parts[k], i, t)
                        want = concatenate(*parts)
                    failures += op(c, i, t) != want
        assert failures == 0


# ----- 5 -------------------------------------------------------------------------------------------

def test_criterion_05_sl3_reproduction():
    with criterion(5, "SL3 transition, local generation and 9x9 matrix", 10.0):
        rep = verify_sl3()
        assert rep.passed, rep.failures()
        assert rep["sl3_multiplicity.q_subset_p"].passed
        assert rep["sl3_multiplicity.f_generates_maximal_ideal"].passed
        assert rep.data["coefficient"] == 1
        assert rep["sl3_transition_matrix.unitriangular"].passed


# ----- 6 -------------------------------------------------------------------------------------------

def test_criterion_06_d4_reproduction():
    with criterion(6, "D4 u-morphism certificate (coefficient > 1)", 300.0):
        rep = verify_d4()
        assert rep.passed, rep.failures()
        for name in ("all_generator_images_vanish", "kernel_nonzero", "u_of_f_is_zero", "q_subset_p"):
            assert rep[f"d4_u_certificate.{name}"].passed
        assert rep.data["coefficient_lower_bound"] >= 2
        assert rep.data["displayed_coefficient"] == 2
        assert rep.data["displayed_coefficient_certified"] is False


# ----- 7 -------------------------------------------------------------------------------------------

def test_criterion_07_satake_rotation():
    with criterion(7, "Satake invariant counts and rotation bijection", 5.0):
        a1, a2 = _tables("A1"), _tables("A2")
        cases = [
            (a1, [(1,), (1,)]),
            (a2, [(1, 0), (0, 1)]),
            (a2, [(1, 0), (1, 0), (1, 0)]),
        ]
        for t, lams in cases:
            facs = tuple(b_lambda(t, lam) for lam in lams)
            invs = invariant_elements(tensor(*facs))
            ch = character(t, lams[0])
            for lam in lams[1:]:
                ch = character_product(ch, character(t, lam))
            zero = Weight.zero(t.rank)
            assert len(invs) == decompose_character(t, ch).get(zero, 0) == decompose(tensor(*facs)).get(zero, 0)
            n = len(facs)
            images = set()
            for idx in invs:
                cur_f, cur_i = facs, tuple(idx)
                for step in range(n):
                    r = rotate_satake(cur_f, cur_i)
                    cur_f, cur_i = r.factors, r.index
                    if step == 0:
                        images.add((tuple(id(c) for c in cur_f), cur_i))
                assert cur_f == facs and cur_i == tuple(idx)
            assert len(images) == len(invs)


# ----- 8 -------------------------------------------------------------------------------------------

def test_criterion_08_mu_j_consistency():
    with criterion(8, "closed-form mu_i equals the Levi source weight on 50 labels", None):
        rng = random.Random(SEED + 8)
        failures = 0
        for _ in range(50):
            name = rng.choice(("A2", "A3"))
            t = _tables(name)
            lams, idx, paths = [], [], []
            for _ in range(rng.randint(1, 3)):
                lam = _fund(name, rng.randrange(t.rank))
                orb = _orbit(name, lam)
                j = rng.randrange(len(orb))
                lams.append(lam)
                idx.append(j)
                paths.append(orb[j])
            lab = cycle_label(paths, t)
            facs = [b_lambda(t, lam) for lam in lams]
            crys = tensor(*facs) if len(facs) > 1 else facs[0]
            b = crys.index(idx) if len(facs) > 1 else idx[0]
            for i in range(t.rank):
                failures += label_stats(lab, i).mu_i != branch_to_levi(crys, [i]).mu[b]
        assert failures == 0


# ----- 9 -------------------------------------------------------------------------------------------

def test_criterion_09_condition_a():
    with criterion(9, "condition (A) on 20 generic lines and bounded witness scan", 60.0):
        rng = random.Random(SEED + 9)
        words = set()
        lines = 0
        while lines < 20:
            name = "A2" if lines < 10 else "A3"
            t = _tables(name)
            x = tuple(Fraction(rng.randint(1, 9), rng.randint(1, 5)) for _ in range(t.rank))
            y = tuple(Fraction(rng.randint(1, 9), rng.randint(1, 5)) for _ in range(t.rank))
            try:
                word = chamber_word_from_line(t, x, y)
            except DegenerateLineError:
                continue
            lines += 1
            assert condition_A_check(t, word).feasible, (name, word)
            words.add((name, word))
        for name, word in sorted(words):
            t = _tables(name)
            zero = Weight.zero(t.rank)
            assert lemma_condA_witness_scan(t, word, 3) == [(zero,) * len(word)], (name, word)


# ----- 10 ------------------------------------------------------------------------------------------

R = PolyRing(("x", "y", "z"))


def _rand_poly(rng, terms=3, deg=2):
    p = R.zero()
    for _ in range(rng.randint(1, terms)):
        mono = tuple(rng.randint(0, deg) for _ in range(3))
        p = p + R.const(rng.randint(-3, 3)).mul_term(mono, 1)
    return p if p else R.gens[rng.randrange(3)] + rng.randint(-2, 2)


def _rand_ratfunc(rng):
    den = _rand_poly(rng, 2, 1)
    return RatFunc(_rand_poly(rng), den) if den else RatFunc(_rand_poly(rng))


def test_criterion_10_symbolic_self_checks():
    with criterion(10, "symbolic kernel property suites, 100 instances each", None):
        rng = random.Random(SEED + 10)
        failures = Counter()
        for _ in range(100):
            gens = [_rand_poly(rng) for _ in range(rng.randint(1, 3))]
            order = rng.choice(["lex", "grlex", "degrevlex"])
            gb = groebner(gens, order)
            failures["gb"] += not is_groebner(gb, order) or any(normal_form(g, gb, order) for g in gens)
        for _ in range(100):
            gb = groebner([_rand_poly(rng) for _ in range(rng.randint(1, 3))])
            r = normal_form(_rand_poly(rng), gb)
            failures["nf"] += normal_form(r, gb) != r
        for _ in range(100):
            ideal = Ideal(R, [_rand_poly(rng) for _ in range(rng.randint(1, 2))])
            f = _rand_poly(rng)
            quot = ideal_quotient(ideal, f)
            failures["quotient"] += not ideal.is_subset(quot)
            failures["quotient"] += not Ideal(R, [h * f for h in quot.gens]).is_subset(ideal)
        for _ in range(100):
            n, m = rng.randint(1, 3), rng.randint(1, 3)
            a = PolyMatrix(R, [[_rand_ratfunc(rng) for _ in range(m)] for _ in range(n)])
            b = a.apply([RatFunc(_rand_poly(rng)) for _ in range(m)])
            sol = linsolve_ratfunc(a, b)
            failures["linsolve"] += not verify_solution(a, b, sol) or sol.rank + sol.kernel_dimension != m
        assert sum(failures.values()) == 0, dict(failures)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
