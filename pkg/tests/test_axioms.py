import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonext.axioms import (
    check_expandability,
    check_maximality,
    check_pseudoadditivity,
    check_shannon_additivity,
    check_shannon_limit,
    check_symmetry,
)
from nonext.distributions import (
    Distribution,
    product,
    random_distribution,
    random_refinement,
    refine,
    uniform,
)
from nonext.entropy import generalized_entropy, shannon
from nonext.phi import builtin_phi, poly_phi

from .conftest import distributions, q_values

T = builtin_phi("tsallis")
C = builtin_phi("cubic")
HC = builtin_phi("havrda_charvat")
QS = (0.2, 0.5, 0.9, 1.1, 2.0, 3.0)


def test_additivity_hand_example():
    r = refine([[0.25, 0.25], [0.25, 0.25]])
    rep = check_shannon_additivity(r, 2.0, T)
    # LHS f_2(4) = 0.75; RHS f_2(2) + 2 * (1/4) * f_2(2) = 0.5 + 0.25
    assert rep.witness["lhs"] == pytest.approx(0.75, abs=1e-15)
    assert rep.witness["rhs"] == pytest.approx(0.75, abs=1e-15)
    assert rep.residual <= 1e-15 and rep.passed


@pytest.mark.parametrize("phi", [T, C, HC], ids=lambda p: p.name)
def test_additivity_at_q_one_is_shannon_additivity(phi, rng):
    for _ in range(50):
        r = random_refinement(rng.integers(1, 6, size=rng.integers(1, 6)).tolist(), rng)
        assert check_shannon_additivity(r, 1.0, phi).passed
        # and the Shannon identity itself, with p_i (not p_i^q) weights
        terms = []
        for block in r.blocks:
            pi = math.fsum(block)
            terms.append(pi * shannon([x / pi for x in block]))
        assert shannon(r.flatten()) == pytest.approx(shannon(r.marginals) + math.fsum(terms), rel=1e-13)


def test_trivial_refinement_has_zero_residual():
    r = refine([[0.2], [0.3], [0.5]])
    for q in QS:
        assert check_shannon_additivity(r, q, C).residual == 0.0


def test_zero_marginal_block_is_skipped():
    r = refine([[0.0, 0.0], [0.5, 0.5]])
    assert check_shannon_additivity(r, 2.0, T).passed


def test_additivity_fails_with_shannon_weights_off_q_one():
    # the grouping law needs p_i^q weights; p_i weights break it for q != 1
    r = refine([[0.1, 0.2], [0.3, 0.4]])
    rep = check_shannon_additivity(r, 2.0, T)
    wrong = generalized_entropy(r.marginals, 2.0, T) + math.fsum(
        math.fsum(b) * generalized_entropy([x / math.fsum(b) for x in b], 2.0, T) for b in r.blocks
    )
    assert rep.passed
    assert abs(rep.witness["lhs"] - wrong) > 1e-2


def test_pseudoadditivity_hand_example():
    rep = check_pseudoadditivity(product(uniform(2), uniform(2)), 2.0, T)
    assert rep.witness["lhs"] == pytest.approx(0.75, abs=1e-15)
    assert rep.witness["rhs"] == pytest.approx(0.75, abs=1e-15)
    assert rep.passed


def test_pseudoadditivity_q_one_is_plain_additivity(rng):
    for _ in range(20):
        a, b = random_distribution(4, rng), random_distribution(3, rng)
        assert check_pseudoadditivity(product(a, b), 1.0, T).passed
        assert shannon(product(a, b).joint) == pytest.approx(shannon(a) + shannon(b), rel=1e-13)


def test_pseudoadditivity_deterministic_factor():
    b = Distribution((0.2, 0.3, 0.5))
    s = product(Distribution((1.0, 0.0)), b)
    for q in QS:
        rep = check_pseudoadditivity(s, q, C)
        assert rep.residual == 0.0
        assert rep.witness["lhs"] == generalized_entropy(b, q, C)


def test_pseudoadditivity_fails_for_wrong_coupling(rng):
    # with phi = q - 1 the joint entropy obeys the tsallis coupling, not the cubic one
    a, b = random_distribution(3, rng), random_distribution(3, rng)
    sa, sb = generalized_entropy(a, 2.0, T), generalized_entropy(b, 2.0, T)
    joint = generalized_entropy(product(a, b).joint, 2.0, T)
    assert abs(joint - (sa + sb - C.eval(2.0) * sa * sb)) > 1e-3


@settings(max_examples=100)
@given(distributions, distributions, q_values, st.sampled_from(["tsallis", "cubic", "havrda_charvat"]))
def test_pseudoadditivity_property(a, b, q, name):
    assert check_pseudoadditivity(product(a, b), q, builtin_phi(name)).passed


def test_product_as_refinement_satisfies_both_identities(rng):
    for _ in range(100):
        s = product(random_distribution(int(rng.integers(1, 6)), rng), random_distribution(int(rng.integers(1, 6)), rng))
        for q in QS:
            for phi in (T, C, HC):
                add = check_shannon_additivity(s.rows(), q, phi)
                pseudo = check_pseudoadditivity(s, q, phi)
                assert add.passed and pseudo.passed
                assert add.witness["lhs"] == pseudo.witness["lhs"]


def test_maximality_examples(rng):
    for n in (1, 2, 4):
        rep = check_maximality(uniform(n), 2.0, T)
        assert rep.passed and rep.residual == 0.0
    # 1/5 is inexact: equality holds to rounding
    assert check_maximality(uniform(5), 2.0, T).residual <= 1e-15
    assert check_maximality(Distribution((1.0, 0.0, 0.0)), 0.5, C).passed
    for _ in range(2000):
        assert check_maximality(random_distribution(4, rng), 2.0, T).passed


def test_maximality_inapplicable_for_wrong_sign():
    rep = check_maximality(uniform(3), 2.0, poly_phi([-1.0]))
    assert not rep.applicable and not rep.passed
    assert math.isnan(rep.residual)
    assert "sign" in rep.note


def test_expandability_examples():
    assert check_expandability(uniform(2), 2.0, T).residual == 0.0
    rep = check_expandability(Distribution((1.0,)), 3.0, T)
    assert rep.residual == 0.0 and rep.witness["entropy"] == 0.0


@given(distributions, st.floats(min_value=0.05, max_value=6.0), st.sampled_from(["tsallis", "cubic", "havrda_charvat"]))
def test_expandability_property(d, q, name):
    assert check_expandability(d, q, builtin_phi(name)).residual == 0.0


def test_shannon_limit_tsallis():
    rep = check_shannon_limit(uniform(2), T)
    assert rep.passed and rep.note == ""
    assert rep.witness["limit"] == pytest.approx(math.log(2), rel=1e-15)


def test_shannon_limit_havrda_charvat_rescaled():
    rep = check_shannon_limit(uniform(2), HC)
    assert rep.passed
    assert rep.witness["limit"] == pytest.approx(1.0, rel=1e-15)
    assert rep.witness["strict"] is False
    assert "strict" in rep.note


def test_shannon_limit_deterministic():
    for phi in (T, C, HC):
        rep = check_shannon_limit(Distribution((1.0, 0.0)), phi)
        assert rep.passed and rep.witness["limit"] == 0.0


def test_shannon_limit_random(rng):
    for _ in range(50):
        d = random_distribution(int(rng.integers(2, 8)), rng)
        for phi in (T, C):
            rep = check_shannon_limit(d, phi)
            assert rep.passed, rep.witness["residuals"]


def test_symmetry_examples():
    assert check_symmetry(Distribution((0.2, 0.3, 0.5)), 2.0, T).residual <= 1e-14
    assert check_symmetry(uniform(5), 0.4, C).residual == 0.0
    assert check_symmetry(Distribution((1.0,)), 3.0, HC).residual == 0.0


def test_symmetry_report_carries_seed():
    a = check_symmetry(random_distribution(6, np.random.default_rng(3)), 1.7, C, seed=7)
    b = check_symmetry(random_distribution(6, np.random.default_rng(3)), 1.7, C, seed=7)
    assert a == b and a.seed == 7


def test_report_invariant(rng):
    for _ in range(20):
        r = random_refinement([2, 3], rng)
        rep = check_shannon_additivity(r, 0.5, C)
        assert rep.passed == (rep.residual <= rep.tol)
        assert set(rep.to_dict()) == {"name", "residual", "tol", "passed", "witness", "seed", "applicable", "note"}
