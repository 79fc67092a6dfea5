import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonext.distributions import Distribution, uniform
from nonext.entropy import generalized_entropy, uniform_entropy
from nonext.errors import DenominatorTooSmallError, NegativeWeightError, ZeroSizeError
from nonext.phi import builtin_phi
from nonext.reconstruction import (
    RationalDistribution,
    check_functional_equation,
    proof_identity_residual,
    reconstruct_rational,
    uniform_ratio,
    uniqueness_check,
)

T = builtin_phi("tsallis")
BUILTINS = [builtin_phi(n) for n in ("tsallis", "cubic", "havrda_charvat")]


def test_functional_equation_hand_example():
    rep = check_functional_equation(2, 2, 2.0, T)
    # f(4) = 0.75 = f(2) + 2^-1 f(2) = 0.5 + 0.25
    assert rep.witness["lhs"] == pytest.approx(0.75, abs=1e-15)
    assert rep.residual <= 1e-15 and rep.passed


@pytest.mark.parametrize("phi", BUILTINS, ids=lambda p: p.name)
def test_functional_equation_with_unit_factor(phi):
    for m, q in itertools.product((1, 2, 7, 100), (0.3, 1.0, 2.5)):
        assert check_functional_equation(m, 1, q, phi).residual <= 1e-15


@pytest.mark.parametrize("phi", BUILTINS, ids=lambda p: p.name)
def test_functional_equation_grid(phi):
    for m, n, q in itertools.product((2, 3, 10, 97), (2, 5, 64), (0.2, 0.5, 0.9, 1.0, 1.1, 2.0, 4.0)):
        assert check_functional_equation(m, n, q, phi).passed


@pytest.mark.parametrize("phi", BUILTINS, ids=lambda p: p.name)
@pytest.mark.parametrize("q", [0.3, 0.5, 0.99, 1.01, 2.0, 3.0, 5.0])
def test_ratio_is_independent_of_n(phi, q):
    ref = 1.0 / phi.eval(q)
    for n in (2, 3, 5, 17, 1000, 10**6):
        assert uniform_ratio(n, q, phi) == pytest.approx(ref, rel=1e-12)


def test_reconstruct_examples():
    assert reconstruct_rational(RationalDistribution((1, 1)), 2.0, T) == pytest.approx(0.5, abs=1e-15)
    # f(3) - (4/9) f(2) - (1/9) f(1) = 2/3 - 2/9 = 4/9
    expected = Fraction(2, 3) - Fraction(4, 9) * Fraction(1, 2)
    assert expected == Fraction(4, 9)
    got = reconstruct_rational(RationalDistribution((2, 1)), 2.0, T)
    assert got == pytest.approx(4 / 9, abs=1e-15)
    assert generalized_entropy(Distribution((2 / 3, 1 / 3)), 2.0, T) == pytest.approx(4 / 9, abs=1e-15)
    for M in (1, 5, 1000):
        assert reconstruct_rational(RationalDistribution((M,)), 1.7, T) == pytest.approx(0.0, abs=1e-15)


def test_zero_multiplicities_are_dropped():
    a = reconstruct_rational(RationalDistribution((3, 0, 2, 0)), 2.5, T)
    b = reconstruct_rational(RationalDistribution((3, 2)), 2.5, T)
    assert a == b


def test_rational_distribution_validation():
    with pytest.raises(NegativeWeightError):
        RationalDistribution((1, -1))
    with pytest.raises(ZeroSizeError):
        RationalDistribution((0, 0))
    assert RationalDistribution((1, 3)).to_distribution().p == (0.25, 0.75)


@settings(max_examples=200)
@given(
    st.lists(st.integers(min_value=0, max_value=2000), min_size=1, max_size=10).filter(lambda m: sum(m) > 0),
    st.sampled_from([0.3, 0.5, 2.0, 3.0, 5.0]),
    st.sampled_from(["tsallis", "cubic", "havrda_charvat"]),
)
def test_reconstruction_matches_closed_form(m, q, name):
    phi = builtin_phi(name)
    rd = RationalDistribution(tuple(m))
    assert reconstruct_rational(rd, q, phi) == pytest.approx(
        generalized_entropy(rd.to_distribution(), q, phi), abs=1e-10
    )
    assert proof_identity_residual(rd, q) <= 1e-12


def test_reconstruction_at_q_one_window():
    rd = RationalDistribution((3, 5, 8))
    for phi in BUILTINS:
        assert reconstruct_rational(rd, 1.0, phi) == pytest.approx(
            generalized_entropy(rd.to_distribution(), 1.0, phi), abs=1e-12
        )


def test_uniqueness_exact_representation():
    rep = uniqueness_check(uniform(3), 2.0, T, 3)
    assert rep.residual <= 1e-10 and rep.passed
    d = Distribution((0.125, 0.375, 0.5))
    for phi in BUILTINS:
        rep = uniqueness_check(d, 0.5, phi, 64)
        assert rep.residual <= 1e-10 and rep.passed


def test_uniqueness_irrational_point():
    g = (math.sqrt(5) - 1) / 2
    d = Distribution((g, 1 - g))
    for phi in BUILTINS:
        for q in (0.3, 2.0, 5.0):
            rep = uniqueness_check(d, q, phi, 10**4)
            assert rep.passed, rep.witness
            assert rep.tol < 1e-2


def test_uniqueness_residual_shrinks_with_denominator():
    d = Distribution((math.pi / 10, 0.5, 1 - 0.5 - math.pi / 10))
    res = [uniqueness_check(d, 2.0, T, M).residual for M in (10, 100, 1000, 10**5)]
    assert res[-1] < res[0]
    assert res[-1] <= 1e-4


def test_uniqueness_denominator_too_small():
    with pytest.raises(DenominatorTooSmallError):
        uniqueness_check(uniform(5), 2.0, T, 4)


def test_uniqueness_random(rng):
    for _ in range(30):
        n = int(rng.integers(2, 8))
        e = rng.standard_exponential(n)
        d = Distribution(tuple((e / e.sum()).tolist()))
        for phi in BUILTINS:
            for q in (0.3, 2.0):
                assert uniqueness_check(d, q, phi, 1000).passed
