import random
from fractions import Fraction

import pytest

from mrba.psi_oracle import UnderdeterminedError, conjugate, default_instances, resolve, solve_even
from mrba.psi_table import EVEN_MULTIPLIERS, MAX_PINNED_DEGREE, UnresolvedCoefficientError, even_coefficient
from mrba.algebra import validate_mrb
from mrba.instances import d2_structure
from mrba.linalg import rat_array


def test_oracle_reproduces_table_low_degree():
    found = resolve(max_degree=4, seed=3)
    for degree, coeffs in found.items():
        assert coeffs == {r: Fraction(c) for r, c in EVEN_MULTIPLIERS[degree].items()}


def test_table_shape():
    assert MAX_PINNED_DEGREE == 6
    for degree, coeffs in EVEN_MULTIPLIERS.items():
        assert sorted(coeffs) == list(range(2, degree + 1, 2))


def test_even_coefficient_scales_with_weight():
    assert even_coefficient(2, 2, -1) == 1
    assert even_coefficient(4, 4, -4) == 16
    assert even_coefficient(3, 2, 0) == 0
    with pytest.raises(UnresolvedCoefficientError):
        even_coefficient(7, 2, -1)


def test_weight_zero_forces_vanishing_even_terms():
    rng = random.Random(0)
    weight_zero = default_instances(rng)[Fraction(0)]
    assert solve_even(weight_zero, 2, {}, rng) == {2: 0}


def test_no_instances_pin_nothing():
    with pytest.raises(UnderdeterminedError):
        solve_even([], 2, {}, random.Random(0))


def test_conjugate_stays_valid():
    g = rat_array([[1, 2], [0, 1]])
    assert validate_mrb(conjugate(d2_structure(), g)) == []
