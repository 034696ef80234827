from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mrba.linalg import (
    InconsistentSystemError,
    NotASubspaceError,
    format_rational,
    identity,
    is_zero,
    kernel_basis,
    parse_rational,
    quotient_dim,
    rank,
    rat_array,
    reduce_modulo,
    rref,
    solve,
    zeros,
)

from conftest import rationals


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(rationals, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    ).map(rat_array)


def test_rref_examples():
    m, piv = rref(rat_array([[1, 2], [2, 4]]))
    assert m.tolist() == [[1, 2], [0, 0]] and piv == [0]
    m, piv = rref(identity(3))
    assert m.tolist() == identity(3).tolist() and piv == [0, 1, 2]
    m, piv = rref(rat_array([[0, 1], [1, 0]]))
    assert m.tolist() == [[1, 0], [0, 1]] and piv == [0, 1]


def test_kernel_examples():
    (v,) = kernel_basis(rat_array([[1, 2], [2, 4]]))
    assert v[1] != 0 and v[0] / v[1] == -2
    assert kernel_basis(identity(4)) == []
    assert len(kernel_basis(zeros((2, 3)))) == 3


def test_rank_and_solve_examples():
    assert rank(zeros((3, 2))) == 0
    b = rat_array([1, Fraction(-2, 3), 5])
    assert solve(identity(3), b).tolist() == b.tolist()
    x = solve(rat_array([[1, 1]]), rat_array([3]))
    assert x[0] + x[1] == 3


def test_solve_errors_are_distinct():
    with pytest.raises(InconsistentSystemError):
        solve(rat_array([[1, 1], [1, 1]]), rat_array([1, 2]))
    with pytest.raises(ValueError) as info:
        solve(identity(2), rat_array([1, 2, 3]))
    assert not isinstance(info.value, InconsistentSystemError)


def test_quotient_dim_examples():
    assert quotient_dim(zeros((2, 1)), identity(2)) == 2
    assert quotient_dim(identity(2), identity(2)) == 0
    assert quotient_dim(rat_array([[1], [0]]), identity(2)) == 1
    with pytest.raises(NotASubspaceError):
        quotient_dim(rat_array([[0], [1]]), rat_array([[1], [0]]))


def test_rationals_round_trip_and_reject_floats():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    with pytest.raises(ValueError):
        parse_rational("1/0")
    with pytest.raises(ValueError):
        parse_rational("0.5")
    with pytest.raises(TypeError):
        rat_array([0.5])


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity_and_kernel_exact(m):
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == m.shape[1]
    for v in ker:
        assert is_zero(m.dot(v))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_idempotent_and_row_space(m):
    r, piv = rref(m)
    r2, piv2 = rref(r)
    assert r2.tolist() == r.tolist() and piv2 == piv
    assert rank(np.concatenate([m, r], axis=0)) == rank(m) == len(piv)


@settings(max_examples=60, deadline=None)
@given(matrices(), st.data())
def test_solve_consistent_systems(m, data):
    x0 = rat_array(data.draw(st.lists(rationals, min_size=m.shape[1], max_size=m.shape[1])))
    b = m.dot(x0)
    assert is_zero(m.dot(solve(m, b)) - b)


@settings(max_examples=40, deadline=None)
@given(matrices(4, 3), st.data())
def test_reduce_modulo_is_a_class_invariant(gens, data):
    n = gens.shape[0]
    v = rat_array(data.draw(st.lists(rationals, min_size=n, max_size=n)))
    coeffs = rat_array(data.draw(st.lists(rationals, min_size=gens.shape[1], max_size=gens.shape[1])))
    assert reduce_modulo(v, gens).tolist() == reduce_modulo(v + gens.dot(coeffs), gens).tolist()
