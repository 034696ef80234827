import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mrba.deformation import (
    NotAnEquivalenceError,
    Obstructed,
    TruncatedDeformation,
    TruncatedEquivalence,
    apply_equivalence,
    check_deformation,
    check_infinitesimal_cocycle,
    infinitesimal,
    infinitesimals_cohomologous,
    trivial_deformation,
    trivialize_order_one,
    truncate,
    truncated_inverse,
)
from mrba.instances import d2_structure, k1_structure, n2_structure
from mrba.linalg import identity, is_zero, rat_array, zeros

from conftest import base_structures, small_ints


def k1_good(order=1):
    s = k1_structure()
    mu = (s.mult, rat_array([[[1]]])) + tuple(zeros((1, 1, 1)) for _ in range(order - 1))
    r = (s.r, zeros((1, 1))) + tuple(zeros((1, 1)) for _ in range(order - 1))
    return s, TruncatedDeformation(mu, r)


def test_k1_deformation_is_valid():
    s, d = k1_good()
    assert check_deformation(s, d).valid
    assert check_infinitesimal_cocycle(s, d)


def test_k1_trivializes_with_identity():
    s, d = k1_good()
    eq, moved = trivialize_order_one(s, d)
    assert is_zero(eq.phi[1] - identity(1))
    assert is_zero(moved.mu[1]) and is_zero(moved.r[1])
    assert infinitesimals_cohomologous(s, d, moved, eq)


def test_k1_bad_deformation_rejected():
    s = k1_structure()
    d = TruncatedDeformation((s.mult, zeros((1, 1, 1))), (s.r, identity(1)))
    report = check_deformation(s, d)
    assert not report.valid
    assert report.failure.order == 1 and report.failure.indices == (0, 0)
    assert report.failure.family == "operator"
    with pytest.raises(ValueError):
        check_infinitesimal_cocycle(s, d)
    with pytest.raises(ValueError):
        trivialize_order_one(s, d)


def test_order_two_on_k1():
    # (1 + t) e.e = e: mu_t = 1 / (1 - t) truncated trivializes exactly
    s = k1_structure()
    d = TruncatedDeformation((s.mult, rat_array([[[1]]]), rat_array([[[1]]])), (s.r, zeros((1, 1)), zeros((1, 1))))
    assert check_deformation(s, d).valid
    eq, moved = trivialize_order_one(s, d)
    assert check_deformation(s, moved).valid
    assert is_zero(moved.mu[1]) and is_zero(moved.r[1])


def test_associativity_failure_at_order_two():
    s = d2_structure()
    mu2 = zeros((2, 2, 2))
    mu2[1, 0, 0] = 1  # x.e picks up an e-component, e.x does not
    d = TruncatedDeformation((s.mult, zeros((2, 2, 2)), mu2), (s.r, zeros((2, 2)), zeros((2, 2))))
    report = check_deformation(s, d)
    assert (report.failure.order, report.failure.family, report.failure.indices) == (2, "associativity", (1, 0, 0))


def test_n2_obstructed():
    s = n2_structure(r=zeros((2, 2)), weight=0)
    mu1 = zeros((2, 2, 2))
    mu1[0, 0, 1] = 1
    d = TruncatedDeformation((s.mult, mu1), (s.r, zeros((2, 2))))
    assert check_deformation(s, d).valid
    out = trivialize_order_one(s, d)
    assert isinstance(out, Obstructed)
    assert not out.representative.is_zero()


@pytest.mark.parametrize("name", sorted(base_structures()))
def test_trivial_deformation_valid(name):
    s = base_structures()[name]
    d = trivial_deformation(s, 2)
    assert check_deformation(s, d).valid
    assert infinitesimal(d).is_zero()


def test_mismatched_base():
    s, d = k1_good()
    with pytest.raises(ValueError):
        check_deformation(d2_structure(), d)


def test_equivalence_validation():
    with pytest.raises(ValueError):
        TruncatedEquivalence((2 * identity(1),))
    with pytest.raises(ValueError):
        TruncatedEquivalence(())
    eq = TruncatedEquivalence.first_order(identity(2), 3)
    assert eq.order == 3


def test_wrong_equivalence_raises():
    s, d = k1_good()
    eq = TruncatedEquivalence.first_order(identity(1), 1)
    with pytest.raises(NotAnEquivalenceError):
        infinitesimals_cohomologous(s, d, d, eq)


def test_truncate():
    s, d = k1_good(3)
    assert truncate(d, 1).order == 1 and truncate(d, 1) == k1_good(1)[1]


@settings(max_examples=30, deadline=None)
@given(st.lists(small_ints, min_size=12, max_size=12))
def test_inverse_and_transport(vals):
    # random equivalences on D2 carry valid deformations to valid ones,
    # shifting the infinitesimal by a coboundary
    s = d2_structure()
    phis = (identity(2),) + tuple(rat_array(vals[4 * i : 4 * i + 4]).reshape(2, 2) for i in range(3))
    eq = TruncatedEquivalence(phis)
    inv = truncated_inverse(eq)
    for q in range(1, 4):
        acc = zeros((2, 2))
        for i in range(q + 1):
            acc = acc + eq.phi[i].dot(inv.phi[q - i])
        assert is_zero(acc)
    d = trivial_deformation(s, 3)
    moved = apply_equivalence(s, d, eq)
    assert check_deformation(s, moved).valid
    assert infinitesimals_cohomologous(s, d, moved, eq)
    assert apply_equivalence(s, moved, inv) == d
