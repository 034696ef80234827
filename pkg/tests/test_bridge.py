from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mrba.algebra import InvalidStructureError, RBStructure, induced_algebra, twisted_bimodule
from mrba.bridge import (
    bar_coboundary,
    compare_cohomologies,
    phi_map,
    phi_matrix,
    rb_bar_bimodule,
    rb_induced_algebra,
    rba_cohomology_dim,
    rba_coboundary,
    rba_matrix,
    theta_inverse,
    theta_map,
    theta_matrix,
)
from mrba.cochains import Cochain, CochainPair
from mrba.cohomology import cohomology_report, mrba_matrix, psi_map, psi_matrix, twisted_coboundary
from mrba.instances import dual_numbers, k1, rb_zero
from mrba.linalg import is_zero, rat_array

from conftest import lifted, rationals, rb_instances

RB = sorted(rb_instances())


def test_induced_examples():
    # P = 0: the induced product is lambda ab
    rb = rb_zero(dual_numbers(), 3)
    assert is_zero(rb_induced_algebra(rb).mult - 3 * rb.mult)
    rb, m = rb_instances()["K1 P=0 l=1"]
    bar = rb_bar_bimodule(rb, m)
    assert is_zero(bar.left) and is_zero(bar.right)


@pytest.mark.parametrize("name", RB)
def test_twisted_is_twice_bar(name):
    rb, m = rb_instances()[name]
    s, lm = lifted(rb, m)
    assert is_zero(induced_algebra(s).mult - 2 * rb_induced_algebra(rb).mult)
    tw, bar = twisted_bimodule(s, lm), rb_bar_bimodule(rb, m)
    assert is_zero(tw.left - 2 * bar.left) and is_zero(tw.right - 2 * bar.right)


@pytest.mark.parametrize("name", RB)
def test_psi_is_scaled_phi(name):
    rb, m = rb_instances()[name]
    s, lm = lifted(rb, m)
    for k in range(4):
        assert is_zero(psi_matrix(s, lm, k) - 2**k * phi_matrix(rb, m, k))


@pytest.mark.parametrize("name", RB)
def test_rba_complex(name):
    rb, m = rb_instances()[name]
    for k in range(2):
        assert is_zero(rba_matrix(rb, m, k + 1).dot(rba_matrix(rb, m, k)))


@pytest.mark.parametrize("name", RB)
def test_theta_intertwines(name):
    rb, m = rb_instances()[name]
    s, lm = lifted(rb, m)
    n, d = rb.dim, m.dim
    for k in range(3):
        lhs = mrba_matrix(s, lm, k).dot(theta_matrix(n, d, k))
        rhs = theta_matrix(n, d, k + 1).dot(rba_matrix(rb, m, k))
        assert is_zero(lhs - rhs), k


def test_printed_theta_fails_to_intertwine():
    # on P = 0 instances the Hochschild part of D vanishes often enough to hide it
    rb, m = rb_instances()["D2 proj l=1"]
    s, lm = lifted(rb, m)
    lhs = mrba_matrix(s, lm, 1).dot(theta_matrix(2, 2, 1, "printed"))
    rhs = theta_matrix(2, 2, 2, "printed").dot(rba_matrix(rb, m, 1))
    assert not is_zero(lhs - rhs)


@pytest.mark.parametrize("name", RB)
def test_compare(name):
    rb, m = rb_instances()[name]
    rows = compare_cohomologies(rb, m, 2)
    assert [r.degree for r in rows] == [0, 1, 2] and all(r.equal for r in rows)
    assert rows[0].dim_rba == 0


def test_theta_roundtrip_and_errors():
    c = CochainPair(Cochain(2, 1, rat_array([[[3]]])), Cochain(1, 1, rat_array([[5]])))
    assert theta_inverse(theta_map(c)) == c
    assert theta_map(c).chi.coeffs[0, 0, 0] == Fraction(3, 2)
    assert theta_map(c, "printed").chi.coeffs[0, 0, 0] == 3
    u = CochainPair(Cochain(0, 1, rat_array([4])))
    assert theta_map(u).chi.coeffs[0] == 2
    with pytest.raises(ValueError):
        theta_map(c, "other")


def test_non_rb_rejected():
    bad = RBStructure(k1(), rat_array([[1]]), 0)
    with pytest.raises(InvalidStructureError):
        rb_induced_algebra(bad)


@settings(max_examples=20, deadline=None)
@given(st.lists(rationals, min_size=8, max_size=8), st.lists(rationals, min_size=4, max_size=4))
def test_maps_match_matrices(chi_vals, phi_vals):
    rb, m = rb_instances()["D2 proj l=1"]
    c = CochainPair(Cochain(2, 2, rat_array(chi_vals).reshape(2, 2, 2)), Cochain(1, 2, rat_array(phi_vals).reshape(2, 2)))
    assert is_zero(rba_coboundary(rb, m, c).to_vector() - rba_matrix(rb, m, 2).dot(c.to_vector()))
    s, lm = lifted(rb, m)
    # Theta carries D_RBA to D_mRBA on single cochains as well
    assert mrba_matrix(s, lm, 2).dot(theta_map(c).to_vector()).tolist() == theta_map(rba_coboundary(rb, m, c)).to_vector().tolist()


@pytest.mark.parametrize("name", RB)
def test_single_cochain_maps(name):
    rb, m = rb_instances()[name]
    s, lm = lifted(rb, m)
    n, d = rb.dim, m.dim
    f = Cochain(2, n, rat_array([[[i + 2 * j - v for v in range(d)] for j in range(n)] for i in range(n)]))
    g = Cochain(1, n, rat_array([[i - v for v in range(d)] for i in range(n)]))
    assert psi_map(s, lm, f) == 4 * phi_map(rb, m, f)
    assert twisted_coboundary(s, lm, g) == 2 * bar_coboundary(rb, m, g)


@pytest.mark.parametrize("name", RB)
def test_rba_dims_match_direct_computation(name):
    rb, m = rb_instances()[name]
    s, lm = lifted(rb, m)
    for k in range(3):
        assert rba_cohomology_dim(rb, m, k) == cohomology_report(s, lm, k).dim_cohomology
