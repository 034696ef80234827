from fractions import Fraction

import pytest
from hypothesis import strategies as st

from mrba.algebra import adjoint_bimodule, from_rota_baxter, lift_bimodule
from mrba.instances import (
    d2_structure,
    dual_numbers,
    gaussian_structure,
    k1,
    k1_structure,
    n2_structure,
    rb_dual_projection,
    rb_minus_lambda,
    rb_zero,
    t2_rb,
    t2_structure,
    t2_weight_zero,
)


def base_structures():
    """Valid structures covering weights -1, -4, -9, 0, +1 and a noncommutative algebra."""
    return {
        "K1": k1_structure(),
        "D2": d2_structure(),
        "N2": n2_structure(),
        "T2": t2_structure(),
        "T2w0": t2_weight_zero(),
        "Gauss": gaussian_structure(),
        "K1-rb1": from_rota_baxter(rb_zero(k1(), 1)),
        "D2-rb2": from_rota_baxter(rb_zero(dual_numbers(), 2)),
        "D2-rb3": from_rota_baxter(rb_zero(dual_numbers(), 3)),
        "D2-minus2": from_rota_baxter(rb_minus_lambda(dual_numbers(), 2)),
    }


def rb_instances():
    """Rota-Baxter algebras paired with their adjoint Rota-Baxter bimodule (Q = P)."""
    from mrba.algebra import BimoduleRep

    out = {
        "K1 P=0 l=1": rb_zero(k1(), 1),
        "D2 P=0 l=2": rb_zero(dual_numbers(), 2),
        "D2 P=0 l=3": rb_zero(dual_numbers(), 3),
        "D2 P=-2id": rb_minus_lambda(dual_numbers(), 2),
        "D2 proj l=1": rb_dual_projection(1),
        "T2 l=1": t2_rb(1),
        "T2 l=-2": t2_rb(-2),
    }
    return {k: (rb, BimoduleRep(rb.mult, rb.mult, rb.p, rb.algebra.labels)) for k, rb in out.items()}


@pytest.fixture(params=sorted(base_structures()))
def structure(request):
    return base_structures()[request.param]


@pytest.fixture
def adjoint(structure):
    return adjoint_bimodule(structure)


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)
small_ints = st.integers(min_value=-3, max_value=3)


def lifted(rb, m):
    return from_rota_baxter(rb), lift_bimodule(rb, m)


__all__ = ["base_structures", "rb_instances", "rationals", "small_ints", "lifted", "Fraction"]
