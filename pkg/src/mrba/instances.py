"""Small named algebras and structures used in tests, the corpus and the CLI."""

from __future__ import annotations

from fractions import Fraction

from mrba.algebra import AlgebraRep, MRBStructure, RBStructure
from mrba.linalg import identity, rat_array, zeros


def k1() -> AlgebraRep:
    """The ground field: one basis vector with ``e e = e``."""
    return AlgebraRep(rat_array([[[1]]]), ("e",))


def dual_numbers() -> AlgebraRep:
    """``k[x]/(x^2)`` with basis ``e`` (unit), ``x``."""
    c = zeros((2, 2, 2))
    c[0, 0, 0] = 1
    c[0, 1, 1] = 1
    c[1, 0, 1] = 1
    return AlgebraRep(c, ("e", "x"))


def zero_algebra(n: int = 2) -> AlgebraRep:
    return AlgebraRep(zeros((n, n, n)), tuple(f"z{i}" for i in range(n)))


def upper_triangular() -> AlgebraRep:
    """Upper triangular 2x2 matrices, basis ``E11, E12, E22`` (noncommutative)."""
    c = zeros((3, 3, 3))
    c[0, 0, 0] = 1  # E11 E11 = E11
    c[0, 1, 1] = 1  # E11 E12 = E12
    c[1, 2, 1] = 1  # E12 E22 = E12
    c[2, 2, 2] = 1  # E22 E22 = E22
    return AlgebraRep(c, ("E11", "E12", "E22"))


def k1_structure() -> MRBStructure:
    """K1 with ``R = id``, weight -1."""
    return MRBStructure(k1(), identity(1), -1)


def d2_structure() -> MRBStructure:
    """Dual numbers with ``R = diag(1, -1)``, weight -1."""
    r = zeros((2, 2))
    r[0, 0] = 1
    r[1, 1] = -1
    return MRBStructure(dual_numbers(), r, -1)


def n2_structure(r=None, weight=Fraction(-1)) -> MRBStructure:
    """Zero multiplication in dimension 2; every operator works at every weight."""
    if r is None:
        r = rat_array([[1, 2], [0, 3]])
    return MRBStructure(zero_algebra(2), r, weight)


def rb_zero(algebra: AlgebraRep, lam) -> RBStructure:
    return RBStructure(algebra, zeros((algebra.dim, algebra.dim)), lam)


def rb_minus_lambda(algebra: AlgebraRep, lam) -> RBStructure:
    """``P = -lambda id``, a Rota-Baxter operator of weight lambda on any algebra."""
    return RBStructure(algebra, -Fraction(lam) * identity(algebra.dim), lam)


def rb_dual_projection(lam) -> RBStructure:
    """Dual numbers with ``P(e) = -lambda e``, ``P(x) = 0``; weight lambda."""
    p = zeros((2, 2))
    p[0, 0] = -Fraction(lam)
    return RBStructure(dual_numbers(), p, lam)


_T2_RB = [[-1, 0, 0], [-1, -1, 1], [-1, 0, 0]]


def t2_rb(lam=1) -> RBStructure:
    """A Rota-Baxter operator of weight lambda on upper triangular matrices.

    ``lambda * P`` is Rota-Baxter of weight lambda whenever ``P`` has weight 1.
    """
    lam = Fraction(lam)
    return RBStructure(upper_triangular(), lam * rat_array(_T2_RB), lam)


def t2_structure() -> MRBStructure:
    """Upper triangular matrices with a weight -1 operator not of the form +-id."""
    r = rat_array([[0, -1, -1], [-1, 0, 1], [0, 0, -1]])
    return MRBStructure(upper_triangular(), r, -1)


def t2_weight_zero() -> MRBStructure:
    r = rat_array([[0, 0, 0], [-1, 0, 1], [0, 0, 0]])
    return MRBStructure(upper_triangular(), r, 0)


def gaussian_rationals() -> AlgebraRep:
    """``Q(i)`` with basis ``1, i``."""
    c = zeros((2, 2, 2))
    c[0, 0, 0] = 1
    c[0, 1, 1] = 1
    c[1, 0, 1] = 1
    c[1, 1, 0] = -1
    return AlgebraRep(c, ("1", "i"))


def gaussian_structure() -> MRBStructure:
    """Multiplication by ``i`` on ``Q(i)``: a positive weight (+1) example."""
    r = rat_array([[0, -1], [1, 0]])
    return MRBStructure(gaussian_rationals(), r, 1)
