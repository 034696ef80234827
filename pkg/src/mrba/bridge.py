"""Rota-Baxter cohomology and its comparison with the modified theory.

A Rota-Baxter algebra ``(A, P)`` of weight lambda with bimodule ``(M, Q)``
has the complex ``C^k = C^k(A, M) + C^{k-1}(A_P, M_bar)`` with

    D(u)    = (du, -u)
    D(f, g) = (df, -d_bar g - Phi^k f)

where ``A_P`` has product ``P(a)b + aP(b) + lambda ab`` and ``M_bar`` has
actions ``P(a)u - Q(au)`` and ``uP(a) - Q(ua)``.

Under ``R = lambda + 2P``, ``S = lambda + 2Q`` (weight ``-lambda^2``) the two
complexes are isomorphic.  With the corrected ``Psi`` the isomorphism is
``Theta_0(u) = u/2`` and ``Theta_k(f, g) = (f/2, 2^(k-2) g)``; the printed
``(f, 2^(k-2) g)`` only intertwines the coboundaries when ``Psi^k`` vanishes
on the relevant cocycles, and is kept for regression tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from mrba.algebra import (
    AlgebraRep,
    BimoduleRep,
    InvalidStructureError,
    RBStructure,
    from_rota_baxter,
    lift_bimodule,
    validate_rb,
    validate_rb_bimodule,
)
from mrba.cochains import (
    Cochain,
    CochainPair,
    basis_batch,
    batch_matrix,
    hochschild_batch,
    operator_expansion,
    value_apply,
)
from mrba.cohomology import (
    _check_cochain,
    _single,
    cohomology_report,
    hochschild_coboundary,
    hochschild_matrix,
    mrba_dim,
)
from mrba.linalg import identity, is_zero, kernel_basis, rank, zeros

__all__ = [
    "THETA_CONVENTIONS",
    "ComparisonRow",
    "rb_induced_algebra",
    "rb_bar_bimodule",
    "phi_map",
    "phi_matrix",
    "bar_coboundary",
    "rba_coboundary",
    "rba_matrix",
    "rba_cohomology_dim",
    "theta_map",
    "theta_inverse",
    "theta_matrix",
    "compare_cohomologies",
]

THETA_CONVENTIONS = ("corrected", "printed")


def _require_rb(rb: RBStructure, m: BimoduleRep | None = None) -> None:
    bad = validate_rb(rb)
    if bad:
        raise InvalidStructureError(f"Rota-Baxter identity fails: {bad[0]}", bad)
    if m is not None:
        bad = validate_rb_bimodule(rb, m)
        if bad:
            raise InvalidStructureError(f"Rota-Baxter bimodule axiom fails: {bad[0]}", bad)


def rb_induced_algebra(rb: RBStructure) -> AlgebraRep:
    """``A_P`` with product ``P(a)b + aP(b) + lambda ab``."""
    _require_rb(rb)
    c, p = rb.mult, rb.p
    cp = np.einsum("pi,pjk->ijk", p, c) + np.einsum("qj,iqk->ijk", p, c) + rb.weight * c
    return AlgebraRep(cp, rb.algebra.labels)


def rb_bar_bimodule(rb: RBStructure, m: BimoduleRep) -> BimoduleRep:
    """``M_bar`` over ``A_P``; the operator slot keeps ``Q``."""
    _require_rb(rb, m)
    p, q = rb.p, m.s
    left = np.einsum("pi,puv->iuv", p, m.left) - np.einsum("iuw,vw->iuv", m.left, q)
    right = np.einsum("pi,upv->uiv", p, m.right) - np.einsum("uiw,vw->uiv", m.right, q)
    return BimoduleRep(left, right, q, m.labels)


def _phi_batch(rb: RBStructure, m: BimoduleRep, x: np.ndarray, k: int) -> np.ndarray:
    if k == 0:
        return x.copy()
    lam = rb.weight
    g = operator_expansion(x, rb.p, k)
    out = g[0]
    # j slots carry P, the other k - j are plain: that is g[k - j]
    for j in range(k):
        out = out - lam ** (k - j - 1) * value_apply(g[k - j], m.s, k)
    return out


def phi_map(rb: RBStructure, m: BimoduleRep, f: Cochain) -> Cochain:
    """``Phi^k(f) = f(P..P) - sum_j lambda^(k-j-1) Q f(P on j slots, plain elsewhere)``."""
    _check_cochain(f, rb.dim, m.dim)
    return Cochain(f.degree, f.source_dim, _phi_batch(rb, m, _single(f), f.degree)[..., 0])


def phi_matrix(rb: RBStructure, m: BimoduleRep, k: int) -> np.ndarray:
    return batch_matrix(_phi_batch(rb, m, basis_batch(k, rb.dim, m.dim), k))


def bar_coboundary(rb: RBStructure, m: BimoduleRep, g: Cochain) -> Cochain:
    """Hochschild coboundary of ``A_P`` with values in ``M_bar``."""
    return hochschild_coboundary(rb_induced_algebra(rb), rb_bar_bimodule(rb, m), g)


def rba_coboundary(rb: RBStructure, m: BimoduleRep, c: CochainPair) -> CochainPair:
    _require_rb(rb, m)
    if c.degree == 0:
        return CochainPair(hochschild_coboundary(rb.algebra, m, c.chi), -c.chi)
    df = hochschild_coboundary(rb.algebra, m, c.chi)
    return CochainPair(df, -bar_coboundary(rb, m, c.phi) - phi_map(rb, m, c.chi))


def rba_matrix(rb: RBStructure, m: BimoduleRep, k: int) -> np.ndarray:
    """Matrix of ``D: C^k -> C^{k+1}`` (first component block first)."""
    _require_rb(rb, m)
    n, d = rb.dim, m.dim
    top = hochschild_matrix(rb.algebra, m, k)
    if k == 0:
        return np.concatenate([top, -identity(d)], axis=0)
    ap, mbar = rb_induced_algebra(rb), rb_bar_bimodule(rb, m)
    bar = batch_matrix(hochschild_batch(ap.mult, mbar.left, mbar.right, basis_batch(k - 1, n, d), k - 1))
    upper = np.concatenate([top, zeros((top.shape[0], n ** (k - 1) * d))], axis=1)
    lower = np.concatenate([-phi_matrix(rb, m, k), -bar], axis=1)
    return np.concatenate([upper, lower], axis=0)


def rba_cohomology_dim(rb: RBStructure, m: BimoduleRep, k: int) -> int:
    out_mat = rba_matrix(rb, m, k)
    if k == 0:
        return len(kernel_basis(out_mat))
    in_mat = rba_matrix(rb, m, k - 1)
    if not is_zero(out_mat.dot(in_mat)):
        raise ArithmeticError(f"Rota-Baxter complex fails D^2 = 0 in degree {k}")
    return len(kernel_basis(out_mat)) - rank(in_mat)


# -- Theta ---------------------------------------------------------------------

def _theta_scales(k: int, convention: str) -> tuple[Fraction, Fraction]:
    if convention not in THETA_CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}; expected one of {THETA_CONVENTIONS}")
    second = Fraction(2) ** (k - 2)
    first = Fraction(1, 2) if convention == "corrected" else Fraction(1)
    return first, second


def theta_map(c: CochainPair, convention: str = "corrected") -> CochainPair:
    """``Theta_k`` from the Rota-Baxter complex to the modified one."""
    if c.degree == 0:
        return CochainPair(Fraction(1, 2) * c.chi)
    a, b = _theta_scales(c.degree, convention)
    return CochainPair(a * c.chi, b * c.phi)


def theta_inverse(c: CochainPair, convention: str = "corrected") -> CochainPair:
    if c.degree == 0:
        return CochainPair(2 * c.chi)
    a, b = _theta_scales(c.degree, convention)
    return CochainPair((1 / a) * c.chi, (1 / b) * c.phi)


def theta_matrix(n: int, d: int, k: int, convention: str = "corrected") -> np.ndarray:
    """Diagonal matrix of ``Theta_k`` on ``C^k``."""
    size = mrba_dim(n, d, k)
    if k == 0:
        return Fraction(1, 2) * identity(size)
    a, b = _theta_scales(k, convention)
    split = n**k * d
    diag = [a] * split + [b] * (size - split)
    out = zeros((size, size))
    for i, v in enumerate(diag):
        out[i, i] = v
    return out


# -- comparison ----------------------------------------------------------------

@dataclass(frozen=True)
class ComparisonRow:
    degree: int
    dim_rba: int
    dim_mrba: int

    @property
    def equal(self) -> bool:
        return self.dim_rba == self.dim_mrba


def compare_cohomologies(rb: RBStructure, m: BimoduleRep, max_degree: int) -> list[ComparisonRow]:
    """``dim H^k`` of both complexes for ``k <= max_degree``, computed independently.

    Raises ``ArithmeticError`` if a column differs.
    """
    s = from_rota_baxter(rb)
    lifted = lift_bimodule(rb, m)
    rows = []
    for k in range(max_degree + 1):
        row = ComparisonRow(k, rba_cohomology_dim(rb, m, k), cohomology_report(s, lifted, k).dim_cohomology)
        if not row.equal:
            raise ArithmeticError(f"H^{k}: Rota-Baxter side {row.dim_rba}, modified side {row.dim_mrba}")
        rows.append(row)
    return rows
