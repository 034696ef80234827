"""Coboundary operators and cohomology of modified Rota-Baxter algebras.

Three complexes are involved for a structure ``(A, R)`` of weight kappa and
a bimodule ``(M, S)``:

* the Hochschild complex ``C(A, M)`` with coboundary ``d``;
* the Hochschild complex ``C(A_R, ~M)`` with coboundary ``dt``;
* the combined complex ``C^k = C^k(A, M) + C^{k-1}(A_R, ~M)`` with
  ``D(u) = (du, -u)`` and ``D(chi, Phi) = (d chi, -dt Phi - Psi^k chi)``.

``Psi`` comes in two conventions.  ``"printed"`` uses an ``S``-weighted
even-term coefficient ``(-kappa)^(r/2+1)`` and does not commute with the
coboundaries (``D`` then fails to square to zero).  ``"corrected"``
(the default) uses the coefficients of :mod:`mrba.psi_table`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from mrba.algebra import AlgebraRep, BimoduleRep, MRBStructure, induced_algebra, twisted_bimodule
from mrba.cochains import (
    Cochain,
    CochainPair,
    basis_batch,
    batch_matrix,
    contract_term,
    hochschild_batch,
    left_term,
    operator_expansion,
    right_term,
    slot_apply,
    value_apply,
)
from mrba.linalg import column_space_basis, identity, is_zero, kernel_basis, rank, zeros
from mrba.psi_table import UnresolvedCoefficientError, even_coefficient, require_pinned

__all__ = [
    "CONVENTIONS",
    "UnresolvedCoefficientError",
    "CohomologyReport",
    "LESNode",
    "hochschild_coboundary",
    "twisted_coboundary",
    "psi_map",
    "mrba_coboundary",
    "hochschild_matrix",
    "twisted_matrix",
    "psi_matrix",
    "mrba_matrix",
    "mrba_dim",
    "cohomology_report",
    "hochschild_cohomology_dim",
    "les_dimension_check",
]

CONVENTIONS = ("corrected", "printed")


def _check_convention(convention: str) -> None:
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")


def _single(f: Cochain) -> np.ndarray:
    return f.coeffs[..., np.newaxis]


def _check_cochain(f: Cochain, n: int, m: int) -> None:
    if f.source_dim != n or f.target_dim != m:
        raise ValueError(
            f"cochain maps {f.source_dim}-dim arguments to {f.target_dim}-dim values, "
            f"expected {n} -> {m}"
        )


# -- batch forms -------------------------------------------------------------

def _twisted_batch(s: MRBStructure, mod: BimoduleRep, x: np.ndarray, k: int) -> np.ndarray:
    r, sm = s.r, mod.s
    lt = left_term(mod.left, x, k)
    first = slot_apply(lt, r, 0) - value_apply(lt, sm, k + 1)
    rt = right_term(mod.right, x, k)
    last = slot_apply(rt, r, k) - value_apply(rt, sm, k + 1)
    out = (-1) ** (k + 1) * first + last
    for i in range(1, k + 1):
        ct = contract_term(s.mult, x, i - 1)
        out = out + (-1) ** (i + k + 1) * (slot_apply(ct, r, i - 1) + slot_apply(ct, r, i))
    return out


def _psi_batch(
    s: MRBStructure,
    mod: BimoduleRep,
    x: np.ndarray,
    k: int,
    convention: str = "corrected",
    even: Mapping[int, object] | None = None,
) -> np.ndarray:
    """``Psi^k`` on a batch.  ``even`` overrides the corrected even-term coefficients."""
    _check_convention(convention)
    if k == 0:
        return x.copy()
    kappa = s.weight
    g = operator_expansion(x, s.r, k)
    out = g[0]
    for r in range(1, k + 1):
        if r % 2:
            out = out - (-kappa) ** ((r - 1) // 2) * value_apply(g[r], mod.s, k)
        elif convention == "printed":
            out = out - (-kappa) ** (r // 2 + 1) * value_apply(g[r], mod.s, k)
        else:
            d = even[r] if even is not None else even_coefficient(k, r, kappa)
            out = out + d * g[r]
    return out


# -- single-cochain operators ------------------------------------------------

def hochschild_coboundary(alg: AlgebraRep | MRBStructure, mod: BimoduleRep, f: Cochain) -> Cochain:
    """Hochschild coboundary of ``f`` in ``C(A, M)`` (sign convention in :mod:`mrba.cochains`)."""
    _check_cochain(f, alg.mult.shape[0], mod.dim)
    out = hochschild_batch(alg.mult, mod.left, mod.right, _single(f), f.degree)
    return Cochain(f.degree + 1, f.source_dim, out[..., 0])


def twisted_coboundary(s: MRBStructure, mod: BimoduleRep, f: Cochain) -> Cochain:
    """The coboundary of ``C(A_R, ~M)``, written out in terms of ``R``, ``S`` and the actions of M."""
    _check_cochain(f, s.dim, mod.dim)
    out = _twisted_batch(s, mod, _single(f), f.degree)
    return Cochain(f.degree + 1, f.source_dim, out[..., 0])


def psi_map(s: MRBStructure, mod: BimoduleRep, f: Cochain, convention: str = "corrected") -> Cochain:
    _check_cochain(f, s.dim, mod.dim)
    if convention == "corrected":
        require_pinned(f.degree)
    out = _psi_batch(s, mod, _single(f), f.degree, convention)
    return Cochain(f.degree, f.source_dim, out[..., 0])


def mrba_coboundary(
    s: MRBStructure, mod: BimoduleRep, c: CochainPair, convention: str = "corrected"
) -> CochainPair:
    """``D(u) = (du, -u)`` and ``D(chi, Phi) = (d chi, -dt Phi - Psi chi)``."""
    if c.degree == 0:
        return CochainPair(hochschild_coboundary(s, mod, c.chi), -c.chi)
    dchi = hochschild_coboundary(s, mod, c.chi)
    second = -twisted_coboundary(s, mod, c.phi) - psi_map(s, mod, c.chi, convention)
    return CochainPair(dchi, second)


# -- matrices ----------------------------------------------------------------

def hochschild_matrix(alg: AlgebraRep | MRBStructure, mod: BimoduleRep, k: int) -> np.ndarray:
    n, m = alg.mult.shape[0], mod.dim
    return batch_matrix(hochschild_batch(alg.mult, mod.left, mod.right, basis_batch(k, n, m), k))


def twisted_matrix(s: MRBStructure, mod: BimoduleRep, k: int) -> np.ndarray:
    return batch_matrix(_twisted_batch(s, mod, basis_batch(k, s.dim, mod.dim), k))


def psi_matrix(s: MRBStructure, mod: BimoduleRep, k: int, convention: str = "corrected") -> np.ndarray:
    if convention == "corrected":
        require_pinned(k)
    return batch_matrix(_psi_batch(s, mod, basis_batch(k, s.dim, mod.dim), k, convention))


def mrba_dim(n: int, m: int, k: int) -> int:
    if k == 0:
        return m
    return n**k * m + n ** (k - 1) * m


def mrba_matrix(s: MRBStructure, mod: BimoduleRep, k: int, convention: str = "corrected") -> np.ndarray:
    """Matrix of ``D: C^k -> C^{k+1}`` in the lexicographic basis (chi block first)."""
    n, m = s.dim, mod.dim
    top = hochschild_matrix(s, mod, k)
    if k == 0:
        bottom = -identity(m)
        return np.concatenate([top, bottom], axis=0)
    psi = psi_matrix(s, mod, k, convention)
    tw = twisted_matrix(s, mod, k - 1)
    upper = np.concatenate([top, zeros((top.shape[0], n ** (k - 1) * m))], axis=1)
    lower = np.concatenate([-psi, -tw], axis=1)
    return np.concatenate([upper, lower], axis=0)


# -- cohomology ----------------------------------------------------------------

@dataclass
class CohomologyReport:
    degree: int
    dim_cocycles: int
    dim_coboundaries: int
    dim_cohomology: int
    cocycle_basis: list[CochainPair] = field(repr=False)
    coboundary_generators: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.dim_cohomology != self.dim_cocycles - self.dim_coboundaries or self.dim_cohomology < 0:
            raise ValueError("inconsistent cohomology dimensions")


def _incoming(s, mod, k, convention) -> np.ndarray:
    m = mod.dim
    if k == 0:
        return zeros((m, 0))
    return mrba_matrix(s, mod, k - 1, convention)


def cohomology_report(
    s: MRBStructure, mod: BimoduleRep, degree: int, convention: str = "corrected"
) -> CohomologyReport:
    """Cocycles, coboundaries and ``dim H^k`` of the combined complex.

    The containment ``B^k`` in ``Z^k`` is verified exactly; a failure raises
    ``ArithmeticError`` (it means the complex is not a complex).
    """
    _check_convention(convention)
    n, m = s.dim, mod.dim
    out_mat = mrba_matrix(s, mod, degree, convention)
    in_mat = _incoming(s, mod, degree, convention)
    if in_mat.shape[1] and not is_zero(out_mat.dot(in_mat)):
        raise ArithmeticError(f"coboundaries are not cocycles in degree {degree} ({convention} convention)")
    z = kernel_basis(out_mat)
    b_rank = rank(in_mat) if in_mat.shape[1] else 0
    return CohomologyReport(
        degree=degree,
        dim_cocycles=len(z),
        dim_coboundaries=b_rank,
        dim_cohomology=len(z) - b_rank,
        cocycle_basis=[CochainPair.from_vector(v, degree, n, m) for v in z],
        coboundary_generators=column_space_basis(in_mat) if in_mat.shape[1] else zeros((mrba_dim(n, m, degree), 0)),
    )


def _hoch_data(mult_src, mod: BimoduleRep, k: int) -> tuple[np.ndarray, np.ndarray]:
    """(cocycle basis as columns, coboundary generators as columns) of a Hochschild complex."""
    out_mat = hochschild_matrix(mult_src, mod, k)
    size = out_mat.shape[1]
    z = kernel_basis(out_mat)
    zmat = np.stack(z, axis=1) if z else zeros((size, 0))
    bmat = hochschild_matrix(mult_src, mod, k - 1) if k > 0 else zeros((size, 0))
    return zmat, bmat


def hochschild_cohomology_dim(alg: AlgebraRep | MRBStructure, mod: BimoduleRep, k: int) -> int:
    zmat, bmat = _hoch_data(alg, mod, k)
    return zmat.shape[1] - rank(bmat)


@dataclass
class LESNode:
    name: str
    dim: int
    rank_in: int
    rank_out: int

    @property
    def exact(self) -> bool:
        return self.rank_in + self.rank_out == self.dim


def _induced_rank(image: np.ndarray, boundaries: np.ndarray) -> int:
    """Rank of a map on cohomology: ``dim(f(Z) + B) - dim B``."""
    return rank(np.concatenate([image, boundaries], axis=1)) - rank(boundaries)


def _contained(image: np.ndarray, boundaries: np.ndarray) -> bool:
    return _induced_rank(image, boundaries) == 0


def les_dimension_check(
    s: MRBStructure, mod: BimoduleRep, max_degree: int, convention: str = "corrected"
) -> tuple[bool, list[LESNode]]:
    """Exactness of ``... -> H^k_mRBA -> H^k(A, M) -> H^k(A_R, ~M) -> H^{k+1}_mRBA -> ...``

    The maps are induced by ``p(chi, Phi) = chi``, the connecting map (found
    by lifting ``chi`` to ``(chi, 0)`` and applying ``D``), and
    ``iota(Phi) = (0, (-1)^(k-1) Phi)``.  Every composite is checked to land in
    the coboundaries, and exactness is checked at every node through
    ``H^max_degree(A_R, ~M)`` via ``rank_in + rank_out == dim``.
    """
    _check_convention(convention)
    n, m = s.dim, mod.dim
    ar = induced_algebra(s)
    mt = twisted_bimodule(s, mod)

    d_mats = {k: mrba_matrix(s, mod, k, convention) for k in range(max_degree + 1)}

    def mrba_zb(k):
        z = kernel_basis(d_mats[k])
        zmat = np.stack(z, axis=1) if z else zeros((mrba_dim(n, m, k), 0))
        bmat = d_mats[k - 1] if k > 0 else zeros((m, 0))
        return zmat, bmat

    def iota(k: int, vecs: np.ndarray) -> np.ndarray:
        """Columns of ``C^{k-1}(A_R, ~M)`` into ``C^k_mRBA``."""
        top = zeros((n**k * m, vecs.shape[1]))
        return np.concatenate([top, (-1) ** (k - 1) * vecs], axis=0)

    def proj(k: int, vecs: np.ndarray) -> np.ndarray:
        if k == 0:
            return vecs
        return vecs[: n**k * m, :]

    def connecting(k: int, zmat: np.ndarray) -> np.ndarray:
        """Lift to ``(chi, 0)``, apply D, read off the preimage under iota."""
        lift = np.concatenate([zmat, zeros((mrba_dim(n, m, k) - zmat.shape[0], zmat.shape[1]))], axis=0)
        image = d_mats[k].dot(lift) if zmat.shape[1] else zeros((mrba_dim(n, m, k + 1), 0))
        top = image[: n ** (k + 1) * m, :]
        if not is_zero(top):
            raise ArithmeticError("lift of a Hochschild cocycle has a nonzero first component")
        return (-1) ** k * image[n ** (k + 1) * m :, :]

    nodes: list[LESNode] = []
    composites_ok = True
    prev_rank = 0  # 0 -> H^0_mRBA
    prev_image = None
    for k in range(max_degree + 1):
        zm, bm = mrba_zb(k)
        zh, bh = _hoch_data(s, mod, k)
        zt, bt = _hoch_data(ar, mt, k)

        p_img = proj(k, zm)
        rank_p = _induced_rank(p_img, bh)
        dim_m = zm.shape[1] - rank(bm)
        nodes.append(LESNode(f"H^{k}_mRBA", dim_m, prev_rank, rank_p))
        if prev_image is not None:
            composites_ok &= _contained(proj(k, prev_image), bh)

        c_img = connecting(k, zh)
        rank_c = _induced_rank(c_img, bt)
        nodes.append(LESNode(f"H^{k}_Hoch(A,M)", zh.shape[1] - rank(bh), rank_p, rank_c))
        composites_ok &= _contained(connecting(k, p_img), bt)

        i_img = iota(k + 1, zt)
        b_next = d_mats[k]
        rank_i = _induced_rank(i_img, b_next)
        nodes.append(LESNode(f"H^{k}_Hoch(A_R,~M)", zt.shape[1] - rank(bt), rank_c, rank_i))
        composites_ok &= _contained(iota(k + 1, c_img), b_next)

        prev_rank = rank_i
        prev_image = i_img
    return composites_ok and all(node.exact for node in nodes), nodes
