"""Abelian extensions ``0 -> M -> E -> A -> 0`` and their 2-cocycles.

A degree-2 element ``(chi, Phi)`` builds ``E = A + M`` with

    (a, u)(b, v) = (ab, av + ub + chi(a, b)),     U(a, u) = (Ra, Su + Phi(a)).

Conversely a section ``s`` of the projection gives back
``chi(a, b) = s(a)s(b) - s(ab)`` and ``Phi(a) = U s(a) - s R(a)``.
Moving the section by ``theta`` shifts the cocycle by ``D(theta, 0)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from mrba.algebra import (
    AlgebraRep,
    BimoduleRep,
    InvalidStructureError,
    MRBStructure,
    check_morphism,
    validate_bimodule,
    validate_mrb,
)
from mrba.cochains import Cochain, CochainPair
from mrba.cohomology import mrba_coboundary, mrba_matrix
from mrba.linalg import InconsistentSystemError, identity, is_zero, rank, rat_array, solve, zeros

__all__ = [
    "NotACocycleError",
    "NotCohomologousError",
    "SectionMismatchError",
    "ExtensionData",
    "Section",
    "extension_from_cocycle",
    "validate_extension",
    "canonical_section",
    "shifted_section",
    "cocycle_from_section",
    "iso_from_cohomologous",
    "classify_roundtrip",
]


class NotACocycleError(ValueError):
    pass


class NotCohomologousError(ValueError):
    pass


class SectionMismatchError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ExtensionData:
    base: MRBStructure
    fiber: BimoduleRep
    total: MRBStructure
    inclusion: np.ndarray  # dim E x dim M
    projection: np.ndarray  # dim A x dim E


@dataclass(frozen=True, eq=False)
class Section:
    matrix: np.ndarray  # dim E x dim A


def _check_pair(base: MRBStructure, fiber: BimoduleRep, c: CochainPair) -> None:
    if c.degree != 2 or c.source_dim != base.dim or c.target_dim != fiber.dim:
        raise ValueError(f"expected a degree-2 element over a {base.dim}-dim algebra with {fiber.dim}-dim values")


def extension_from_cocycle(base: MRBStructure, fiber: BimoduleRep, c: CochainPair) -> ExtensionData:
    _check_pair(base, fiber, c)
    image = mrba_coboundary(base, fiber, c)
    if not image.chi.is_zero():
        raise NotACocycleError(f"not a cocycle: Hochschild coboundary of chi is nonzero at {next(image.chi.support())[0]}")
    if not image.phi.is_zero():
        raise NotACocycleError(f"not a cocycle: operator condition fails at {next(image.phi.support())[0]}")
    n, m = base.dim, fiber.dim
    big = n + m
    mult = zeros((big, big, big))
    mult[:n, :n, :n] = base.mult
    mult[:n, :n, n:] = c.chi.coeffs
    mult[:n, n:, n:] = fiber.left
    mult[n:, :n, n:] = fiber.right
    u = zeros((big, big))
    u[:n, :n] = base.r
    u[n:, n:] = fiber.s
    u[n:, :n] = c.phi.coeffs.T
    labels = base.algebra.labels + tuple(f"{lab}_M" for lab in fiber.labels)
    total = MRBStructure(AlgebraRep(mult, labels), u, base.weight)
    inclusion = np.concatenate([zeros((n, m)), identity(m)], axis=0)
    projection = np.concatenate([identity(n), zeros((n, m))], axis=1)
    return ExtensionData(base, fiber, total, inclusion, projection)


def validate_extension(ext: ExtensionData) -> list[str]:
    """All violated invariants, as short messages (empty when valid)."""
    out: list[str] = []
    n, m, big = ext.base.dim, ext.fiber.dim, ext.total.dim
    i, p = ext.inclusion, ext.projection
    if big != n + m or i.shape != (big, m) or p.shape != (n, big):
        return [f"dimension mismatch: E has {big}, A has {n}, M has {m}"]
    bad = validate_mrb(ext.total)
    if bad:
        out.append(f"total space fails: {bad[0]}")
    if not is_zero(p.dot(i)):
        out.append("projection after inclusion is nonzero")
    if rank(i) != m:
        out.append("inclusion is not injective")
    if rank(p) != n:
        out.append("projection is not surjective")
    c = ext.total.mult
    # i(M) is an ideal with zero internal product
    if not is_zero(np.einsum("pu,qv,pqk->uvk", i, i, c)):
        out.append("kernel has nonzero multiplication")
    if not is_zero(np.einsum("pu,pqk,ak->uqa", i, c, p)) or not is_zero(np.einsum("qu,pqk,ak->pua", i, c, p)):
        out.append("kernel is not an ideal")
    if not is_zero(ext.total.r.dot(i) - i.dot(ext.fiber.s)):
        out.append("inclusion does not intertwine S and U")
    if not is_zero(p.dot(ext.total.r) - ext.base.r.dot(p)):
        out.append("projection does not intertwine U and R")
    # the projection is an algebra map
    if not is_zero(np.einsum("pqk,ak->pqa", c, p) - np.einsum("ap,bq,abk->pqk", p, p, ext.base.mult)):
        out.append("projection is not multiplicative")
    return out


def canonical_section(ext: ExtensionData) -> Section:
    n, m = ext.base.dim, ext.fiber.dim
    return Section(np.concatenate([identity(n), zeros((m, n))], axis=0))


def shifted_section(ext: ExtensionData, sec: Section, theta: Cochain) -> Section:
    """``s'(a) = s(a) + i(theta(a))``."""
    return Section(sec.matrix + ext.inclusion.dot(theta.coeffs.T))


def _pull_back(ext: ExtensionData, vectors: np.ndarray) -> np.ndarray:
    """Express columns lying in the image of the inclusion in fiber coordinates."""
    try:
        return np.stack([solve(ext.inclusion, vectors[:, j]) for j in range(vectors.shape[1])], axis=1)
    except InconsistentSystemError:
        raise SectionMismatchError("value does not lie in the kernel of the projection") from None


def cocycle_from_section(ext: ExtensionData, sec: Section) -> CochainPair:
    n, m = ext.base.dim, ext.fiber.dim
    s = rat_array(sec.matrix)
    if not is_zero(ext.projection.dot(s) - identity(n)):
        raise ValueError("not a section: projection after section is not the identity")
    c, i = ext.total.mult, ext.inclusion
    # induced actions must reproduce the fiber
    left = np.einsum("pa,qu,pqk->auk", s, i, c)  # s(e_a) . i(f_u), in E
    right = np.einsum("qu,pa,qpk->uak", i, s, c)
    left_m = _pull_back(ext, left.reshape(-1, left.shape[-1]).T).T.reshape(n, m, m)
    right_m = _pull_back(ext, right.reshape(-1, right.shape[-1]).T).T.reshape(m, n, m)
    if not (is_zero(left_m - ext.fiber.left) and is_zero(right_m - ext.fiber.right)):
        raise SectionMismatchError("section induces different bimodule actions than the fiber")
    prod = np.einsum("pa,qb,pqk->abk", s, s, c) - np.einsum("abx,kx->abk", ext.base.mult, s)
    chi = _pull_back(ext, prod.reshape(-1, prod.shape[-1]).T).T.reshape(n, n, m)
    phi_e = ext.total.r.dot(s) - s.dot(ext.base.r)  # column a is U s(e_a) - s R(e_a)
    phi = _pull_back(ext, phi_e).T
    pair = CochainPair(Cochain(2, n, chi), Cochain(1, n, phi))
    if not mrba_coboundary(ext.base, ext.fiber, pair).is_zero():
        raise ArithmeticError("cocycle extracted from a section is not closed")
    return pair


def iso_from_cohomologous(
    base: MRBStructure, fiber: BimoduleRep, c: CochainPair, c2: CochainPair, theta: Cochain
) -> np.ndarray:
    """``(a, u) -> (a, u - theta(a))`` from the extension of ``c2`` to that of ``c``.

    Requires ``c - c2 = D(theta, 0)``.  The map is checked to be a morphism
    of modified Rota-Baxter algebras commuting with inclusions and projections.
    """
    n, m = base.dim, fiber.dim
    zero_u = Cochain.zero(0, n, m)
    if not (c - c2 == mrba_coboundary(base, fiber, CochainPair(theta, zero_u))):
        raise NotCohomologousError("not cohomologous via theta")
    e1 = extension_from_cocycle(base, fiber, c2)
    e2 = extension_from_cocycle(base, fiber, c)
    phi = identity(n + m)
    phi[n:, :n] = -theta.coeffs.T
    if not check_morphism(e1.total, e2.total, phi):
        raise ArithmeticError("the block map is not a morphism")
    if not (is_zero(phi.dot(e1.inclusion) - e2.inclusion) and is_zero(e2.projection.dot(phi) - e1.projection)):
        raise ArithmeticError("the block map does not commute with the exact sequences")
    return phi


def classify_roundtrip(base: MRBStructure, fiber: BimoduleRep, c: CochainPair, seed: int = 0) -> bool:
    """Build, extract with the canonical section, then with a randomly shifted one.

    True when the first extraction returns ``c`` and the second differs from
    it by exactly ``D(theta, 0)``, which is checked to lie in the coboundaries.
    """
    if validate_bimodule(base, fiber):
        raise InvalidStructureError("fiber is not a bimodule over the base")
    ext = extension_from_cocycle(base, fiber, c)
    if validate_extension(ext):
        return False
    sec = canonical_section(ext)
    if cocycle_from_section(ext, sec) != c:
        return False
    rng = random.Random(seed)
    n, m = base.dim, fiber.dim
    theta = Cochain(1, n, rat_array([[rng.randint(-3, 3) for _ in range(m)] for _ in range(n)]))
    shifted = cocycle_from_section(ext, shifted_section(ext, sec, theta))
    diff = shifted - c
    if diff != mrba_coboundary(base, fiber, CochainPair(theta, Cochain.zero(0, n, m))):
        return False
    bmat = mrba_matrix(base, fiber, 1)
    vec = diff.to_vector().reshape(-1, 1)
    return rank(np.concatenate([bmat, vec], axis=1)) == rank(bmat)
