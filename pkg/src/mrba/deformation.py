"""Truncated one-parameter deformations ``mu_t = sum mu_i t^i``, ``R_t = sum R_i t^i``.

Everything is modulo ``t^{N+1}``.  Multiplications ``mu_i`` use the
structure-constant layout of :class:`mrba.algebra.AlgebraRep`; ``R_i`` and
``phi_i`` are matrices acting on columns.

The order-q operator equation checked here is

    sum_{i+j+k=q} mu_i(R_j a, R_k b)
        = sum_{i+j+k=q} R_i(mu_j(R_k a, b) + mu_j(a, R_k b)) + kappa mu_q(a, b)

which at ``q = 0`` is the modified Rota-Baxter identity itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from mrba.algebra import MRBStructure, adjoint_bimodule, validate_mrb, InvalidStructureError
from mrba.cochains import Cochain, CochainPair
from mrba.cohomology import hochschild_coboundary, mrba_coboundary, mrba_matrix
from mrba.linalg import InconsistentSystemError, identity, is_zero, rat_array, reduce_modulo, solve, zeros

__all__ = [
    "TruncatedDeformation",
    "TruncatedEquivalence",
    "OrderFailure",
    "DeformationReport",
    "Obstructed",
    "NotAnEquivalenceError",
    "trivial_deformation",
    "truncate",
    "check_deformation",
    "infinitesimal",
    "check_infinitesimal_cocycle",
    "truncated_inverse",
    "apply_equivalence",
    "infinitesimals_cohomologous",
    "trivialize_order_one",
]


class NotAnEquivalenceError(ValueError):
    pass


def _same(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and is_zero(a - b)


@dataclass(frozen=True, eq=False)
class TruncatedDeformation:
    mu: tuple[np.ndarray, ...]
    r: tuple[np.ndarray, ...]

    def __post_init__(self):
        mu = tuple(rat_array(x) for x in self.mu)
        r = tuple(rat_array(x) for x in self.r)
        if not mu or len(mu) != len(r):
            raise ValueError("need matching nonempty coefficient lists for mu and R")
        n = mu[0].shape[0]
        for x in mu:
            if x.shape != (n, n, n):
                raise ValueError(f"multiplication coefficient of shape {x.shape}, expected {(n, n, n)}")
        for x in r:
            if x.shape != (n, n):
                raise ValueError(f"operator coefficient of shape {x.shape}, expected {(n, n)}")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "r", r)

    @property
    def order(self) -> int:
        return len(self.mu) - 1

    @property
    def dim(self) -> int:
        return self.mu[0].shape[0]

    def matches(self, base: MRBStructure) -> bool:
        return self.dim == base.dim and _same(self.mu[0], base.mult) and _same(self.r[0], base.r)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedDeformation)
            and self.order == other.order
            and all(_same(a, b) for a, b in zip(self.mu, other.mu))
            and all(_same(a, b) for a, b in zip(self.r, other.r))
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class TruncatedEquivalence:
    phi: tuple[np.ndarray, ...]

    def __post_init__(self):
        phi = tuple(rat_array(x) for x in self.phi)
        if not phi:
            raise ValueError("empty equivalence")
        n = phi[0].shape[0]
        if not _same(phi[0], identity(n)):
            raise ValueError("phi_0 must be the identity")
        if any(x.shape != (n, n) for x in phi):
            raise ValueError("all phi_i must be square of the same size")
        object.__setattr__(self, "phi", phi)

    @property
    def order(self) -> int:
        return len(self.phi) - 1

    @classmethod
    def first_order(cls, phi1, order: int) -> "TruncatedEquivalence":
        phi1 = rat_array(phi1)
        n = phi1.shape[0]
        return cls((identity(n), phi1) + tuple(zeros((n, n)) for _ in range(order - 1)))


def trivial_deformation(base: MRBStructure, order: int) -> TruncatedDeformation:
    n = base.dim
    return TruncatedDeformation(
        (base.mult,) + tuple(zeros((n, n, n)) for _ in range(order)),
        (base.r,) + tuple(zeros((n, n)) for _ in range(order)),
    )


# -- order-by-order check ------------------------------------------------------

def _compose(outer: np.ndarray, inner: np.ndarray) -> np.ndarray:
    """``outer(inner(a, b), c)`` minus ``outer(a, inner(b, c))``."""
    left = np.einsum("abx,xcz->abcz", inner, outer)
    right = np.einsum("bcx,axz->abcz", inner, outer)
    return left - right


def _assoc_defect(mu: Sequence[np.ndarray], q: int) -> np.ndarray:
    out = _compose(mu[0], mu[q])
    for i in range(1, q + 1):
        out = out + _compose(mu[i], mu[q - i])
    return out


def _operator_defect(mu, r, q: int, kappa) -> np.ndarray:
    n = mu[0].shape[0]
    out = zeros((n, n, n))
    for i in range(q + 1):
        for j in range(q + 1 - i):
            k = q - i - j
            lhs = np.einsum("pa,qb,pqz->abz", r[j], r[k], mu[i])
            inner = np.einsum("pa,pbx->abx", r[k], mu[j]) + np.einsum("qb,aqx->abx", r[k], mu[j])
            rhs = np.einsum("abx,zx->abz", inner, r[i])
            out = out + lhs - rhs
    return out - kappa * mu[q]


@dataclass(frozen=True)
class OrderFailure:
    order: int
    family: str  # "associativity" or "operator"
    indices: tuple[int, ...]


@dataclass(frozen=True)
class DeformationReport:
    order: int
    failure: OrderFailure | None

    @property
    def valid(self) -> bool:
        return self.failure is None


def _first_nonzero(arr: np.ndarray) -> tuple[int, ...] | None:
    for idx in np.ndindex(arr.shape):
        if arr[idx] != 0:
            return idx[:-1]
    return None


def check_deformation(base: MRBStructure, d: TruncatedDeformation) -> DeformationReport:
    """Check both families of equations for ``q = 1..N``; stop at the first failure.

    Order 0 is the base structure and is validated up front.
    """
    if not d.matches(base):
        raise ValueError("order-0 coefficients do not match the base structure")
    bad = validate_mrb(base)
    if bad:
        raise InvalidStructureError(f"base structure is invalid: {bad[0]}", bad)
    for q in range(1, d.order + 1):
        idx = _first_nonzero(_assoc_defect(d.mu, q))
        if idx is not None:
            return DeformationReport(d.order, OrderFailure(q, "associativity", idx))
        idx = _first_nonzero(_operator_defect(d.mu, d.r, q, base.weight))
        if idx is not None:
            return DeformationReport(d.order, OrderFailure(q, "operator", idx))
    return DeformationReport(d.order, None)


# -- infinitesimal -------------------------------------------------------------

def infinitesimal(d: TruncatedDeformation) -> CochainPair:
    """``(mu_1, R_1)`` as a degree-2 element over the adjoint bimodule."""
    if d.order < 1:
        raise ValueError("a deformation of order 0 has no infinitesimal")
    n = d.dim
    return CochainPair(Cochain(2, n, d.mu[1]), Cochain(1, n, d.r[1].T))


def check_infinitesimal_cocycle(base: MRBStructure, d: TruncatedDeformation) -> bool:
    """The infinitesimal of an order-1-valid deformation is a 2-cocycle.

    Invalid input raises ``ValueError``; a non-cocycle raises ``ArithmeticError``.
    """
    report = check_deformation(base, truncate(d, 1))
    if not report.valid:
        raise ValueError(f"deformation fails at order 1: {report.failure}")
    image = mrba_coboundary(base, adjoint_bimodule(base), infinitesimal(d))
    if not image.is_zero():
        raise ArithmeticError("infinitesimal of a valid deformation is not a cocycle")
    return True


def truncate(d: TruncatedDeformation, order: int) -> TruncatedDeformation:
    return TruncatedDeformation(d.mu[: order + 1], d.r[: order + 1])


# -- equivalences --------------------------------------------------------------

def truncated_inverse(eq: TruncatedEquivalence) -> TruncatedEquivalence:
    """``psi_0 = I``, ``psi_q = -sum_{i=1}^{q} phi_i psi_{q-i}``."""
    psi = [eq.phi[0]]
    for q in range(1, eq.order + 1):
        acc = zeros(eq.phi[0].shape)
        for i in range(1, q + 1):
            acc = acc - eq.phi[i].dot(psi[q - i])
        psi.append(acc)
    return TruncatedEquivalence(tuple(psi))


def apply_equivalence(base: MRBStructure, d: TruncatedDeformation, eq: TruncatedEquivalence) -> TruncatedDeformation:
    """``mu'_t = phi_t mu_t (phi_t^-1 x phi_t^-1)`` and ``R'_t = phi_t R_t phi_t^-1`` mod ``t^{N+1}``."""
    if eq.order != d.order:
        raise ValueError(f"equivalence of order {eq.order} applied to a deformation of order {d.order}")
    if not d.matches(base):
        raise ValueError("order-0 coefficients do not match the base structure")
    phi, psi = eq.phi, truncated_inverse(eq).phi
    n, big = d.dim, d.order
    mu_new, r_new = [], []
    for q in range(big + 1):
        mu_q = zeros((n, n, n))
        r_q = zeros((n, n))
        for i in range(q + 1):
            for j in range(q + 1 - i):
                rest = q - i - j
                r_q = r_q + phi[i].dot(d.r[j]).dot(psi[rest])
                for k in range(rest + 1):
                    mu_q = mu_q + np.einsum("pa,qb,pqx,zx->abz", psi[k], psi[rest - k], d.mu[j], phi[i])
        mu_new.append(mu_q)
        r_new.append(r_q)
    return TruncatedDeformation(tuple(mu_new), tuple(r_new))


def _as_cochain(mat: np.ndarray) -> Cochain:
    return Cochain(1, mat.shape[0], rat_array(mat).T)


def infinitesimals_cohomologous(
    base: MRBStructure, d: TruncatedDeformation, d2: TruncatedDeformation, eq: TruncatedEquivalence
) -> bool:
    """``inf(d) - inf(d2) == D(phi_1, 0)`` once ``eq`` is checked to carry d to d2."""
    if apply_equivalence(base, d, eq) != d2:
        raise NotAnEquivalenceError("the equivalence does not carry the first deformation to the second")
    n = base.dim
    shift = mrba_coboundary(base, adjoint_bimodule(base), CochainPair(_as_cochain(eq.phi[1]), Cochain.zero(0, n, n)))
    return infinitesimal(d) - infinitesimal(d2) == shift


@dataclass(frozen=True, eq=False)
class Obstructed:
    """The infinitesimal is not a coboundary; ``representative`` is its reduced class."""

    representative: CochainPair


def trivialize_order_one(
    base: MRBStructure, d: TruncatedDeformation
) -> tuple[TruncatedEquivalence, TruncatedDeformation] | Obstructed:
    """Remove the order-1 terms of ``d`` by an equivalence ``id + t phi_1`` if possible.

    Solves ``(mu_1, R_1) = D(phi_1, u)`` and replaces ``phi_1`` by
    ``phi_1 + d u``, which has the same coboundary with zero degree-0 part.
    """
    report = check_deformation(base, truncate(d, 1))
    if not report.valid:
        raise ValueError(f"deformation fails at order 1: {report.failure}")
    adj = adjoint_bimodule(base)
    n = base.dim
    target = infinitesimal(d).to_vector()
    dmat = mrba_matrix(base, adj, 1)
    try:
        pre = solve(dmat, target)
    except InconsistentSystemError:
        gens = [dmat[:, j] for j in range(dmat.shape[1])]
        return Obstructed(CochainPair.from_vector(reduce_modulo(target, gens), 2, n, n))
    pair = CochainPair.from_vector(pre, 1, n, n)
    phi1 = pair.chi + hochschild_coboundary(base, adj, pair.phi)
    phi1_mat = phi1.coeffs.T
    eq = TruncatedEquivalence.first_order(phi1_mat, d.order)
    return eq, apply_equivalence(base, d, eq)
