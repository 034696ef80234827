"""Multilinear cochains and the coboundary-type operators acting on them.

A degree-k cochain ``f: A^k -> M`` is stored as an array of shape
``(n,) * k + (m,)``; entry ``[i1, ..., ik, v]`` is the coefficient of
``f_v`` in ``f(e_i1, ..., e_ik)``.  C-order flattening therefore lists the
basis of ``C^k`` lexicographically by ``(i1, ..., ik, v)``.

Internally every operator works on *batches*: arrays with one extra
trailing axis.  Feeding an identity matrix through an operator yields its
matrix in one pass, which is how the cohomology module assembles
coboundary matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from mrba.linalg import identity, rat_array, zeros

__all__ = [
    "Cochain",
    "CochainPair",
    "slot_apply",
    "value_apply",
    "left_term",
    "right_term",
    "contract_term",
    "hochschild_batch",
    "operator_expansion",
    "basis_batch",
    "batch_matrix",
]


@dataclass(frozen=True, eq=False)
class Cochain:
    degree: int
    source_dim: int
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = rat_array(self.coeffs)
        if self.degree < 0:
            raise ValueError("negative degree")
        if coeffs.ndim != self.degree + 1 or any(d != self.source_dim for d in coeffs.shape[:-1]):
            raise ValueError(
                f"coefficients of shape {coeffs.shape} do not describe a degree-{self.degree} "
                f"cochain on a {self.source_dim}-dim algebra"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def target_dim(self) -> int:
        return self.coeffs.shape[-1]

    @classmethod
    def zero(cls, degree: int, n: int, m: int) -> "Cochain":
        return cls(degree, n, zeros((n,) * degree + (m,)))

    @classmethod
    def from_vector(cls, v, degree: int, n: int, m: int) -> "Cochain":
        return cls(degree, n, np.asarray(v, dtype=object).reshape((n,) * degree + (m,)))

    def to_vector(self) -> np.ndarray:
        return self.coeffs.reshape(-1)

    def __call__(self, *idx: int) -> np.ndarray:
        """Value on basis vectors, as a coordinate vector in M."""
        return self.coeffs[idx]

    def __add__(self, other: "Cochain") -> "Cochain":
        return Cochain(self.degree, self.source_dim, self.coeffs + other.coeffs)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return Cochain(self.degree, self.source_dim, self.coeffs - other.coeffs)

    def __neg__(self) -> "Cochain":
        return Cochain(self.degree, self.source_dim, -self.coeffs)

    def __rmul__(self, scalar) -> "Cochain":
        return Cochain(self.degree, self.source_dim, scalar * self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cochain)
            and self.degree == other.degree
            and self.coeffs.shape == other.coeffs.shape
            and all(x == y for x, y in zip(self.coeffs.flat, other.coeffs.flat))
        )

    __hash__ = None

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coeffs.flat)

    def support(self) -> Iterator[tuple[tuple[int, ...], object]]:
        for idx in np.ndindex(self.coeffs.shape):
            x = self.coeffs[idx]
            if x != 0:
                yield idx, x


@dataclass(frozen=True, eq=False)
class CochainPair:
    """An element ``(chi, Phi)`` of ``C^k(A, M) + C^{k-1}(A_R, ~M)``.

    In degree 0 the element is a single vector ``u`` of M, stored as a
    degree-0 ``chi`` with ``phi`` set to ``None``.
    """

    chi: Cochain
    phi: Cochain | None = None

    def __post_init__(self):
        if self.chi.degree == 0:
            if self.phi is not None:
                raise ValueError("degree-0 elements carry no second component")
        else:
            if self.phi is None or self.phi.degree != self.chi.degree - 1:
                raise ValueError("second component must have degree one less than the first")
            if self.phi.target_dim != self.chi.target_dim or self.phi.source_dim != self.chi.source_dim:
                raise ValueError("components live over different spaces")

    @property
    def degree(self) -> int:
        return self.chi.degree

    @property
    def source_dim(self) -> int:
        return self.chi.source_dim

    @property
    def target_dim(self) -> int:
        return self.chi.target_dim

    @classmethod
    def zero(cls, degree: int, n: int, m: int) -> "CochainPair":
        if degree == 0:
            return cls(Cochain.zero(0, n, m))
        return cls(Cochain.zero(degree, n, m), Cochain.zero(degree - 1, n, m))

    @classmethod
    def from_vector(cls, v, degree: int, n: int, m: int) -> "CochainPair":
        v = np.asarray(v, dtype=object).reshape(-1)
        if degree == 0:
            return cls(Cochain.from_vector(v, 0, n, m))
        split = n**degree * m
        return cls(
            Cochain.from_vector(v[:split], degree, n, m),
            Cochain.from_vector(v[split:], degree - 1, n, m),
        )

    def to_vector(self) -> np.ndarray:
        if self.phi is None:
            return self.chi.to_vector()
        return np.concatenate([self.chi.to_vector(), self.phi.to_vector()])

    def _combine(self, other: "CochainPair", op) -> "CochainPair":
        if self.phi is None:
            return CochainPair(op(self.chi, other.chi))
        return CochainPair(op(self.chi, other.chi), op(self.phi, other.phi))

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __neg__(self):
        return CochainPair(-self.chi, None if self.phi is None else -self.phi)

    def __rmul__(self, scalar):
        return CochainPair(scalar * self.chi, None if self.phi is None else scalar * self.phi)

    def __eq__(self, other) -> bool:
        return isinstance(other, CochainPair) and self.chi == other.chi and self.phi == other.phi

    __hash__ = None

    def is_zero(self) -> bool:
        return self.chi.is_zero() and (self.phi is None or self.phi.is_zero())


# -- batch primitives --------------------------------------------------------
# X has shape (n,)*k + (m, B); k is the number of argument slots.

def slot_apply(x: np.ndarray, mat: np.ndarray, j: int) -> np.ndarray:
    """Precompose argument slot ``j`` with the linear map ``mat`` (columns = images)."""
    return np.moveaxis(np.tensordot(x, mat, axes=([j], [0])), -1, j)


def value_apply(x: np.ndarray, mat: np.ndarray, k: int) -> np.ndarray:
    """Postcompose with the linear map ``mat`` on M."""
    return np.moveaxis(np.tensordot(mat, x, axes=([1], [k])), 0, k)


def left_term(left: np.ndarray, x: np.ndarray, k: int) -> np.ndarray:
    """``a_1 . f(a_2, ..., a_{k+1})`` as a batch with k+1 slots."""
    return np.moveaxis(np.tensordot(left, x, axes=([1], [k])), 1, k + 1)


def right_term(right: np.ndarray, x: np.ndarray, k: int) -> np.ndarray:
    """``f(a_1, ..., a_k) . a_{k+1}`` as a batch with k+1 slots."""
    return np.moveaxis(np.tensordot(x, right, axes=([k], [0])), k, -1)


def contract_term(mult: np.ndarray, x: np.ndarray, i: int) -> np.ndarray:
    """``f(a_1, ..., a_i a_{i+1}, ..., a_{k+1})`` with the product in 0-based slot ``i``."""
    return np.moveaxis(np.tensordot(mult, x, axes=([2], [i])), [0, 1], [i, i + 1])


def hochschild_batch(mult, left, right, x: np.ndarray, k: int) -> np.ndarray:
    """Hochschild coboundary with the sign convention

    ``(df)(a_1..a_{k+1}) = (-1)^{k+1} a_1 f(a_2..) + f(..a_k) a_{k+1}
    + sum_i (-1)^{i+k+1} f(.., a_i a_{i+1}, ..)``.
    """
    out = (-1) ** (k + 1) * left_term(left, x, k) + right_term(right, x, k)
    for i in range(1, k + 1):
        out = out + (-1) ** (i + k + 1) * contract_term(mult, x, i - 1)
    return out


def operator_expansion(x: np.ndarray, op: np.ndarray, k: int) -> list[np.ndarray]:
    """``G[r]`` = sum over r-element slot sets I of f with ``op`` in every slot *outside* I.

    ``G[0]`` is ``f(op a_1, ..., op a_k)`` and ``G[k]`` is ``f`` itself.
    """
    g = [x]
    for j in range(k):
        nxt = []
        for r in range(len(g) + 1):
            acc = None
            if r < len(g):
                acc = slot_apply(g[r], op, j)
            if r >= 1:
                acc = g[r - 1] if acc is None else acc + g[r - 1]
            nxt.append(acc)
        g = nxt
    return g


def basis_batch(k: int, n: int, m: int) -> np.ndarray:
    """All basis cochains of ``C^k`` stacked along the batch axis."""
    size = n**k * m
    return identity(size).reshape((n,) * k + (m, size))


def batch_matrix(x: np.ndarray) -> np.ndarray:
    """Flatten a batch into a matrix whose columns are the flattened cochains."""
    return x.reshape(-1, x.shape[-1])
