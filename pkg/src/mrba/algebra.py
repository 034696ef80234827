"""Finite-dimensional associative algebras, (modified) Rota-Baxter operators
and their bimodules, all given by exact structure constants.

Conventions
-----------
* ``mult[i, j, k]`` is the coefficient of ``e_k`` in ``e_i * e_j``.
* Operators act on coordinate columns: ``r[:, i]`` holds ``R(e_i)``.
* A bimodule with basis ``f_0 .. f_{m-1}`` stores ``left[i, u, v]``
  (coefficient of ``f_v`` in ``e_i . f_u``) and ``right[u, i, v]``
  (coefficient of ``f_v`` in ``f_u . e_i``); ``s`` is its operator.

Over a Rota-Baxter algebra the operator slot of a :class:`BimoduleRep`
carries ``Q`` instead of ``S``.

Validators return exhaustive lists of :class:`Violation`; an empty list
means the structure is valid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from mrba.linalg import identity, is_zero, rank, rat_array, zeros

__all__ = [
    "DimensionError",
    "InvalidStructureError",
    "WeightMismatchError",
    "MixedBaseError",
    "Violation",
    "AlgebraRep",
    "MRBStructure",
    "RBStructure",
    "BimoduleRep",
    "validate_algebra",
    "validate_mrb",
    "validate_rb",
    "validate_bimodule",
    "validate_rb_bimodule",
    "infer_weight",
    "from_rota_baxter",
    "lift_bimodule",
    "adjoint_bimodule",
    "zero_bimodule",
    "direct_sum",
    "endo_bimodule",
    "semidirect_product",
    "induced_algebra",
    "induced_structure",
    "induced_bimodule_ms",
    "twisted_bimodule",
    "graph_subalgebra_check",
    "check_morphism",
    "apply_operator",
    "multiply",
]


class DimensionError(ValueError):
    """Tensor shapes disagree with the declared dimensions."""


class InvalidStructureError(ValueError):
    """A construction was given data that fails its defining identities."""

    def __init__(self, message: str, violations: Sequence["Violation"] = ()):
        super().__init__(message)
        self.violations = list(violations)


class WeightMismatchError(ValueError):
    pass


class MixedBaseError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    axiom: str
    indices: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.axiom} at {self.indices}"


def _labels(prefix: str, n: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(n))


def _check_shape(name: str, arr: np.ndarray, shape: tuple[int, ...]) -> None:
    if arr.shape != shape:
        raise DimensionError(f"{name} has shape {arr.shape}, expected {shape}")


def _same(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


@dataclass(frozen=True, eq=False)
class AlgebraRep:
    mult: np.ndarray
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        mult = rat_array(self.mult)
        if mult.ndim != 3 or len(set(mult.shape)) != 1:
            raise DimensionError(f"structure constants must be n x n x n, got {mult.shape}")
        object.__setattr__(self, "mult", mult)
        labels = tuple(self.labels) or _labels("e", mult.shape[0])
        if len(labels) != mult.shape[0]:
            raise DimensionError(f"{len(labels)} basis labels for dimension {mult.shape[0]}")
        object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return self.mult.shape[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraRep) and _same(self.mult, other.mult)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class MRBStructure:
    """An algebra with operator ``r`` and weight ``kappa`` (not validated here)."""

    algebra: AlgebraRep
    r: np.ndarray
    weight: Fraction

    def __post_init__(self):
        r = rat_array(self.r)
        n = self.algebra.dim
        _check_shape("operator", r, (n, n))
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "weight", Fraction(self.weight))

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def mult(self) -> np.ndarray:
        return self.algebra.mult

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MRBStructure)
            and self.weight == other.weight
            and self.algebra == other.algebra
            and _same(self.r, other.r)
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class RBStructure:
    """An algebra with Rota-Baxter operator ``p`` of weight ``weight`` (lambda)."""

    algebra: AlgebraRep
    p: np.ndarray
    weight: Fraction

    def __post_init__(self):
        p = rat_array(self.p)
        n = self.algebra.dim
        _check_shape("Rota-Baxter operator", p, (n, n))
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "weight", Fraction(self.weight))

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def mult(self) -> np.ndarray:
        return self.algebra.mult


@dataclass(frozen=True, eq=False)
class BimoduleRep:
    left: np.ndarray
    right: np.ndarray
    s: np.ndarray
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        left = rat_array(self.left)
        right = rat_array(self.right)
        s = rat_array(self.s)
        if left.ndim != 3:
            raise DimensionError(f"left action must be n x m x m, got {left.shape}")
        n, m, _ = left.shape
        _check_shape("left action", left, (n, m, m))
        _check_shape("right action", right, (m, n, m))
        _check_shape("module operator", s, (m, m))
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "s", s)
        labels = tuple(self.labels) or _labels("f", m)
        if len(labels) != m:
            raise DimensionError(f"{len(labels)} module labels for dimension {m}")
        object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return self.s.shape[0]

    @property
    def base_dim(self) -> int:
        return self.left.shape[0]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BimoduleRep)
            and _same(self.left, other.left)
            and _same(self.right, other.right)
            and _same(self.s, other.s)
        )

    __hash__ = None


# -- small helpers on coordinates -------------------------------------------

def multiply(mult: np.ndarray, x, y) -> np.ndarray:
    return np.einsum("i,j,ijk->k", np.asarray(x, dtype=object), np.asarray(y, dtype=object), mult)


def apply_operator(r: np.ndarray, x) -> np.ndarray:
    return np.asarray(r, dtype=object).dot(np.asarray(x, dtype=object))


def _violations(axiom: str, lhs: np.ndarray, rhs: np.ndarray) -> list[Violation]:
    """Index tuples (all but the output axis) where lhs and rhs differ."""
    diff = lhs - rhs
    out = []
    for idx in np.ndindex(diff.shape[:-1]):
        if any(x != 0 for x in diff[idx]):
            out.append(Violation(axiom, tuple(int(i) for i in idx)))
    return out


# -- validators --------------------------------------------------------------

def validate_algebra(a: AlgebraRep) -> list[Violation]:
    c = a.mult
    lhs = np.einsum("ijl,lkm->ijkm", c, c)
    rhs = np.einsum("jkl,ilm->ijkm", c, c)
    return _violations("associativity", lhs, rhs)


def _mrb_defect(c: np.ndarray, r: np.ndarray, kappa) -> np.ndarray:
    """R(a)R(b) - R(R(a)b + aR(b)) - kappa ab on basis pairs, shape (n, n, n)."""
    lhs = np.einsum("pi,qj,pqk->ijk", r, r, c)
    inner = np.einsum("pi,pjl->ijl", r, c) + np.einsum("qj,iql->ijl", r, c)
    rhs = np.einsum("ijl,kl->ijk", inner, r) + kappa * c
    return lhs - rhs


def _require_algebra(a: AlgebraRep) -> None:
    bad = validate_algebra(a)
    if bad:
        raise InvalidStructureError("algebra is not associative", bad)


def validate_mrb(s: MRBStructure) -> list[Violation]:
    """Violations of the modified Rota-Baxter identity of weight ``s.weight``.

    Raises :class:`InvalidStructureError` if the underlying algebra is not
    associative.
    """
    _require_algebra(s.algebra)
    return _violations("modified Rota-Baxter identity", _mrb_defect(s.mult, s.r, s.weight), zeros((s.dim,) * 3))


def validate_rb(rb: RBStructure) -> list[Violation]:
    _require_algebra(rb.algebra)
    c, p, lam = rb.mult, rb.p, rb.weight
    lhs = np.einsum("pi,qj,pqk->ijk", p, p, c)
    inner = np.einsum("pi,pjl->ijl", p, c) + np.einsum("qj,iql->ijl", p, c) + lam * c
    rhs = np.einsum("ijl,kl->ijk", inner, p)
    return _violations("Rota-Baxter identity", lhs, rhs)


def _bimodule_axioms(c, left, right) -> list[Violation]:
    out = []
    out += _violations(
        "(ab)u = a(bu)",
        np.einsum("ijl,luv->ijuv", c, left),
        np.einsum("juw,iwv->ijuv", left, left),
    )
    out += _violations(
        "(au)b = a(ub)",
        np.einsum("iuw,wjv->iujv", left, right),
        np.einsum("ujw,iwv->iujv", right, left),
    )
    out += _violations(
        "(ua)b = u(ab)",
        np.einsum("uiw,wjv->uijv", right, right),
        np.einsum("ijl,ulv->uijv", c, right),
    )
    return out


def _check_module_dims(base_dim: int, m: BimoduleRep) -> None:
    if m.base_dim != base_dim:
        raise DimensionError(f"bimodule is over a {m.base_dim}-dim algebra, base has dim {base_dim}")


def validate_bimodule(s: MRBStructure, m: BimoduleRep) -> list[Violation]:
    """Bimodule axioms plus the two operator compatibilities over ``(A, R)``."""
    _require_algebra(s.algebra)
    _check_module_dims(s.dim, m)
    c, r, kappa = s.mult, s.r, s.weight
    left, right, sm = m.left, m.right, m.s
    out = _bimodule_axioms(c, left, right)

    # R(a).S(u) = S(R(a).u + a.S(u)) + kappa a.u
    lhs = np.einsum("pi,wu,pwv->iuv", r, sm, left)
    inner = np.einsum("pi,puw->iuw", r, left) + np.einsum("xu,ixw->iuw", sm, left)
    rhs = np.einsum("iuw,vw->iuv", inner, sm) + kappa * left
    out += _violations("R(a)S(u) compatibility", lhs, rhs)

    # S(u).R(a) = S(S(u).a + u.R(a)) + kappa u.a
    lhs = np.einsum("wu,pi,wpv->uiv", sm, r, right)
    inner = np.einsum("xu,xiw->uiw", sm, right) + np.einsum("pi,upw->uiw", r, right)
    rhs = np.einsum("uiw,vw->uiv", inner, sm) + kappa * right
    out += _violations("S(u)R(a) compatibility", lhs, rhs)
    return out


def validate_rb_bimodule(rb: RBStructure, m: BimoduleRep) -> list[Violation]:
    """Bimodule axioms over a Rota-Baxter algebra; ``m.s`` is read as ``Q``."""
    _require_algebra(rb.algebra)
    _check_module_dims(rb.dim, m)
    c, p, lam = rb.mult, rb.p, rb.weight
    left, right, q = m.left, m.right, m.s
    out = _bimodule_axioms(c, left, right)

    lhs = np.einsum("pi,wu,pwv->iuv", p, q, left)
    inner = np.einsum("pi,puw->iuw", p, left) + np.einsum("xu,ixw->iuw", q, left) + lam * left
    rhs = np.einsum("iuw,vw->iuv", inner, q)
    out += _violations("P(a)Q(u) compatibility", lhs, rhs)

    lhs = np.einsum("wu,pi,wpv->uiv", q, p, right)
    inner = np.einsum("xu,xiw->uiw", q, right) + np.einsum("pi,upw->uiw", p, right) + lam * right
    rhs = np.einsum("uiw,vw->uiv", inner, q)
    out += _violations("Q(u)P(a) compatibility", lhs, rhs)
    return out


def _require_mrb(s: MRBStructure) -> None:
    bad = validate_mrb(s)
    if bad:
        raise InvalidStructureError("operator fails the modified Rota-Baxter identity", bad)


def _require_bimodule(s: MRBStructure, m: BimoduleRep) -> None:
    bad = validate_bimodule(s, m)
    if bad:
        raise InvalidStructureError("not a bimodule over the given structure", bad)


def infer_weight(a: AlgebraRep, r) -> Fraction | None:
    """The unique weight making ``r`` a modified Rota-Baxter operator.

    Returns ``None`` when every weight works (zero multiplication) and raises
    :class:`InvalidStructureError` when none does.
    """
    r = rat_array(r)
    c = a.mult
    defect0 = _mrb_defect(c, r, 0)
    kappa = None
    for d, x in zip(defect0.flat, c.flat):
        if x != 0:
            kappa = Fraction(d) / x
            break
    if kappa is None:
        if is_zero(defect0):
            return None
        raise InvalidStructureError("no weight makes this operator modified Rota-Baxter")
    if not is_zero(defect0 - kappa * c):
        raise InvalidStructureError("no weight makes this operator modified Rota-Baxter")
    return kappa


# -- constructions -----------------------------------------------------------

def from_rota_baxter(rb: RBStructure) -> MRBStructure:
    """``(A, P)`` of weight lambda gives ``(A, lambda id + 2P)`` of weight ``-lambda^2``."""
    bad = validate_rb(rb)
    if bad:
        raise InvalidStructureError("operator fails the Rota-Baxter identity", bad)
    lam = rb.weight
    return MRBStructure(rb.algebra, lam * identity(rb.dim) + 2 * rb.p, -lam * lam)


def lift_bimodule(rb: RBStructure, m: BimoduleRep) -> BimoduleRep:
    """Turn a Rota-Baxter bimodule ``(M, Q)`` into ``(M, lambda id + 2Q)``."""
    bad = validate_rb_bimodule(rb, m)
    if bad:
        raise InvalidStructureError(f"Rota-Baxter bimodule axiom fails: {bad[0]}", bad)
    lam = rb.weight
    return BimoduleRep(m.left, m.right, lam * identity(m.dim) + 2 * m.s, m.labels)


def adjoint_bimodule(s: MRBStructure) -> BimoduleRep:
    return BimoduleRep(s.mult.copy(), s.mult.copy(), s.r.copy(), s.algebra.labels)


def zero_bimodule(base_dim: int) -> BimoduleRep:
    return BimoduleRep(zeros((base_dim, 0, 0)), zeros((0, base_dim, 0)), zeros((0, 0)))


def direct_sum(base: MRBStructure, modules: Sequence[BimoduleRep]) -> BimoduleRep:
    """Block-diagonal sum of bimodules over the same structure ``base``."""
    for k, m in enumerate(modules):
        if m.base_dim != base.dim or validate_bimodule(base, m):
            raise MixedBaseError(f"summand {k} is not a bimodule over the given base")
    n = base.dim
    total = sum(m.dim for m in modules)
    left = zeros((n, total, total))
    right = zeros((total, n, total))
    s = zeros((total, total))
    labels: list[str] = []
    off = 0
    for k, m in enumerate(modules):
        sl = slice(off, off + m.dim)
        left[:, sl, sl] = m.left
        right[sl, :, sl] = m.right
        s[sl, sl] = m.s
        labels += [f"{lab}_{k}" for lab in m.labels]
        off += m.dim
    return BimoduleRep(left, right, s, tuple(labels))


def endo_bimodule(m: BimoduleRep) -> BimoduleRep:
    """``End(M)`` with ``(a.f)(u) = f(u.a)``, ``(f.a)(u) = f(a.u)``, operator ``f -> -f o S``.

    An endomorphism ``F`` (``F[p, q]`` = coefficient of ``f_p`` in ``F(f_q)``)
    is flattened to index ``p * m + q``.
    """
    d = m.dim
    n = m.base_dim
    eye = identity(d)
    # (e_i . E_pq)[p', u] = delta(p, p') right[u, i, q]
    left = np.einsum("ab,uiq->iaqbu", eye, m.right).reshape(n, d * d, d * d)
    # (E_pq . e_i)[p', u] = delta(p, p') left[i, u, q]
    right = np.einsum("ab,iuq->aqibu", eye, m.left).reshape(d * d, n, d * d)
    # S~(E_pq)[p', u] = -delta(p, p') S[q, u]
    s = -np.einsum("ab,qu->buaq", eye, m.s).reshape(d * d, d * d)
    labels = tuple(f"{m.labels[p]}<-{m.labels[q]}" for p in range(d) for q in range(d))
    return BimoduleRep(left, right, s, labels)


def semidirect_product(s: MRBStructure, m: BimoduleRep) -> MRBStructure:
    """``(A + M, R + S)`` with ``(a, u)(b, v) = (ab, av + ub)``."""
    _check_module_dims(s.dim, m)
    n, d = s.dim, m.dim
    c = zeros((n + d, n + d, n + d))
    c[:n, :n, :n] = s.mult
    c[:n, n:, n:] = m.left
    c[n:, :n, n:] = m.right
    r = zeros((n + d, n + d))
    r[:n, :n] = s.r
    r[n:, n:] = m.s
    labels = s.algebra.labels + tuple(m.labels)
    return MRBStructure(AlgebraRep(c, labels), r, s.weight)


def induced_algebra(s: MRBStructure) -> AlgebraRep:
    """The algebra ``A_R`` with product ``R(a)b + aR(b)``."""
    c, r = s.mult, s.r
    cr = np.einsum("pi,pjk->ijk", r, c) + np.einsum("qj,iqk->ijk", r, c)
    return AlgebraRep(cr, s.algebra.labels)


def induced_structure(s: MRBStructure) -> MRBStructure:
    return MRBStructure(induced_algebra(s), s.r, s.weight)


def induced_bimodule_ms(s: MRBStructure, m: BimoduleRep) -> BimoduleRep:
    """``M_S`` over ``A_R``: ``R(a)u + aS(u)`` and ``S(u)a + uR(a)``."""
    _check_module_dims(s.dim, m)
    r, sm = s.r, m.s
    left = np.einsum("pi,puv->iuv", r, m.left) + np.einsum("wu,iwv->iuv", sm, m.left)
    right = np.einsum("wu,wiv->uiv", sm, m.right) + np.einsum("pi,upv->uiv", r, m.right)
    return BimoduleRep(left, right, sm, m.labels)


def twisted_bimodule(s: MRBStructure, m: BimoduleRep) -> BimoduleRep:
    """``~M`` over ``A_R``: ``R(a)u - S(au)`` and ``uR(a) - S(ua)``."""
    _check_module_dims(s.dim, m)
    r, sm = s.r, m.s
    left = np.einsum("pi,puv->iuv", r, m.left) - np.einsum("iuw,vw->iuv", m.left, sm)
    right = np.einsum("pi,upv->uiv", r, m.right) - np.einsum("uiw,vw->uiv", m.right, sm)
    return BimoduleRep(left, right, sm, m.labels)


def graph_subalgebra_check(a: AlgebraRep, r) -> tuple[bool, tuple[int, int] | None]:
    """Is ``{(a - R(a), -a - R(a))}`` a subalgebra of ``A x A``?

    Equivalent to ``r`` being modified Rota-Baxter of weight -1.  On failure
    the first basis pair whose product leaves the graph is returned.
    """
    _require_algebra(a)
    r = rat_array(r)
    n = a.dim
    eye = identity(n)
    first = eye - r
    second = -eye - r
    gens = np.concatenate([first, second], axis=0)  # column i spans g_i
    base_rank = rank(gens)
    for i in range(n):
        for j in range(n):
            prod = np.concatenate(
                [multiply(a.mult, first[:, i], first[:, j]), multiply(a.mult, second[:, i], second[:, j])]
            )
            if rank(np.concatenate([gens, prod.reshape(-1, 1)], axis=1)) != base_rank:
                return False, (i, j)
    return True, None


def check_morphism(src: MRBStructure, dst: MRBStructure, phi) -> bool:
    """Algebra homomorphism intertwining the operators (``dst.r phi = phi src.r``)."""
    if src.weight != dst.weight:
        raise WeightMismatchError(f"weights differ: {src.weight} vs {dst.weight}")
    phi = rat_array(phi)
    _check_shape("morphism", phi, (dst.dim, src.dim))
    lhs = np.einsum("ijk,pk->ijp", src.mult, phi)
    rhs = np.einsum("pi,qj,pqk->ijk", phi, phi, dst.mult)
    if not _same(lhs, rhs):
        return False
    return _same(dst.r.dot(phi), phi.dot(src.r))
