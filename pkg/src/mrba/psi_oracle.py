"""Solve for the even-term coefficients of the corrected ``Psi``.

The ansatz is the corrected form of :mod:`mrba.psi_table` with unknown
rationals ``d_r`` for every even ``r``.  Requiring ``dt Psi^k = Psi^{k+1} d``
on random cochains over several valid instances of one weight gives a
linear system for the degree-(k+1) unknowns once degree k is known.
Degree 1 has no even terms, so the recursion starts there.

Run ``python -m mrba.psi_oracle`` to regenerate the multipliers stored in
:mod:`mrba.psi_table`.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

import numpy as np

from mrba.algebra import (
    AlgebraRep,
    BimoduleRep,
    MRBStructure,
    adjoint_bimodule,
    endo_bimodule,
    from_rota_baxter,
    semidirect_product,
    validate_bimodule,
    validate_mrb,
)
from mrba.cochains import hochschild_batch, operator_expansion, value_apply
from mrba.cohomology import _psi_batch, _twisted_batch
from mrba.instances import (
    d2_structure,
    gaussian_structure,
    k1_structure,
    rb_dual_projection,
    t2_rb,
    t2_structure,
    t2_weight_zero,
)
from mrba.linalg import InconsistentSystemError, identity, rank, rat_array, solve, zeros

Instance = tuple[MRBStructure, BimoduleRep]


class UnderdeterminedError(ValueError):
    pass


def conjugate(s: MRBStructure, g: np.ndarray) -> MRBStructure:
    """Transport ``s`` along the change of basis whose columns are ``g``."""
    ginv = _inverse(g)
    c = np.einsum("pi,qj,pqr,kr->ijk", g, g, s.mult, ginv)
    r = ginv.dot(s.r).dot(g)
    return MRBStructure(AlgebraRep(c, s.algebra.labels), r, s.weight)


def _inverse(g: np.ndarray) -> np.ndarray:
    n = g.shape[0]
    cols = [solve(g, identity(n)[:, j]) for j in range(n)]
    return np.stack(cols, axis=1)


def random_invertible(n: int, rng: random.Random) -> np.ndarray:
    while True:
        g = rat_array([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]) if n else zeros((0, 0))
        if rank(g) == n:
            return g


def random_batch(k: int, n: int, m: int, count: int, rng: random.Random) -> np.ndarray:
    size = n**k * m * count
    return rat_array([rng.randint(-3, 3) for _ in range(size)]).reshape((n,) * k + (m, count))


def default_instances(rng: random.Random) -> dict[Fraction, list[Instance]]:
    """Randomly conjugated instances grouped by weight."""

    def adj(s):
        s = conjugate(s, random_invertible(s.dim, rng))
        return s, adjoint_bimodule(s)

    d2 = d2_structure()
    d2_semi = semidirect_product(d2, adjoint_bimodule(d2))
    groups = {
        Fraction(-1): [
            adj(d2),
            adj(t2_structure()),
            adj(d2_semi),
            (d2, endo_bimodule(adjoint_bimodule(d2))),
            (k1_structure(), adjoint_bimodule(k1_structure())),
        ],
        Fraction(-4): [adj(from_rota_baxter(t2_rb(2))), adj(from_rota_baxter(rb_dual_projection(2)))],
        Fraction(-9): [adj(from_rota_baxter(t2_rb(3)))],
        Fraction(0): [adj(t2_weight_zero())],
        Fraction(1): [adj(gaussian_structure())],
    }
    for insts in groups.values():
        for s, mod in insts:
            assert not validate_mrb(s) and not validate_bimodule(s, mod)
    return groups


def solve_even(
    instances: Sequence[Instance],
    degree: int,
    lower: dict[int, Fraction],
    rng: random.Random,
    samples: int = 4,
) -> dict[int, Fraction]:
    """Even coefficients of ``Psi^degree`` given those of ``Psi^{degree-1}``."""
    k = degree - 1
    unknowns = list(range(2, degree + 1, 2))
    if not unknowns:
        return {}
    if not instances:
        raise UnderdeterminedError(f"degree {degree}: no instances supplied")
    cols: list[list[np.ndarray]] = [[] for _ in unknowns]
    rhs: list[np.ndarray] = []
    for s, mod in instances:
        kappa = s.weight
        x = random_batch(k, s.dim, mod.dim, samples, rng)
        lhs = _twisted_batch(s, mod, _psi_batch(s, mod, x, k, "corrected", even=lower), k)
        dx = hochschild_batch(s.mult, mod.left, mod.right, x, k)
        g = operator_expansion(dx, s.r, degree)
        known = g[0]
        for r in range(1, degree + 1, 2):
            known = known - (-kappa) ** ((r - 1) // 2) * value_apply(g[r], mod.s, degree)
        rhs.append((lhs - known).reshape(-1))
        for col, r in zip(cols, unknowns):
            col.append(g[r].reshape(-1))
    mat = np.stack([np.concatenate(c) for c in cols], axis=1)
    b = np.concatenate(rhs)
    if rank(mat) < len(unknowns):
        raise UnderdeterminedError(f"degree {degree}: instances do not pin every even coefficient")
    try:
        sol = solve(mat, b)
    except InconsistentSystemError:
        raise InconsistentSystemError(f"degree {degree}: the ansatz admits no solution") from None
    return {r: Fraction(v) for r, v in zip(unknowns, sol)}


def resolve(max_degree: int = 6, seed: int = 0, samples: int = 4) -> dict[int, dict[int, Fraction]]:
    """Multipliers ``c_r`` with ``d_r = c_r (-kappa)^(r/2)``, checked across weights."""
    rng = random.Random(seed)
    groups = default_instances(rng)
    per_weight: dict[Fraction, dict[int, dict[int, Fraction]]] = {}
    for kappa, insts in groups.items():
        table = {1: {}}
        for degree in range(2, max_degree + 1):
            # large semidirect products get expensive in high degree
            usable = [(s, m) for s, m in insts if s.dim ** degree * m.dim <= 20000] or insts[:1]
            table[degree] = solve_even(usable, degree, table[degree - 1], rng, samples)
        per_weight[kappa] = table

    result: dict[int, dict[int, Fraction]] = {}
    for degree in range(1, max_degree + 1):
        result[degree] = {}
        for r in range(2, degree + 1, 2):
            seen = set()
            for kappa, table in per_weight.items():
                d = table[degree][r]
                scale = (-kappa) ** (r // 2)
                if scale == 0:
                    if d != 0:
                        raise ArithmeticError(f"degree {degree}, r={r}: nonzero d_r at weight 0")
                    continue
                seen.add(d / scale)
            if len(seen) != 1:
                raise ArithmeticError(f"degree {degree}, r={r}: multiplier depends on the weight: {seen}")
            result[degree][r] = seen.pop()
    return result


def main() -> None:
    for degree, coeffs in resolve().items():
        body = ", ".join(f"{r}: {c}" for r, c in coeffs.items())
        print(f"{degree}: {{{body}}}")


if __name__ == "__main__":
    main()
