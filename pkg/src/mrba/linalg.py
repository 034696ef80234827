"""Exact linear algebra over the rationals.

Matrices are 2-D numpy arrays of dtype ``object`` holding ``int`` or
``fractions.Fraction`` entries.  Nothing here ever touches floating point.
Elimination runs on sparse row dictionaries, which keeps the coboundary
matrices of the cohomology module (mostly zeros) cheap to reduce.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "InconsistentSystemError",
    "NotASubspaceError",
    "parse_rational",
    "format_rational",
    "rat_array",
    "zeros",
    "identity",
    "rref",
    "rank",
    "kernel_basis",
    "solve",
    "column_space_basis",
    "quotient_dim",
    "reduce_modulo",
    "is_zero",
]


class InconsistentSystemError(ValueError):
    """Raised by :func:`solve` when ``m @ x = b`` has no solution."""


class NotASubspaceError(ValueError):
    """Raised when a claimed subspace is not contained in the ambient space."""


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction.

    >>> parse_rational("-3/6")
    Fraction(-1, 2)
    """
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational: {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in rational {text!r}")
    return Fraction(p, q)


def format_rational(x) -> str:
    """Inverse of :func:`parse_rational`: ``"p/q"``, or ``"p"`` when q is 1."""
    return str(Fraction(x))


def rat_array(data, shape: Sequence[int] | None = None) -> np.ndarray:
    """Object array of exact rationals; floats are rejected."""
    arr = np.array(data, dtype=object)
    if shape is not None:
        arr = arr.reshape(shape)
    for x in arr.flat:
        if isinstance(x, float) or not isinstance(x, (int, Fraction)):
            raise TypeError(f"inexact or non-numeric entry {x!r}")
    return arr


def zeros(shape) -> np.ndarray:
    arr = np.empty(shape, dtype=object)
    arr.fill(0)
    return arr


def identity(n: int) -> np.ndarray:
    arr = zeros((n, n))
    for i in range(n):
        arr[i, i] = 1
    return arr


def is_zero(arr) -> bool:
    return all(x == 0 for x in np.asarray(arr, dtype=object).flat)


def _rows(m: np.ndarray) -> list[dict[int, Fraction]]:
    m = np.asarray(m, dtype=object)
    out = []
    for row in m:
        out.append({j: Fraction(x) for j, x in enumerate(row) if x != 0})
    return out


def _eliminate(rows: list[dict[int, Fraction]], full: bool) -> tuple[list[dict[int, Fraction]], list[int]]:
    """Gauss-Jordan on sparse rows; returns the nonzero reduced rows and pivots."""
    rows = [r for r in rows if r]
    pivots: list[int] = []
    done: list[dict[int, Fraction]] = []
    while rows:
        col = min(min(r) for r in rows)
        cands = [k for k, r in enumerate(rows) if col in r]
        k = min(cands, key=lambda k: len(rows[k]))
        prow = rows.pop(k)
        inv = 1 / prow[col]
        prow = {j: v * inv for j, v in prow.items()}
        nxt = []
        for r in rows:
            f = r.get(col)
            if f is not None:
                for j, v in prow.items():
                    w = r.get(j, 0) - f * v
                    if w:
                        r[j] = w
                    else:
                        r.pop(j, None)
            if r:
                nxt.append(r)
        rows = nxt
        if full:
            for r in done:
                f = r.get(col)
                if f is not None:
                    for j, v in prow.items():
                        w = r.get(j, 0) - f * v
                        if w:
                            r[j] = w
                        else:
                            r.pop(j, None)
        done.append(prow)
        pivots.append(col)
    return done, pivots


def rref(m) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form and pivot columns.

    The returned matrix has the same shape as ``m``; zero rows sit at the
    bottom.
    """
    m = np.asarray(m, dtype=object)
    nrows, ncols = m.shape
    reduced, pivots = _eliminate(_rows(m), full=True)
    out = zeros((nrows, ncols))
    for i, r in enumerate(reduced):
        for j, v in r.items():
            out[i, j] = v
    return out, pivots


def rank(m) -> int:
    m = np.asarray(m, dtype=object)
    if m.size == 0:
        return 0
    return len(_eliminate(_rows(m), full=False)[1])


def kernel_basis(m) -> list[np.ndarray]:
    """Basis of the right null space ``{v : m @ v = 0}``, one vector per free column."""
    m = np.asarray(m, dtype=object)
    ncols = m.shape[1]
    reduced, pivots = _eliminate(_rows(m), full=True)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = zeros(ncols)
        v[free] = 1
        for r, p in zip(reduced, pivots):
            c = r.get(free)
            if c:
                v[p] = -c
        basis.append(v)
    return basis


def solve(m, b) -> np.ndarray:
    """One particular solution of ``m @ x = b`` (free variables set to zero).

    Raises :class:`InconsistentSystemError` when no solution exists and
    ``ValueError`` on shape mismatch.
    """
    m = np.asarray(m, dtype=object)
    b = np.asarray(b, dtype=object).reshape(-1)
    if m.ndim != 2 or m.shape[0] != b.shape[0]:
        raise ValueError(f"shape mismatch: matrix {m.shape}, rhs {b.shape}")
    ncols = m.shape[1]
    aug = _rows(m)
    for r, x in zip(aug, b):
        if x != 0:
            r[ncols] = Fraction(x)
    reduced, pivots = _eliminate(aug, full=True)
    if ncols in pivots:
        raise InconsistentSystemError("inconsistent system")
    x = zeros(ncols)
    for r, p in zip(reduced, pivots):
        x[p] = r.get(ncols, 0)
    return x


def column_space_basis(m) -> np.ndarray:
    """Independent columns spanning the column space (as a matrix, possibly 0 columns)."""
    m = np.asarray(m, dtype=object)
    reduced, _ = _eliminate(_rows(m.T), full=True)
    out = zeros((m.shape[0], len(reduced)))
    for j, r in enumerate(reduced):
        for i, v in r.items():
            out[i, j] = v
    return out


def _stack_cols(vectors: Iterable, length: int) -> np.ndarray:
    vecs = [np.asarray(v, dtype=object).reshape(-1) for v in vectors]
    if not vecs:
        return zeros((length, 0))
    return np.stack(vecs, axis=1)


def quotient_dim(sub, ambient) -> int:
    """``dim(col(ambient) / col(sub))``; checks that ``col(sub)`` lies in ``col(ambient)``."""
    sub = np.asarray(sub, dtype=object)
    ambient = np.asarray(ambient, dtype=object)
    if sub.shape[0] != ambient.shape[0]:
        raise ValueError(f"row counts differ: {sub.shape[0]} vs {ambient.shape[0]}")
    r_amb = rank(ambient)
    r_sub = rank(sub)
    if rank(np.concatenate([ambient, sub], axis=1)) != r_amb:
        raise NotASubspaceError("not a subspace: sub generators leave the ambient span")
    return r_amb - r_sub


def reduce_modulo(v, generators) -> np.ndarray:
    """Canonical representative of ``v`` modulo the span of ``generators`` (columns).

    Two vectors differ by an element of the span iff their reductions agree.
    """
    v = np.asarray(v, dtype=object).reshape(-1)
    gens = np.asarray(generators, dtype=object)
    reduced, pivots = _eliminate(_rows(gens.T), full=True)
    out = v.copy()
    for r, p in zip(reduced, pivots):
        c = out[p]
        if c != 0:
            for j, x in r.items():
                out[j] = out[j] - c * x
    return out
