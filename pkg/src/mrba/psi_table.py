"""Resolved even-term coefficients of the cochain map ``Psi^k`` (corrected convention).

In degree k the corrected map reads

    Psi^k(f)(a_1..a_k) = f(R a_1, ..., R a_k)
        - sum_{|I| = r odd}  (-kappa)^((r-1)/2) S f(a_I plain, R elsewhere)
        + sum_{|I| = r even} d_r              f(a_I plain, R elsewhere)

and ``d_r = c_r * (-kappa)^(r/2)``.  The multipliers ``c_r`` below were
obtained by solving the cochain-map identity ``dt Psi^k = Psi^{k+1} d``
for unknown ``d_r`` on randomized instances at several weights
(``mrba.psi_oracle``) and cross-checked against ``Psi^k = 2^k Phi^k`` on
lifted Rota-Baxter algebras.  Degrees absent from the table are refused.
"""

from __future__ import annotations

from fractions import Fraction

TABLE_VERSION = 1

# degree -> {even r -> c_r}
EVEN_MULTIPLIERS: dict[int, dict[int, int]] = {
    0: {},
    1: {},
    2: {2: 1},
    3: {2: 1},
    4: {2: 1, 4: 1},
    5: {2: 1, 4: 1},
    6: {2: 1, 4: 1, 6: 1},
}

MAX_PINNED_DEGREE = max(EVEN_MULTIPLIERS)


class UnresolvedCoefficientError(LookupError):
    """The corrected ``Psi`` has not been pinned in the requested degree."""


def even_coefficient(degree: int, r: int, kappa) -> Fraction:
    try:
        mult = EVEN_MULTIPLIERS[degree][r]
    except KeyError:
        raise UnresolvedCoefficientError(
            f"corrected Psi coefficient d_{r} in degree {degree} is not pinned "
            f"(table version {TABLE_VERSION} covers degrees <= {MAX_PINNED_DEGREE})"
        ) from None
    return mult * (-Fraction(kappa)) ** (r // 2)


def require_pinned(degree: int) -> None:
    if degree not in EVEN_MULTIPLIERS:
        raise UnresolvedCoefficientError(
            f"corrected Psi is not pinned in degree {degree} "
            f"(table version {TABLE_VERSION} covers degrees <= {MAX_PINNED_DEGREE})"
        )
