"""Two free projections ``p, q`` with traces ``alpha >= beta >= 1/2``."""

from __future__ import annotations

from fractions import Fraction

from ..errors import DomainError
from ..exact import as_fraction
from .types import TwoProjectionCase, TwoProjectionStructure

__all__ = ["two_projection_structure", "normalize_pair"]


def two_projection_structure(alpha, beta) -> TwoProjectionStructure:
    """Atoms and support of ``C*(p, q)`` for ``1 > alpha >= beta >= 1/2``.

    ``p ∧ (1-q)`` carries ``alpha - beta`` and ``p ∧ q`` carries
    ``alpha + beta - 1``.  The continuous part lives over
    ``[a, b]`` with ``a, b = c -+ 2 sqrt(alpha beta (1-alpha)(1-beta))`` and
    ``c = alpha + beta - 2 alpha beta``, the support of the spectral
    measure of ``pqp`` off its atoms.
    """
    a, b = as_fraction(alpha), as_fraction(beta)
    if not (1 > a >= b >= Fraction(1, 2)):
        raise DomainError(f"need 1 > alpha >= beta >= 1/2, got alpha={a}, beta={b}; "
                          "replace projections by complements to reach this range (see normalize_pair)")
    if a > b:
        case = TwoProjectionCase.DISTINCT
    elif a > Fraction(1, 2):
        case = TwoProjectionCase.EQUAL_ABOVE_HALF
    else:
        case = TwoProjectionCase.HALF
    return TwoProjectionStructure(
        alpha=a,
        beta=b,
        case=case,
        atom_p_not_q=a - b,
        atom_p_and_q=max(Fraction(0), a + b - 1),
        support_center=a + b - 2 * a * b,
        support_radius_sq=4 * a * b * (1 - a) * (1 - b),
    )


def normalize_pair(alpha, beta) -> tuple[Fraction, Fraction, bool, bool, bool]:
    """Map ``(alpha, beta)`` in ``(0, 1)^2`` into the cone ``alpha >= beta >= 1/2``.

    Returns ``(alpha', beta', complement_p, complement_q, swapped)``: each
    projection is replaced by its complement when its trace is below 1/2,
    then the two are swapped if needed.
    """
    a, b = as_fraction(alpha), as_fraction(beta)
    if not (0 < a < 1 and 0 < b < 1):
        raise DomainError(f"traces must lie strictly between 0 and 1, got {a}, {b}")
    cp, cq = a < Fraction(1, 2), b < Fraction(1, 2)
    if cp:
        a = 1 - a
    if cq:
        b = 1 - b
    swapped = b > a
    if swapped:
        a, b = b, a
    return a, b, cp, cq, swapped
