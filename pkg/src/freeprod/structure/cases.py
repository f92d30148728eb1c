"""Dedicated engines for free products with a full matrix algebra ``(M_n, tr_n)``.

Both engines split into three cases according to the largest scalar weight
``alpha`` on the left, compared with ``1 - 1/n^2``:

* below: the free product is simple with a unique trace;
* equal: an extension of ``M_n`` by a simple nonunital ideal with unique trace;
* above: a simple unital summand of weight ``n^2 - n^2 alpha`` plus ``M_n``
  of weight ``n^2 alpha - n^2 + 1``.

In every case the projection of the largest scalar summand is full.
"""

from __future__ import annotations

from fractions import Fraction

from ..algebra import Matrix, TracialAlgebra, mk_algebra
from ..errors import HypothesisViolated, InvalidAlgebra
from ..exact import as_fraction
from .closed_form import assemble
from .types import AtomBlock, BoundaryMap, Decomposition, PairClass

__all__ = ["scalar_times_matrix", "mixed_with_matrix"]


def _three_cases(A: TracialAlgebra, B: TracialAlgebra, top: int | None, n: int,
                 engine: str) -> Decomposition:
    threshold = 1 - Fraction(1, n * n)
    notes = []
    if top is None:
        case, plus, zero, gamma = "I", [], [], Fraction(1)
    else:
        alpha = A[top].weight
        notes.append(f"p_{top} is a full projection in the free product")
        if alpha < threshold:
            case, plus, zero, gamma = "I", [], [], Fraction(1)
        elif alpha == threshold:
            case, plus, zero, gamma = "II", [], [BoundaryMap(top, 1, n)], Fraction(1)
        else:
            w = n * n * alpha - n * n + 1
            case = "III"
            plus = [AtomBlock(top, 1, n, w, PairClass.PLUS)]
            gamma = n * n - n * n * alpha
            zero = []
    return assemble(A, B, plus, zero, gamma, case=f"{engine} ({case})", notes=notes)


def _check_n(n):
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise HypothesisViolated(f"matrix size n >= 2 required, got {n!r}")


def scalar_times_matrix(weights, n: int) -> Decomposition:
    """``(C^{alpha_1} (+) ... (+) C^{alpha_m}) * (M_n, tr_n)`` with ``alpha_1 <= ... <= alpha_m``.

    Summand ``i`` of the result is the ``i``-th weight; the right side is index 1.
    """
    _check_n(n)
    try:
        ws = [as_fraction(w) for w in weights]
    except (TypeError, ValueError) as exc:
        raise HypothesisViolated(str(exc)) from exc
    if len(ws) < 2:
        raise HypothesisViolated("at least two scalar summands are required")
    if any(b < a for a, b in zip(ws, ws[1:])):
        raise HypothesisViolated("weights must be sorted ascending")
    try:
        A = mk_algebra([Matrix(1, w) for w in ws])
    except InvalidAlgebra as exc:
        raise HypothesisViolated(str(exc)) from exc
    B = mk_algebra([Matrix(n, 1)])
    return _three_cases(A, B, len(ws), n, "scalars * matrix")


def mixed_with_matrix(M_left: TracialAlgebra, n: int) -> Decomposition:
    """``M_left * (M_n, tr_n)`` where ``M_left`` has a diffuse summand or a matrix summand of size >= 2.

    The scalar (size 1) summands of ``M_left`` must appear in ascending weight
    order; other summands may sit anywhere.
    """
    _check_n(n)
    if M_left.diffuse_index() is None and not any(s.n >= 2 for s in M_left if s.is_matrix):
        raise HypothesisViolated(
            "the left algebra needs a diffuse summand or a matrix summand of size >= 2; "
            "use scalar_times_matrix for purely scalar algebras"
        )
    scalars = [i for i, s in enumerate(M_left.summands, 1) if s.n == 1]
    ws = [M_left[i].weight for i in scalars]
    if any(b < a for a, b in zip(ws, ws[1:])):
        raise HypothesisViolated("scalar summands must be sorted ascending by weight")
    B = mk_algebra([Matrix(n, 1)])
    return _three_cases(M_left, B, scalars[-1] if scalars else None, n, "mixed * matrix")
