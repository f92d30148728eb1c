"""Closed-form structure of ``A * B`` for finite-dimensional tracial algebras.

For matrix summands ``M_{n_i}^{alpha_i}`` of ``A`` and ``M_{m_j}^{beta_j}``
of ``B`` put ``s_ij = alpha_i/n_i^2 + beta_j/m_j^2``.  Pairs with
``s_ij > 1`` (L+) split off a direct summand ``M_N`` with ``N = max(n_i, m_j)``
and weight ``N^2 (s_ij - 1)``; pairs with ``s_ij == 1`` (L0) give unital
homomorphisms of the remaining part onto ``M_N``.  The remaining part is
simple with a unique trace when L0 is empty; otherwise the joint kernel of
those homomorphisms is simple, nonunital, with a unique trace.

All comparisons are exact.
"""

from __future__ import annotations

from fractions import Fraction

from ..algebra import TracialAlgebra, ext_dim
from ..errors import DimensionHypothesisViolated
from .types import (
    LEFT,
    RIGHT,
    AtomBlock,
    BoundaryMap,
    Decomposition,
    FactorPart,
    FullnessClaim,
    KernelReport,
    PairClass,
    VnDecomposition,
)

__all__ = ["classify_pairs", "decompose", "vn_decompose", "check_hypotheses", "pair_score"]

WITNESS_NOTE = (
    "diffuse witnesses are listed for every summand projection; the general statement "
    "names only the first projection on each side"
)


def pair_score(A: TracialAlgebra, B: TracialAlgebra, i: int, j: int) -> Fraction:
    a, b = A[i], B[j]
    return a.weight / (a.n * a.n) + b.weight / (b.n * b.n)


def classify_pairs(A: TracialAlgebra, B: TracialAlgebra) -> tuple[list[AtomBlock], list[AtomBlock]]:
    """Return ``(L+, L0)`` as atom blocks in ``(i, j)`` order.

    Only matrix summands take part; diffuse summands never pair.
    """
    plus, zero = [], []
    for i in A.matrix_indices():
        for j in B.matrix_indices():
            s = pair_score(A, B, i, j)
            if s < 1:
                continue
            N = max(A[i].n, B[j].n)
            if s > 1:
                plus.append(AtomBlock(i, j, N, N * N * (s - 1), PairClass.PLUS))
            else:
                zero.append(AtomBlock(i, j, N, Fraction(0), PairClass.ZERO))
    return plus, zero


def check_hypotheses(A: TracialAlgebra, B: TracialAlgebra) -> str | None:
    """Check the dimension hypotheses.

    Returns ``"left"`` or ``"right"`` when that side is one-dimensional (the
    degenerate free product with ``C``), ``None`` when the hypotheses hold.
    Raises :class:`DimensionHypothesisViolated` for ``(C (+) C) * (C (+) C)``.
    """
    da, db = ext_dim(A), ext_dim(B)
    if not da.at_least(2):
        return LEFT
    if not db.at_least(2):
        return RIGHT
    if not (da + db).at_least(5):
        raise DimensionHypothesisViolated(
            f"dim(A) + dim(B) >= 5 fails (dim(A) = {da}, dim(B) = {db}); "
            "two projections in free position are described by two_projection_structure"
        )
    return None


def _degenerate(A: TracialAlgebra, B: TracialAlgebra, trivial_side: str) -> Decomposition:
    other, side = (B, RIGHT) if trivial_side == LEFT else (A, LEFT)
    if other.diffuse_index() is not None:
        simple = unique = None
    else:
        simple = unique = len(other) == 1
    wit = ((side, other.diffuse_index()),) if other.diffuse_index() is not None else ()
    return Decomposition(
        factor=FactorPart(Fraction(1), True, simple, unique, wit),
        plus_blocks=(),
        boundary_maps=(),
        kernel=None,
        fullness=(),
        passthrough=other,
        case="degenerate",
        notes=(f"the {trivial_side} algebra is C, so the free product is the {side} algebra itself; "
               "this lies outside the dimension hypotheses",),
    )


def assemble(A: TracialAlgebra, B: TracialAlgebra, plus, zero, gamma: Fraction,
             case: str | None = None, notes=()) -> Decomposition:
    """Build a :class:`Decomposition` from the L+ blocks, the L0 pairs and the factor weight.

    The verdicts follow from L0 alone.  Raises ``AssertionError`` when the
    weights are not conserved, which would indicate an engine bug.
    """
    plus = tuple(sorted(plus))
    zero = tuple(sorted(zero))
    total = gamma + sum((b.gamma for b in plus), Fraction(0))
    assert total == 1, f"weights sum to {total}"
    assert gamma > 0, f"factor weight {gamma} is not positive"
    assert all(b.gamma > 0 for b in plus)
    witnesses = tuple([(LEFT, i) for i in range(1, len(A) + 1)]
                      + [(RIGHT, j) for j in range(1, len(B) + 1)])
    empty = not zero
    fullness = []
    for i in A.matrix_indices():
        fullness.append(FullnessClaim(LEFT, i, tuple((b.i, b.j) for b in zero if b.i != i)))
    for j in B.matrix_indices():
        fullness.append(FullnessClaim(RIGHT, j, tuple((b.i, b.j) for b in zero if b.j != j)))
    return Decomposition(
        factor=FactorPart(gamma, True, empty, empty, tuple(sorted(witnesses))),
        plus_blocks=plus,
        boundary_maps=zero,
        kernel=None if empty else KernelReport(simple=True, unital=False, unique_trace=True),
        fullness=tuple(sorted(fullness)),
        case=case,
        notes=tuple(notes) + (WITNESS_NOTE,),
    )


def decompose(A: TracialAlgebra, B: TracialAlgebra) -> Decomposition:
    """Structure of the reduced free product ``(A, tau_A) * (B, tau_B)`` by the closed form.

    >>> from freeprod.algebra import Matrix, mk_algebra
    >>> A = mk_algebra([Matrix(1, "9/10"), Matrix(1, "1/10")])
    >>> d = decompose(A, mk_algebra([Matrix(2, 1)]))
    >>> d.gamma, [(b.i, b.j, b.N, b.gamma) for b in d.plus_blocks]
    (Fraction(2, 5), [(1, 1, 2, Fraction(3, 5))])
    """
    trivial = check_hypotheses(A, B)
    if trivial is not None:
        return _degenerate(A, B, trivial)
    plus, zero = classify_pairs(A, B)
    gamma = 1 - sum((b.gamma for b in plus), Fraction(0))
    maps = [BoundaryMap(b.i, b.j, b.N) for b in zero]
    return assemble(A, B, plus, maps, gamma, case="closed form")


def vn_decompose(A: TracialAlgebra, B: TracialAlgebra) -> VnDecomposition:
    """von Neumann free product: same L+ blocks, factor part tagged ``L(F_t)``.

    The parameter ``t`` is not computed.
    """
    trivial = check_hypotheses(A, B)
    if trivial is not None:
        other = B if trivial == LEFT else A
        return VnDecomposition(Fraction(1), (), passthrough=other)
    plus, _ = classify_pairs(A, B)
    gamma = 1 - sum((b.gamma for b in plus), Fraction(0))
    return VnDecomposition(gamma, tuple(plus))
