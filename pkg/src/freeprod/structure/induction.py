"""Structure of ``A * B`` by peeling matrix summands one at a time.

This is an independent route to the closed form.  Let ``M_{n_k}^{alpha_k}``
be the matrix summand of size >= 2 with the largest index in ``A``.
Replacing it by a scalar summand of the same weight gives a smaller free
product ``C * B`` (solved recursively).  Compressing by ``p_k`` then gives

    p_k (A * B) p_k  ~  (p_k C p_k) * (M_{n_k}, tr)

where ``p_k C p_k`` is a diffuse part plus the matrix blocks of ``C`` sitting
under ``p_k``, all weights divided by ``alpha_k``.  The mixed-with-matrix
case engine describes that free product, and its blocks are pulled back
to ``A * B``.  When only ``B`` has large summands the roles are swapped;
with no large summands left the scalar formula applies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..algebra import Diffuse, Matrix, TracialAlgebra, mk_algebra
from ..errors import HypothesisViolated
from .cases import mixed_with_matrix, scalar_times_matrix
from .closed_form import _degenerate, assemble, check_hypotheses
from .types import AtomBlock, BoundaryMap, Decomposition, PairClass

__all__ = ["decompose_by_induction", "compression_rewrite"]


@dataclass
class _Skeleton:
    """Factor weight, L+ blocks ``(i, j) -> (N, gamma)`` and L0 pairs ``(i, j) -> N``."""

    gamma: Fraction
    plus: dict = field(default_factory=dict)
    zero: dict = field(default_factory=dict)

    def swapped(self) -> "_Skeleton":
        return _Skeleton(self.gamma,
                         {(j, i): v for (i, j), v in self.plus.items()},
                         {(j, i): v for (i, j), v in self.zero.items()})


def _large(a: TracialAlgebra) -> list[int]:
    return [i for i in a.matrix_indices() if a[i].n >= 2]


def _scalar_base(A: TracialAlgebra, B: TracialAlgebra) -> _Skeleton:
    plus, zero = {}, {}
    for i in A.matrix_indices():
        for j in B.matrix_indices():
            s = A[i].weight + B[j].weight
            if s > 1:
                plus[(i, j)] = (1, s - 1)
            elif s == 1:
                zero[(i, j)] = 1
    gamma = 1 - sum((g for _, g in plus.values()), Fraction(0))
    return _Skeleton(gamma, plus, zero)


def _with_matrix(left: TracialAlgebra, n: int) -> tuple[Decomposition, dict]:
    """Run the right case engine on ``left * M_n`` after sorting the scalar summands.

    Returns the decomposition and the map from its left indices to ``left``'s.
    """
    idx = list(range(1, len(left) + 1))
    others = [i for i in idx if left[i].n != 1]
    scalars = sorted((i for i in idx if left[i].n == 1), key=lambda i: (left[i].weight, i))
    order = others + scalars
    back = {pos: orig for pos, orig in enumerate(order, 1)}
    if not others:
        d = scalar_times_matrix([left[i].weight for i in order], n)
    else:
        d = mixed_with_matrix(mk_algebra([left[i] for i in order]), n)
    return d, back


def _compress(A: TracialAlgebra, k: int, inner: _Skeleton) -> tuple[TracialAlgebra, Fraction, dict]:
    """``p_k C p_k`` as an algebra, the weight ``alpha_k`` and the map to right indices.

    ``inner`` describes ``C = A' * B`` with summand ``k`` of ``A'`` scalar.
    The diffuse summand (index 1) maps to ``None``.
    """
    alpha = A[k].weight
    under = sorted(((j, N, g) for (i, j), (N, g) in inner.plus.items() if i == k),
                   key=lambda t: (t[1] == 1, t[2] if t[1] == 1 else 0, t[0]))
    rest = alpha - sum((g for _, _, g in under), Fraction(0))
    if rest <= 0:
        raise AssertionError(f"no diffuse part under p_{k} (weight {rest})")
    summands = [Diffuse(rest / alpha, label=f"p{k}B0p{k}")]
    index_map = {1: None}
    for pos, (j, N, g) in enumerate(under, 2):
        summands.append(Matrix(N, g / alpha))
        index_map[pos] = j
    return mk_algebra(summands), alpha, index_map


def _replace_by_scalar(A: TracialAlgebra, k: int) -> TracialAlgebra:
    s = list(A.summands)
    s[k - 1] = Matrix(1, s[k - 1].weight)
    return mk_algebra(s)


def _induct(A: TracialAlgebra, B: TracialAlgebra) -> _Skeleton:
    big = _large(A)
    if not big:
        if not _large(B):
            return _scalar_base(A, B)
        return _induct(B, A).swapped()
    k = max(big)
    n = A[k].n
    if len(A) == 1:
        # p_k = 1: the free product is B * M_n itself.
        d, back = _with_matrix(B, n)
        plus = {(k, back[b.i]): (b.N, b.gamma) for b in d.plus_blocks}
        zero = {(k, back[b.i]): b.target_size for b in d.boundary_maps}
        return _Skeleton(d.gamma, plus, zero)

    inner = _induct(_replace_by_scalar(A, k), B)
    left, alpha, index_map = _compress(A, k, inner)
    d, back = _with_matrix(left, n)
    plus = {key: v for key, v in inner.plus.items() if key[0] != k}
    zero = {key: v for key, v in inner.zero.items() if key[0] != k}
    absorbed = sum((g for (i, _), (_, g) in inner.plus.items() if i == k), Fraction(0))
    new = Fraction(0)
    for b in d.plus_blocks:
        j = index_map[back[b.i]]
        plus[(k, j)] = (n, alpha * b.gamma)
        new += alpha * b.gamma
    for b in d.boundary_maps:
        zero[(k, index_map[back[b.i]])] = n
    return _Skeleton(inner.gamma + absorbed - new, plus, zero)


def compression_rewrite(A: TracialAlgebra, B: TracialAlgebra, i: int) -> tuple[TracialAlgebra, Fraction]:
    """Left factor of ``p_i (A * B) p_i ~ (p_i C p_i) * (M_{n_i}, tr)`` and the weight ``alpha_i``.

    ``C`` is ``A`` with summand ``i`` replaced by a scalar summand.  Weights
    of the returned algebra are divided by ``alpha_i`` and sum to 1.  When
    ``alpha_i == 1`` the rewrite is the identity and ``B`` is returned.
    """
    s = A[i]
    if s.is_diffuse:
        raise HypothesisViolated(f"summand {i} is diffuse; only matrix summands can be compressed")
    if len(A) == 1:
        return B, Fraction(1)
    inner = _induct(_replace_by_scalar(A, i), B)
    left, alpha, _ = _compress(A, i, inner)
    return left, alpha


def decompose_by_induction(A: TracialAlgebra, B: TracialAlgebra) -> Decomposition:
    """Same result as :func:`~freeprod.structure.decompose`, computed by peeling summands."""
    trivial = check_hypotheses(A, B)
    if trivial is not None:
        return _degenerate(A, B, trivial)
    sk = _induct(A, B)
    plus = [AtomBlock(i, j, N, g, PairClass.PLUS) for (i, j), (N, g) in sk.plus.items()]
    zero = [BoundaryMap(i, j, N) for (i, j), N in sk.zero.items()]
    return assemble(A, B, plus, zero, sk.gamma, case="induction")
