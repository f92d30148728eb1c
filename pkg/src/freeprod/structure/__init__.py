"""Structure engine: closed form, induction, special cases."""

from .cases import mixed_with_matrix, scalar_times_matrix
from .closed_form import check_hypotheses, classify_pairs, decompose, vn_decompose
from .induction import compression_rewrite, decompose_by_induction
from .twoproj import normalize_pair, two_projection_structure
from .types import (
    AtomBlock,
    BoundaryMap,
    Decomposition,
    FactorPart,
    FullnessClaim,
    KernelReport,
    PairClass,
    TwoProjectionCase,
    TwoProjectionStructure,
    VnDecomposition,
)

__all__ = [
    "AtomBlock",
    "BoundaryMap",
    "Decomposition",
    "FactorPart",
    "FullnessClaim",
    "KernelReport",
    "PairClass",
    "TwoProjectionCase",
    "TwoProjectionStructure",
    "VnDecomposition",
    "check_hypotheses",
    "classify_pairs",
    "compression_rewrite",
    "decompose",
    "decompose_by_induction",
    "mixed_with_matrix",
    "normalize_pair",
    "scalar_times_matrix",
    "two_projection_structure",
    "vn_decompose",
]
