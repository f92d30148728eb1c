"""Reduced free products of finite-dimensional tracial C*-algebras.

Exact structure verdicts (closed form and induction), exact free moments,
and random-matrix cross-checks.

>>> from freeprod import Matrix, mk_algebra, decompose
>>> d = decompose(mk_algebra([Matrix(1, "9/10"), Matrix(1, "1/10")]), mk_algebra([Matrix(2, 1)]))
>>> d.gamma, [(b.N, b.gamma) for b in d.plus_blocks]
(Fraction(2, 5), [(2, Fraction(3, 5))])
"""

from .algebra import (
    Diffuse,
    ExtendedDim,
    Matrix,
    Summand,
    TracialAlgebra,
    algebra_from_dict,
    algebra_from_json,
    algebra_to_dict,
    algebra_to_json,
    ext_dim,
    mk_algebra,
    summand_trace,
)
from .errors import (
    AmbientTooSmall,
    DimensionHypothesisViolated,
    DomainError,
    EmptyAlgebra,
    FreeProductError,
    HypothesisViolated,
    InvalidAlgebra,
    ShapeMismatch,
    WeightSumError,
    ZeroWeight,
)
from .exact import GaussianRational, HaarPoly, QMatrix, as_fraction, gq
from .moments import FreeWord, Letter, Side, parse_word, verify_corollary32, verify_lemma31, word_trace
from .oracle import (
    empirical_word_trace,
    empirical_word_traces,
    generic_position_trials,
    haar_unitary,
    intersection_rank,
    realize,
    two_projection_spectrum,
)
from .report import parse_report, render_report
from .structure import (
    Decomposition,
    TwoProjectionStructure,
    check_hypotheses,
    classify_pairs,
    compression_rewrite,
    decompose,
    decompose_by_induction,
    mixed_with_matrix,
    scalar_times_matrix,
    two_projection_structure,
    vn_decompose,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
