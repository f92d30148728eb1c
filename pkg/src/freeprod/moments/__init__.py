"""Exact free-moment calculus: elements, words, traces, freeness checks."""

from .elements import (
    CenteredForm,
    Element,
    FreeWord,
    Letter,
    Side,
    center,
    embed,
    haar,
    matrix_unit,
    projection,
    shift,
    unit,
    zero,
)
from .lemma import (
    FreenessReport,
    haar_check,
    haar_moments,
    lemma_model,
    verify_corollary32,
    verify_lemma31,
)
from .syntax import WordSyntaxError, parse_element, parse_word
from .trace import MAX_WORD_LENGTH, fock_trace, word_trace

__all__ = [
    "CenteredForm",
    "Element",
    "FreeWord",
    "FreenessReport",
    "Letter",
    "MAX_WORD_LENGTH",
    "Side",
    "WordSyntaxError",
    "center",
    "embed",
    "fock_trace",
    "haar",
    "haar_check",
    "haar_moments",
    "lemma_model",
    "matrix_unit",
    "parse_element",
    "parse_word",
    "projection",
    "shift",
    "unit",
    "verify_corollary32",
    "verify_lemma31",
    "word_trace",
    "zero",
]
