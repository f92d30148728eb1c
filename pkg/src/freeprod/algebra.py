"""Finite-dimensional tracial algebras ``A_0 (+) M_{n_1} (+) ... (+) M_{n_k}``.

A :class:`TracialAlgebra` is an ordered list of weighted summands.  Matrix
summands carry their size; a diffuse summand is a flag standing for any
algebra that contains a unital diffuse abelian subalgebra (for symbolic
work it is modeled by the algebra of one Haar unitary).

Summand indices exposed by the public API are 1-based positions in the
summand list.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptyAlgebra, ShapeMismatch, WeightSumError, ZeroWeight
from .exact import GaussianRational, HaarPoly, QMatrix, as_fraction

__all__ = [
    "Summand",
    "TracialAlgebra",
    "ExtendedDim",
    "Matrix",
    "Diffuse",
    "mk_algebra",
    "ext_dim",
    "summand_trace",
    "algebra_from_json",
    "algebra_to_json",
]


@dataclass(frozen=True)
class Summand:
    """One weighted summand; ``n is None`` marks a diffuse summand."""

    weight: Fraction
    n: int | None = 1
    label: str = ""

    @property
    def is_diffuse(self) -> bool:
        return self.n is None

    @property
    def is_matrix(self) -> bool:
        return self.n is not None

    def __str__(self):
        w = str(self.weight)
        if self.is_diffuse:
            return f"{self.label or 'D'}^{{{w}}}"
        return f"C^{{{w}}}" if self.n == 1 else f"M{self.n}^{{{w}}}"


def Matrix(n: int, weight) -> Summand:
    """A matrix summand M_n carrying trace weight ``weight``."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ShapeMismatch(f"matrix size must be a positive integer, got {n!r}")
    return Summand(as_fraction(weight), n)


def Diffuse(weight, label: str = "D") -> Summand:
    """A summand containing a unital diffuse abelian subalgebra."""
    return Summand(as_fraction(weight), None, label)


@dataclass(frozen=True)
class ExtendedDim:
    """Vector-space dimension, possibly infinite."""

    value: int | None  # None means infinite

    @property
    def infinite(self) -> bool:
        return self.value is None

    def at_least(self, k: int) -> bool:
        return self.value is None or self.value >= k

    def __add__(self, other: "ExtendedDim") -> "ExtendedDim":
        if self.infinite or other.infinite:
            return ExtendedDim(None)
        return ExtendedDim(self.value + other.value)

    def __str__(self):
        return "inf" if self.infinite else str(self.value)


@dataclass(frozen=True)
class TracialAlgebra:
    """Validated weighted direct sum; build it with :func:`mk_algebra`."""

    summands: tuple[Summand, ...]

    def __post_init__(self):
        if not self.summands:
            raise EmptyAlgebra("an algebra needs at least one summand")
        for s in self.summands:
            if s.weight <= 0:
                raise ZeroWeight(f"summand {s} has non-positive weight")
        total = sum(s.weight for s in self.summands)
        if total != 1:
            raise WeightSumError(f"weights sum to {total}, not 1")

    def __len__(self):
        return len(self.summands)

    def __iter__(self):
        return iter(self.summands)

    def __getitem__(self, i: int) -> Summand:
        """1-based summand access."""
        if not 1 <= i <= len(self.summands):
            raise IndexError(f"summand index {i} out of range 1..{len(self.summands)}")
        return self.summands[i - 1]

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(s.weight for s in self.summands)

    def matrix_indices(self) -> list[int]:
        return [i for i, s in enumerate(self.summands, 1) if s.is_matrix]

    def diffuse_index(self) -> int | None:
        for i, s in enumerate(self.summands, 1):
            if s.is_diffuse:
                return i
        return None

    @property
    def diffuse_weight(self) -> Fraction:
        return sum((s.weight for s in self.summands if s.is_diffuse), Fraction(0))

    def is_abelian(self) -> bool:
        return all(s.n == 1 for s in self.summands)

    def __str__(self):
        return " (+) ".join(str(s) for s in self.summands)


def mk_algebra(summands) -> TracialAlgebra:
    """Validate a list of summands into a :class:`TracialAlgebra`.

    Several diffuse summands are merged into the first one (weights added)
    with a warning.  Raises ``EmptyAlgebra``, ``ZeroWeight`` or
    ``WeightSumError``.
    """
    summands = list(summands)
    if not summands:
        raise EmptyAlgebra("an algebra needs at least one summand")
    clean = []
    for s in summands:
        if not isinstance(s, Summand):
            raise TypeError(f"expected Summand, got {type(s).__name__}")
        w = as_fraction(s.weight)
        if w == 0:
            raise ZeroWeight(f"summand {s} has zero weight")
        if w < 0:
            raise ZeroWeight(f"summand {s} has negative weight")
        clean.append(Summand(w, s.n, s.label))
    diffuse = [k for k, s in enumerate(clean) if s.is_diffuse]
    if len(diffuse) > 1:
        warnings.warn(f"merging {len(diffuse)} diffuse summands into one", stacklevel=2)
        first = diffuse[0]
        merged = Summand(sum(clean[k].weight for k in diffuse), None, clean[first].label)
        clean = [merged if k == first else s for k, s in enumerate(clean) if k not in diffuse[1:]]
    return TracialAlgebra(tuple(clean))


def ext_dim(a: TracialAlgebra) -> ExtendedDim:
    """``Finite(sum n_i^2)``, or infinite when a diffuse summand is present."""
    if any(s.is_diffuse for s in a.summands):
        return ExtendedDim(None)
    return ExtendedDim(sum(s.n * s.n for s in a.summands))


def summand_trace(a: TracialAlgebra, i: int, element) -> GaussianRational:
    """Weighted trace ``alpha_i * tr(element)`` of an element living in summand ``i``.

    Matrix summands take a square :class:`QMatrix` (or nested rows) of the
    summand's size; diffuse summands take a :class:`HaarPoly`.
    """
    s = a[i]
    if s.is_diffuse:
        if not isinstance(element, HaarPoly):
            raise ShapeMismatch("diffuse summands only accept Haar polynomials")
        return element.trace() * s.weight
    if isinstance(element, HaarPoly):
        raise ShapeMismatch(f"summand {i} is M{s.n}, not diffuse")
    if not isinstance(element, QMatrix):
        element = QMatrix.from_entries(element)
    if element.n != s.n:
        raise ShapeMismatch(f"summand {i} is M{s.n}, got a {element.n}x{element.n} matrix")
    return element.normalized_trace() * s.weight


# -- JSON ------------------------------------------------------------------

def _weight_str(w: Fraction) -> str:
    return f"{w.numerator}/{w.denominator}"


def algebra_to_dict(a: TracialAlgebra) -> dict:
    out = []
    for s in a.summands:
        if s.is_diffuse:
            out.append({"kind": "diffuse", "label": s.label, "weight": _weight_str(s.weight)})
        else:
            out.append({"kind": "matrix", "n": s.n, "weight": _weight_str(s.weight)})
    return {"summands": out}


def algebra_from_dict(d: dict) -> TracialAlgebra:
    if not isinstance(d, dict) or "summands" not in d:
        raise ValueError("algebra JSON needs a 'summands' list")
    summands = []
    for item in d["summands"]:
        w = item.get("weight")
        if not isinstance(w, (str, int)) or isinstance(w, bool):
            raise TypeError(f"weight must be a 'p/q' string, got {w!r}")
        kind = item.get("kind")
        if kind == "matrix":
            summands.append(Matrix(int(item["n"]), w))
        elif kind == "diffuse":
            summands.append(Diffuse(w, item.get("label", "D")))
        else:
            raise ValueError(f"unknown summand kind {kind!r}")
    return mk_algebra(summands)


def algebra_to_json(a: TracialAlgebra) -> str:
    return json.dumps(algebra_to_dict(a))


def algebra_from_json(text: str) -> TracialAlgebra:
    return algebra_from_dict(json.loads(text))


def common_denominator(a: TracialAlgebra) -> int:
    """Least common denominator of the weights."""
    return math.lcm(*(s.weight.denominator for s in a.summands))
