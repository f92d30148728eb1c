"""Result types of the structure engine and their JSON forms."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction

from ..algebra import TracialAlgebra, algebra_from_dict, algebra_to_dict

__all__ = [
    "PairClass",
    "AtomBlock",
    "BoundaryMap",
    "FactorPart",
    "KernelReport",
    "FullnessClaim",
    "Decomposition",
    "TwoProjectionCase",
    "TwoProjectionStructure",
    "VnDecomposition",
]

LEFT, RIGHT = "left", "right"


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _frac(s) -> Fraction:
    if not isinstance(s, str):
        raise TypeError(f"expected a 'p/q' string, got {s!r}")
    return Fraction(s)


class PairClass(str, Enum):
    PLUS = "plus"
    ZERO = "zero"


@dataclass(frozen=True, order=True)
class AtomBlock:
    """Index pair ``(i, j)`` with ``N = max(n_i, m_j)`` and its weight."""

    i: int
    j: int
    N: int
    gamma: Fraction
    cls: PairClass = PairClass.PLUS

    def swapped(self) -> "AtomBlock":
        return replace(self, i=self.j, j=self.i)

    def to_dict(self) -> dict:
        return {"i": self.i, "j": self.j, "N": self.N, "gamma": _frac_str(self.gamma)}

    @classmethod
    def from_dict(cls, d: dict, pair_class=PairClass.PLUS) -> "AtomBlock":
        return cls(int(d["i"]), int(d["j"]), int(d["N"]), _frac(d["gamma"]), pair_class)


@dataclass(frozen=True, order=True)
class BoundaryMap:
    """The unital homomorphism ``pi_(i,j)`` from the factor part onto ``M_N``."""

    i: int
    j: int
    target_size: int

    def swapped(self) -> "BoundaryMap":
        return BoundaryMap(self.j, self.i, self.target_size)

    def to_dict(self) -> dict:
        return {"i": self.i, "j": self.j, "N": self.target_size}

    @classmethod
    def from_dict(cls, d: dict) -> "BoundaryMap":
        return cls(int(d["i"]), int(d["j"]), int(d["N"]))


@dataclass(frozen=True)
class FactorPart:
    weight: Fraction
    unital: bool
    simple: bool | None
    unique_trace: bool | None
    diffuse_witnesses: tuple[tuple[str, int], ...]

    def to_dict(self) -> dict:
        return {
            "weight": _frac_str(self.weight),
            "simple": self.simple,
            "unique_trace": self.unique_trace,
            "unital": self.unital,
            "diffuse_witnesses": [list(w) for w in self.diffuse_witnesses],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FactorPart":
        return cls(
            _frac(d["weight"]),
            bool(d["unital"]),
            d["simple"],
            d["unique_trace"],
            tuple((str(s), int(i)) for s, i in d["diffuse_witnesses"]),
        )


@dataclass(frozen=True)
class KernelReport:
    """Verdicts for the intersection of the kernels of all boundary maps."""

    simple: bool
    unital: bool
    unique_trace: bool

    def to_dict(self) -> dict:
        return {"simple": self.simple, "unital": self.unital, "unique_trace": self.unique_trace}

    @classmethod
    def from_dict(cls, d: dict) -> "KernelReport":
        return cls(bool(d["simple"]), bool(d["unital"]), bool(d["unique_trace"]))


@dataclass(frozen=True, order=True)
class FullnessClaim:
    """``f p_i`` (or ``f q_j``) is full in the factor part cut down by the listed kernels."""

    side: str
    index: int
    kernels: tuple[tuple[int, int], ...] = ()

    @property
    def ideal(self) -> str:
        if not self.kernels:
            return "A0"
        return "A0 ∩ " + " ∩ ".join(f"ker pi({i},{j})" for i, j in self.kernels)

    def swapped(self) -> "FullnessClaim":
        side = RIGHT if self.side == LEFT else LEFT
        return FullnessClaim(side, self.index, tuple(sorted((j, i) for i, j in self.kernels)))

    def to_dict(self) -> dict:
        return {"projection": [self.side, self.index], "ideal": self.ideal,
                "kernels": [list(k) for k in self.kernels]}

    @classmethod
    def from_dict(cls, d: dict) -> "FullnessClaim":
        side, index = d["projection"]
        return cls(str(side), int(index), tuple((int(a), int(b)) for a, b in d["kernels"]))


@dataclass(frozen=True)
class Decomposition:
    """``A * B = A0^gamma (+) sum over L+ of M_N^gamma_ij`` plus the L0 data.

    ``passthrough`` is set only for the degenerate input where one side is
    ``C``: the free product is then the other algebra itself.  ``case`` and
    ``notes`` are descriptive and do not take part in equality.
    """

    factor: FactorPart
    plus_blocks: tuple[AtomBlock, ...]
    boundary_maps: tuple[BoundaryMap, ...]
    kernel: KernelReport | None
    fullness: tuple[FullnessClaim, ...]
    passthrough: TracialAlgebra | None = None
    case: str | None = field(default=None, compare=False)
    notes: tuple[str, ...] = field(default=(), compare=False)

    @property
    def gamma(self) -> Fraction:
        return self.factor.weight

    @property
    def total_weight(self) -> Fraction:
        return self.factor.weight + sum((b.gamma for b in self.plus_blocks), Fraction(0))

    @property
    def L_plus(self) -> list[tuple[int, int]]:
        return [(b.i, b.j) for b in self.plus_blocks]

    @property
    def L_zero(self) -> list[tuple[int, int]]:
        return [(b.i, b.j) for b in self.boundary_maps]

    def swapped(self) -> "Decomposition":
        """The same structure read as ``B * A``."""
        f = self.factor
        wit = tuple(sorted((RIGHT if s == LEFT else LEFT, i) for s, i in f.diffuse_witnesses))
        return replace(
            self,
            factor=replace(f, diffuse_witnesses=wit),
            plus_blocks=tuple(sorted(b.swapped() for b in self.plus_blocks)),
            boundary_maps=tuple(sorted(b.swapped() for b in self.boundary_maps)),
            fullness=tuple(sorted(c.swapped() for c in self.fullness)),
        )

    def reindexed(self, left_map: dict, right_map: dict) -> "Decomposition":
        """Rename summand indices (``old -> new`` per side).

        A ``passthrough`` algebra is kept as given.
        """
        f = self.factor
        side_map = {LEFT: left_map, RIGHT: right_map}
        wit = tuple(sorted((s, side_map[s][i]) for s, i in f.diffuse_witnesses))
        return replace(
            self,
            factor=replace(f, diffuse_witnesses=wit),
            plus_blocks=tuple(sorted(replace(b, i=left_map[b.i], j=right_map[b.j])
                                     for b in self.plus_blocks)),
            boundary_maps=tuple(sorted(BoundaryMap(left_map[b.i], right_map[b.j], b.target_size)
                                       for b in self.boundary_maps)),
            fullness=tuple(sorted(
                FullnessClaim(c.side, side_map[c.side][c.index],
                              tuple(sorted((left_map[a], right_map[b]) for a, b in c.kernels)))
                for c in self.fullness)),
        )

    def to_dict(self) -> dict:
        out = {
            "factor": self.factor.to_dict(),
            "plus_blocks": [b.to_dict() for b in self.plus_blocks],
            "boundary_maps": [b.to_dict() for b in self.boundary_maps],
            "kernel": None if self.kernel is None else self.kernel.to_dict(),
            "fullness": [c.to_dict() for c in self.fullness],
        }
        if self.passthrough is not None:
            out["passthrough"] = algebra_to_dict(self.passthrough)
        if self.case is not None:
            out["case"] = self.case
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "Decomposition":
        return cls(
            factor=FactorPart.from_dict(d["factor"]),
            plus_blocks=tuple(AtomBlock.from_dict(b) for b in d["plus_blocks"]),
            boundary_maps=tuple(BoundaryMap.from_dict(b) for b in d["boundary_maps"]),
            kernel=None if d.get("kernel") is None else KernelReport.from_dict(d["kernel"]),
            fullness=tuple(FullnessClaim.from_dict(c) for c in d["fullness"]),
            passthrough=algebra_from_dict(d["passthrough"]) if "passthrough" in d else None,
            case=d.get("case"),
            notes=tuple(d.get("notes", ())),
        )


class TwoProjectionCase(str, Enum):
    DISTINCT = "distinct"
    EQUAL_ABOVE_HALF = "equal_above_half"
    HALF = "half"


@dataclass(frozen=True)
class TwoProjectionStructure:
    """Atoms and continuous part of ``C*(p, q)`` for free projections.

    The continuous part is ``M_2``-valued over an interval ``[a, b]`` with
    ``a, b = center -+ sqrt(radius_sq)``; both parameters are exact and only
    the endpoints are floating point.
    """

    alpha: Fraction
    beta: Fraction
    case: TwoProjectionCase
    atom_p_not_q: Fraction
    atom_p_and_q: Fraction
    support_center: Fraction
    support_radius_sq: Fraction

    @property
    def support(self) -> tuple[float, float]:
        r = math.sqrt(self.support_radius_sq)
        c = float(self.support_center)
        return max(0.0, c - r), min(1.0, c + r)

    @property
    def continuous_mass(self) -> Fraction:
        """Trace of ``p`` carried by the continuous part."""
        return self.alpha - self.atom_p_not_q - self.atom_p_and_q

    def to_dict(self) -> dict:
        a, b = self.support
        return {
            "alpha": _frac_str(self.alpha),
            "beta": _frac_str(self.beta),
            "case": self.case.value,
            "atom_p_not_q": _frac_str(self.atom_p_not_q),
            "atom_p_and_q": _frac_str(self.atom_p_and_q),
            "support_center": _frac_str(self.support_center),
            "support_radius_sq": _frac_str(self.support_radius_sq),
            "support": [a, b],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TwoProjectionStructure":
        return cls(
            _frac(d["alpha"]), _frac(d["beta"]), TwoProjectionCase(d["case"]),
            _frac(d["atom_p_not_q"]), _frac(d["atom_p_and_q"]),
            _frac(d["support_center"]), _frac(d["support_radius_sq"]),
        )


@dataclass(frozen=True)
class VnDecomposition:
    """von Neumann free product: an interpolated free group factor plus the L+ blocks."""

    factor_weight: Fraction
    plus_blocks: tuple[AtomBlock, ...]
    factor_tag: str = "L(F_t)"
    passthrough: TracialAlgebra | None = None

    @property
    def total_weight(self) -> Fraction:
        return self.factor_weight + sum((b.gamma for b in self.plus_blocks), Fraction(0))

    def to_dict(self) -> dict:
        out = {
            "factor": {"tag": self.factor_tag, "weight": _frac_str(self.factor_weight)},
            "plus_blocks": [b.to_dict() for b in self.plus_blocks],
        }
        if self.passthrough is not None:
            out["passthrough"] = algebra_to_dict(self.passthrough)
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "VnDecomposition":
        return cls(
            _frac(d["factor"]["weight"]),
            tuple(AtomBlock.from_dict(b) for b in d["plus_blocks"]),
            d["factor"]["tag"],
            algebra_from_dict(d["passthrough"]) if "passthrough" in d else None,
        )
