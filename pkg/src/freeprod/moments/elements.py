"""Elements of one side of a free product, letters and words.

An :class:`Element` of a :class:`~freeprod.algebra.TracialAlgebra` holds one
block per summand: a :class:`~freeprod.exact.QMatrix` for a matrix summand
and a :class:`~freeprod.exact.HaarPoly` for a diffuse summand (the diffuse
summand is modeled by the abelian algebra of one Haar unitary).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from ..algebra import TracialAlgebra
from ..errors import ShapeMismatch
from ..exact import GaussianRational, HaarPoly, QMatrix

__all__ = [
    "Side",
    "Element",
    "Letter",
    "FreeWord",
    "CenteredForm",
    "center",
    "unit",
    "zero",
    "projection",
    "matrix_unit",
    "embed",
    "haar",
    "shift",
]


class Side(str, Enum):
    LEFT = "L"
    RIGHT = "R"

    @property
    def other(self) -> "Side":
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


class Element:
    """Element of a side algebra, one block per summand."""

    __slots__ = ("algebra", "blocks", "_key")

    def __init__(self, algebra: TracialAlgebra, blocks):
        blocks = tuple(blocks)
        if len(blocks) != len(algebra.summands):
            raise ShapeMismatch(f"{len(blocks)} blocks for {len(algebra.summands)} summands")
        for b, s in zip(blocks, algebra.summands):
            if s.is_diffuse:
                if not isinstance(b, HaarPoly):
                    raise ShapeMismatch("diffuse summand block must be a HaarPoly")
            elif not isinstance(b, QMatrix) or b.n != s.n:
                raise ShapeMismatch(f"matrix summand M{s.n} got block {b!r}")
        self.algebra = algebra
        self.blocks = blocks
        self._key = None

    def key(self):
        if self._key is None:
            self._key = tuple(b.key() if isinstance(b, QMatrix) else b.coeffs for b in self.blocks)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.key() == other.key() and self.algebra == other.algebra

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Element({list(self.blocks)!r})"

    def _same(self, other: "Element"):
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise ShapeMismatch("elements belong to different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.algebra, (a + b for a, b in zip(self.blocks, other.blocks)))

    def __neg__(self) -> "Element":
        return Element(self.algebra, (-b for b in self.blocks))

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __matmul__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.algebra, (a @ b for a, b in zip(self.blocks, other.blocks)))

    __mul__ = __matmul__

    def scale(self, c) -> "Element":
        return Element(self.algebra, (b.scale(c) for b in self.blocks))

    def add_identity(self, c) -> "Element":
        """Return ``self + c * 1``."""
        return Element(self.algebra, (b.add_identity(c) for b in self.blocks))

    def trace(self) -> GaussianRational:
        """The algebra's trace: weight-combination of normalized summand traces."""
        total = GaussianRational()
        for b, s in zip(self.blocks, self.algebra.summands):
            t = b.normalized_trace()
            if t:
                total = total + t * s.weight
        return total

    def adjoint(self) -> "Element":
        return Element(self.algebra, (b.adjoint() for b in self.blocks))

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    def power(self, k: int) -> "Element":
        if k >= 0:
            return Element(self.algebra, (b.power(k) for b in self.blocks))
        raise ValueError("use the adjoint for negative powers of unitaries")


# -- constructors --------------------------------------------------------

def _blank(a: TracialAlgebra, scalar=0):
    out = []
    for s in a.summands:
        if s.is_diffuse:
            out.append(HaarPoly.constant(scalar))
        else:
            out.append(QMatrix.identity(s.n).scale(scalar) if scalar else QMatrix.zeros(s.n))
    return out


def unit(a: TracialAlgebra) -> Element:
    return Element(a, _blank(a, 1))


def zero(a: TracialAlgebra) -> Element:
    return Element(a, _blank(a, 0))


def projection(a: TracialAlgebra, i: int) -> Element:
    """Support projection of summand ``i`` (1-based)."""
    a[i]
    blocks = _blank(a, 0)
    s = a.summands[i - 1]
    blocks[i - 1] = HaarPoly.constant(1) if s.is_diffuse else QMatrix.identity(s.n)
    return Element(a, blocks)


def embed(a: TracialAlgebra, i: int, block) -> Element:
    """Element equal to ``block`` on summand ``i`` and zero elsewhere."""
    s = a[i]
    if s.is_diffuse and not isinstance(block, HaarPoly):
        raise ShapeMismatch("diffuse summand needs a HaarPoly block")
    if s.is_matrix:
        if not isinstance(block, QMatrix):
            block = QMatrix.from_entries(block)
        if block.n != s.n:
            raise ShapeMismatch(f"summand {i} is M{s.n}, got {block.n}x{block.n}")
    blocks = _blank(a, 0)
    blocks[i - 1] = block
    return Element(a, blocks)


def default_matrix_summand(a: TracialAlgebra) -> int:
    """First summand of size >= 2, else the first matrix summand."""
    for i, s in enumerate(a.summands, 1):
        if s.is_matrix and s.n >= 2:
            return i
    idx = a.matrix_indices()
    if not idx:
        raise ShapeMismatch("algebra has no matrix summand")
    return idx[0]


def matrix_unit(a: TracialAlgebra, r: int, c: int, i: int | None = None) -> Element:
    """Matrix unit e_rc (1-based) placed in summand ``i``."""
    i = default_matrix_summand(a) if i is None else i
    s = a[i]
    if s.is_diffuse or not (1 <= r <= s.n and 1 <= c <= s.n):
        raise ShapeMismatch(f"e{r}{c} does not exist in summand {i}")
    return embed(a, i, QMatrix.unit(s.n, r - 1, c - 1))


def haar(a: TracialAlgebra, k: int = 1, i: int | None = None) -> Element:
    """``u^k`` for the Haar unitary of the diffuse summand (zero elsewhere)."""
    i = a.diffuse_index() if i is None else i
    if i is None or a[i].is_matrix:
        raise ShapeMismatch("algebra has no diffuse summand")
    return embed(a, i, HaarPoly.monomial(k))


def shift(a: TracialAlgebra, k: int = 1, i: int | None = None) -> Element:
    """``u^k`` for the cyclic permutation unitary of a matrix summand (zero elsewhere)."""
    i = default_matrix_summand(a) if i is None else i
    s = a[i]
    if s.is_diffuse:
        raise ShapeMismatch("shift needs a matrix summand")
    base = QMatrix.cyclic_shift(s.n)
    if k < 0:
        base, k = base.adjoint(), -k
    return embed(a, i, base.power(k % s.n))


# -- letters and words ---------------------------------------------------

@dataclass(frozen=True)
class Letter:
    side: Side
    element: Element

    def adjoint(self) -> "Letter":
        return Letter(self.side, self.element.adjoint())

    def __repr__(self):
        return f"{self.side.value}:{self.element!r}"


@dataclass(frozen=True)
class FreeWord:
    """Ordered product of letters; adjacent same-side letters need not be merged."""

    letters: tuple[Letter, ...] = ()

    def __init__(self, letters=()):
        object.__setattr__(self, "letters", tuple(letters))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __add__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters)

    def adjoint(self) -> "FreeWord":
        return FreeWord(l.adjoint() for l in reversed(self.letters))

    def reduced(self) -> "FreeWord":
        """Merge adjacent same-side letters by multiplication."""
        out: list[Letter] = []
        for l in self.letters:
            if out and out[-1].side == l.side:
                out[-1] = Letter(l.side, out[-1].element @ l.element)
            else:
                out.append(l)
        return FreeWord(out)


@dataclass(frozen=True)
class CenteredForm:
    """``letter = centered + scalar * 1`` with ``trace(centered) == 0``."""

    scalar: GaussianRational
    centered: Letter


def center(letter: Letter, algebra: TracialAlgebra | None = None) -> CenteredForm:
    """Split a letter into its trace and its trace-zero part."""
    el = letter.element
    if algebra is not None and el.algebra != algebra:
        raise ShapeMismatch("letter does not belong to the given algebra")
    c = el.trace()
    return CenteredForm(c, Letter(letter.side, el.add_identity(-c)))


def weight_vector_element(a: TracialAlgebra, coeffs) -> Element:
    """``sum_s coeffs[s] * p_s`` for an abelian algebra (coefficients per summand)."""
    coeffs = list(coeffs)
    if len(coeffs) != len(a.summands):
        raise ShapeMismatch("one coefficient per summand expected")
    el = zero(a)
    for i, c in enumerate(coeffs, 1):
        if c:
            el = el + projection(a, i).scale(Fraction(c) if not isinstance(c, GaussianRational) else c)
    return el
