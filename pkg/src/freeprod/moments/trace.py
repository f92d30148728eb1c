"""Exact evaluation of the free product trace on words.

Two independent evaluators live here.

``word_trace`` repeatedly splits the leftmost uncentered letter into its
centered part plus a scalar; a word whose letters are all centered and
alternate between the sides has trace zero, the empty word has trace one.
Branches that reach the same centered prefix are merged.

``fock_trace`` instead lets the word act on the vacuum of the free product
Hilbert space (tensors of centered vectors of alternating sides) and reads
off the vacuum coefficient.  It is used as a cross-check of ``word_trace``.
"""

from __future__ import annotations

from ..algebra import TracialAlgebra
from ..errors import ShapeMismatch
from ..exact import GaussianRational
from .elements import Element, FreeWord, Letter, Side

__all__ = ["word_trace", "fock_trace", "MAX_WORD_LENGTH"]

# Cap on the reduced word length accepted by the evaluators.
MAX_WORD_LENGTH = 64

_ONE = GaussianRational(1)
_ZERO = GaussianRational(0)


def _prepare(w, A: TracialAlgebra, B: TracialAlgebra) -> list[tuple[Side, Element]]:
    if isinstance(w, Letter):
        w = FreeWord([w])
    elif not isinstance(w, FreeWord):
        w = FreeWord(w)
    for l in w:
        expected = A if l.side is Side.LEFT else B
        if l.element.algebra != expected:
            raise ShapeMismatch(f"letter on side {l.side.value} does not match that side's algebra")
    red = w.reduced()
    if len(red) > MAX_WORD_LENGTH:
        raise ValueError(f"reduced word length {len(red)} exceeds {MAX_WORD_LENGTH}")
    return [(l.side, l.element) for l in red]


def word_trace(w, A: TracialAlgebra, B: TracialAlgebra) -> GaussianRational:
    """Free product trace of the word ``w`` in ``(A, tau_A) * (B, tau_B)``.

    ``w`` is a :class:`FreeWord`, a :class:`Letter` or an iterable of letters.
    The result is exact.

    The word is read left to right.  The state is a linear combination of
    alternating tuples of centered letters (the already-centered prefix).
    Reading letter ``a`` either appends ``a - tau(a)`` (keeping ``tau(a)`` as
    the scalar branch), or, when the prefix ends on the same side, multiplies
    into the last prefix letter and centers the product.  Identical prefixes
    are merged, which is the memoization; a nonempty prefix left at the end
    contributes zero by freeness.
    """
    letters = _prepare(w, A, B)
    if any(el.is_zero() for _, el in letters):
        return _ZERO
    traces: dict = {}

    def tr(side: Side, el: Element) -> GaussianRational:
        k = (side, el.key())
        t = traces.get(k)
        if t is None:
            t = traces[k] = el.trace()
        return t

    states: dict = {(): (_ONE, ())}
    n = len(letters)
    for pos, (side, a) in enumerate(letters):
        remaining = n - pos - 1
        nxt: dict = {}
        for coef, prefix in states.values():
            if prefix and prefix[-1][0] is side:
                b = prefix[-1][1] @ a
                head = prefix[:-1]
            else:
                b = a
                head = prefix
            t = tr(side, b)
            if len(head) + 1 <= remaining:
                cen = b.add_identity(-t) if t else b
                if not cen.is_zero():
                    traces.setdefault((side, cen.key()), _ZERO)
                    _acc_left(nxt, head + ((side, cen),), coef)
            if t and len(head) <= remaining:
                _acc_left(nxt, head, coef * t)
        states = nxt
        if not states:
            return _ZERO
    hit = states.get(())
    return hit[0] if hit else _ZERO


def _acc_left(out: dict, prefix: tuple, coef: GaussianRational):
    key = tuple((s, el.key()) for s, el in prefix)
    if key in out:
        c = out[key][0] + coef
        if c:
            out[key] = (c, prefix)
        else:
            del out[key]
    else:
        out[key] = (coef, prefix)


def fock_trace(w, A: TracialAlgebra, B: TracialAlgebra) -> GaussianRational:
    """Trace of ``w`` as ``<w Omega, Omega>`` on the free product Hilbert space.

    Vectors are dictionaries from tuples of centered elements (first entry is
    the leftmost tensor factor) to exact coefficients; letters act from the
    right end of the word inward.
    """
    letters = _prepare(w, A, B)
    vec: dict = {(): (_ONE, ())}
    total = len(letters)
    for pos in range(total - 1, -1, -1):
        side, a = letters[pos]
        remaining = pos  # letters still to apply after this one
        out: dict = {}
        for key, (coef, tensors) in vec.items():
            if tensors and tensors[0][0] is side:
                b = a @ tensors[0][1]
                rest = tensors[1:]
            else:
                b = a
                rest = tensors
            t = b.trace()
            cen = b.add_identity(-t)
            if not cen.is_zero() and len(rest) + 1 <= remaining:
                _acc(out, ((side, cen),) + rest, coef)
            if t and len(rest) <= remaining:
                _acc(out, rest, coef * t)
        vec = out
    hit = vec.get(())
    return hit[0] if hit else _ZERO


def _acc(out: dict, tensors: tuple, coef: GaussianRational):
    key = tuple((s, el.key()) for s, el in tensors)
    if key in out:
        c0, t0 = out[key]
        c = c0 + coef
        if c:
            out[key] = (c, t0)
        else:
            del out[key]
    else:
        out[key] = (coef, tensors)
