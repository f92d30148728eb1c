"""Exact freeness checks inside ``(C^m, weights) * (M_n, tr_n)``.

Let ``u`` be the cyclic shift in ``M_n`` and ``p_1..p_m`` the minimal
projections of the abelian side.  The conjugated copies
``u^k C*(p_1..p_m) u^-k`` together with the diagonal algebra of ``M_n`` (or,
for a divisor ``l`` of ``n``, the algebra generated by the diagonal and
``u^l``) are free, and alternating centered words ``w`` in them satisfy
``tau(w u^r) == 0`` for small ``r``.  The functions below sample such words at
random and evaluate the trace exactly.

Random words: each word draws a length from a geometric distribution
(success probability ``1/3``, truncated to ``max_len``), walks through the
generating families choosing uniformly among those different from the
previous one, and fills each slot with a random small-integer element of
that family, centered exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..algebra import Matrix, TracialAlgebra, mk_algebra
from ..errors import HypothesisViolated
from ..exact import GaussianRational, QMatrix, as_fraction, gq
from .elements import Element, FreeWord, Letter, Side, embed, projection, shift, zero
from .trace import word_trace

__all__ = [
    "FreenessReport",
    "lemma_model",
    "verify_lemma31",
    "verify_corollary32",
    "haar_check",
    "haar_moments",
]

MAX_LEN_CAP = 16
_COEFF_RANGE = 3


@dataclass
class FreenessReport:
    """Outcome of a batch of exact trace-zero checks."""

    label: str
    total: int = 0
    zeros: int = 0
    failures: list = field(default_factory=list)
    max_reduced_length: int = 0

    def record(self, description: str, value: GaussianRational, reduced_length: int):
        self.total += 1
        self.max_reduced_length = max(self.max_reduced_length, reduced_length)
        if value:
            self.failures.append((description, value))
        else:
            self.zeros += 1

    @property
    def passed(self) -> bool:
        return self.total > 0 and not self.failures

    def summary(self) -> str:
        return f"{self.zeros}/{self.total} words: τ = 0"

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "total": self.total,
            "zeros": self.zeros,
            "passed": self.passed,
            "failures": [[d, str(v)] for d, v in self.failures],
            "max_reduced_length": self.max_reduced_length,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FreenessReport":
        return cls(d["label"], int(d["total"]), int(d["zeros"]),
                   [(desc, gq(v)) for desc, v in d["failures"]], int(d["max_reduced_length"]))


def lemma_model(n: int, weights) -> tuple[TracialAlgebra, TracialAlgebra]:
    """The pair ``(C^{w_1} (+) ... (+) C^{w_m}, M_n)``."""
    if n < 2:
        raise HypothesisViolated("n >= 2 is required")
    A = mk_algebra([Matrix(1, w) for w in weights])
    B = mk_algebra([Matrix(n, 1)])
    return A, B


def _check_l(n: int, l):
    if l is None:
        return
    if not (1 < l < n and n % l == 0):
        raise HypothesisViolated(f"l must be a proper divisor of n with 1 < l < n (got n={n}, l={l})")


class _Sampler:
    """Random centered generators of the lemma's families."""

    def __init__(self, A, B, n, l, rng):
        self.A, self.B, self.n, self.l, self.rng = A, B, n, l, rng
        self.u = [shift(B, k) for k in range(n)]
        self.u_inv = [shift(B, -k) for k in range(n)]
        self.K = n if l is None else l

    def _ints(self, size):
        return [int(x) for x in self.rng.integers(-_COEFF_RANGE, _COEFF_RANGE + 1, size=size)]

    def abelian(self) -> Element:
        """Random trace-zero element of C*(p_1..p_m)."""
        while True:
            el = zero(self.A)
            for s, c in enumerate(self._ints(len(self.A)), 1):
                if c:
                    el = el + projection(self.A, s).scale(c)
            el = el.add_identity(-el.trace())
            if not el.is_zero():
                return el

    def matrix_family(self) -> Element:
        """Random trace-zero element of the diagonal (part i) or block algebra (part ii)."""
        n = self.n
        while True:
            if self.l is None:
                block = QMatrix.diagonal(self._ints(n))
            else:
                block = QMatrix.zeros(n)
                step = self.l
                for j in range(n // step):
                    diag = QMatrix.diagonal(self._ints(n))
                    block = block + diag @ QMatrix.cyclic_shift(n).power(j * step)
            el = embed(self.B, 1, block)
            el = el.add_identity(-el.trace())
            if not el.is_zero():
                return el

    def family_letters(self, fam) -> list[Letter]:
        if fam == "M":
            return [Letter(Side.RIGHT, self.matrix_family())]
        k = fam
        return [Letter(Side.RIGHT, self.u[k]), Letter(Side.LEFT, self.abelian()),
                Letter(Side.RIGHT, self.u_inv[k])]

    def families(self):
        return list(range(self.K)) + ["M"]

    def random_word(self, max_len):
        length = min(int(self.rng.geometric(1 / 3)), max_len)
        fams = self.families()
        seq = []
        for _ in range(length):
            choices = [f for f in fams if not seq or f != seq[-1]]
            seq.append(choices[int(self.rng.integers(len(choices)))])
        letters = []
        for f in seq:
            letters.extend(self.family_letters(f))
        return seq, letters


def verify_lemma31(m: int, n: int, weights, l: int | None = None, samples: int = 100,
                   max_len: int = 8, seed: int = 42) -> FreenessReport:
    """Sample centered alternating words and check ``tau(w u^r) == 0`` exactly.

    Part (i) (``l is None``): families ``u^k C*(p) u^-k`` for ``0 <= k < n``
    plus the diagonal of ``M_n``; ``0 <= r <= n-1``.  Part (ii): ``0 <= k < l``
    plus the algebra generated by the diagonal and ``u^l``; ``0 <= r <= l-1``.
    """
    weights = [as_fraction(w) for w in weights]
    if len(weights) != m:
        raise HypothesisViolated(f"expected {m} weights, got {len(weights)}")
    if not 1 <= max_len <= MAX_LEN_CAP:
        raise HypothesisViolated(f"max_len must lie in 1..{MAX_LEN_CAP}")
    _check_l(n, l)
    A, B = lemma_model(n, weights)
    rng = np.random.default_rng(seed)
    sampler = _Sampler(A, B, n, l, rng)
    label = f"lemma31({'i' if l is None else 'ii'}) m={m} n={n}" + ("" if l is None else f" l={l}")
    report = FreenessReport(label)
    for _ in range(samples):
        seq, letters = sampler.random_word(max_len)
        r = int(rng.integers(sampler.K))
        w = FreeWord(letters + [Letter(Side.RIGHT, sampler.u[r])])
        report.record(f"families={seq} r={r}", word_trace(w, A, B), len(w.reduced()))
    return report


def verify_corollary32(n: int, weights, spanning_words: int = 100, seed: int = 42,
                       l: int | None = None, max_len: int = 6) -> FreenessReport:
    """Check ``tau(b u^k) == 0`` for random products ``b`` of generators.

    ``b`` is a random product of the generators ``u^k p_s u^-k`` (``0 <= k < n``,
    resp. ``< l``) and ``e_ii`` (resp. also ``u^l``); every ``0 < k <= n-1``
    (resp. ``l-1``) is tested.  Each sample also checks the orthogonality
    ``tau(u^k2 b2 b1^* u^-k1) == 0`` for ``k1 != k2`` with an independent
    second product ``b2``.
    """
    weights = [as_fraction(w) for w in weights]
    _check_l(n, l)
    A, B = lemma_model(n, weights)
    m = len(weights)
    rng = np.random.default_rng(seed)
    K = n if l is None else l
    u = [shift(B, k) for k in range(n)]
    u_inv = [shift(B, -k) for k in range(n)]
    label = f"corollary32 n={n}" + ("" if l is None else f" l={l}")
    report = FreenessReport(label)

    gens: list[list[Letter]] = []
    for k in range(K):
        for s in range(1, m + 1):
            gens.append([Letter(Side.RIGHT, u[k]), Letter(Side.LEFT, projection(A, s)),
                         Letter(Side.RIGHT, u_inv[k])])
    for i in range(n):
        gens.append([Letter(Side.RIGHT, embed(B, 1, QMatrix.unit(n, i, i)))])
    if l is not None:
        for j in range(1, n // l):
            gens.append([Letter(Side.RIGHT, u[j * l])])

    def random_product():
        length = int(rng.integers(1, max_len + 1))
        picks = [int(rng.integers(len(gens))) for _ in range(length)]
        letters = [x for g in picks for x in gens[g]]
        return picks, FreeWord(letters)

    for _ in range(spanning_words):
        picks, b = random_product()
        for k in range(1, K):
            w = b + FreeWord([Letter(Side.RIGHT, u[k])])
            report.record(f"b={picks} k={k}", word_trace(w, A, B), len(w.reduced()))
        picks2, b2 = random_product()
        k1, k2 = (int(x) for x in rng.choice(K, size=2, replace=False))
        inner = (FreeWord([Letter(Side.RIGHT, u[k2])]) + b2 + b.adjoint()
                 + FreeWord([Letter(Side.RIGHT, u_inv[k1])]))
        report.record(f"<u^{k1} b{picks}, u^{k2} b{picks2}>", word_trace(inner, A, B),
                      len(inner.reduced()))
    return report


def haar_check(moments: dict, k_max: int) -> bool:
    """True iff ``moments[0] == 1`` and ``moments[k] == 0`` for ``0 < |k| <= k_max``.

    Missing moments count as a failure.
    """
    if moments.get(0) != 1:
        return False
    for k in range(1, k_max + 1):
        for kk in (k, -k):
            if kk not in moments or moments[kk] != 0:
                return False
    return True


def haar_moments(A: TracialAlgebra, k_max: int, i: int | None = None) -> dict:
    """Normalized moments ``tau(u^k p_i) / alpha_i`` of the Haar unitary of a diffuse summand."""
    from .elements import haar

    i = A.diffuse_index() if i is None else i
    if i is None:
        raise HypothesisViolated("algebra has no diffuse summand")
    w = A[i].weight
    other = mk_algebra([Matrix(1, 1)])
    out = {}
    for k in range(-k_max, k_max + 1):
        t = word_trace(FreeWord([Letter(Side.LEFT, haar(A, k, i))]), A, other)
        out[k] = t / w
    return out
