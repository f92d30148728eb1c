"""Random-matrix models of free products.

Both algebras are realized as block-diagonal subalgebras of ``M_N``.  The
right one is conjugated by an independent Haar unitary, which makes the two
asymptotically free as ``N`` grows.  Normalized traces of words, spectra of
``PQP`` and intersection ranks are then compared against the exact engines.

Every trial ``t`` of a run with master seed ``s`` draws from its own stream
``SeedSequence(s).spawn(trials)[t]``, so results do not depend on trial
scheduling.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import Matrix, TracialAlgebra, mk_algebra
from .errors import AmbientTooSmall, ShapeMismatch
from .moments.elements import Element, FreeWord, Letter, Side
from .structure.twoproj import normalize_pair

__all__ = [
    "haar_unitary",
    "BlockLayout",
    "realize",
    "MatrixModel",
    "EmpiricalTrace",
    "empirical_word_trace",
    "empirical_word_traces",
    "SpectralSample",
    "two_projection_spectrum",
    "intersection_rank",
    "RankTrial",
    "generic_position_trials",
    "trial_rngs",
    "ATOM_THRESHOLD",
    "SV_ONE_TOL",
]

ATOM_THRESHOLD = 1e-6
SV_ONE_TOL = 1e-8
CLIP_EPS = 1e-9


def trial_rngs(seed: int, trials: int) -> list[np.random.Generator]:
    """One independent generator per trial, derived from ``(seed, trial index)``."""
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(trials)]


def _ginibre(N: int, rng: np.random.Generator) -> np.ndarray:
    return (rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))) / math.sqrt(2)


def _orthonormalize(z: np.ndarray) -> np.ndarray:
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def haar_unitary(N: int, rng: np.random.Generator, columns: int | None = None) -> np.ndarray:
    """Haar-distributed ``N x N`` unitary via QR of a complex Ginibre matrix.

    The columns are rephased so that the triangular factor has a positive
    diagonal; without this the distribution is not Haar.  With ``columns``
    only the leading columns are returned (Gram-Schmidt only looks left, so
    they are the leading columns of the full unitary); the generator
    advances by the same amount either way.
    """
    if N < 1:
        raise ShapeMismatch("N must be positive")
    z = _ginibre(N, rng)
    return _orthonormalize(z if columns is None else z[:, :columns])


@dataclass(frozen=True)
class BlockLayout:
    """Summand ``i`` occupies ``M_{n_i} (x) 1_{d_i}`` on coordinates ``offsets[i] ..``."""

    algebra: TracialAlgebra
    N: int
    multiplicities: tuple[int, ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(s.n or 1 for s in self.algebra)

    @property
    def offsets(self) -> tuple[int, ...]:
        out, pos = [], 0
        for n, d in zip(self.sizes, self.multiplicities):
            out.append(pos)
            pos += n * d
        return tuple(out)

    @property
    def achieved_weights(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n * d, self.N) for n, d in zip(self.sizes, self.multiplicities))

    def achieved_algebra(self) -> TracialAlgebra:
        """The algebra with target weights replaced by achieved ones."""
        return mk_algebra([type(s)(w, s.n, s.label) for s, w in zip(self.algebra, self.achieved_weights)])

    def support_projection(self, i: int) -> np.ndarray:
        """Diagonal 0/1 vector of the support of summand ``i`` (1-based)."""
        v = np.zeros(self.N)
        o = self.offsets[i - 1]
        v[o:o + self.sizes[i - 1] * self.multiplicities[i - 1]] = 1.0
        return v

    def operator(self, el: Element):
        """Matrix of ``el``: ``("diag", vector)`` when diagonal, else ``("dense", matrix)``."""
        if el.algebra != self.algebra:
            raise ShapeMismatch("element does not belong to the realized algebra")
        diag = np.zeros(self.N, dtype=complex)
        dense = None
        for blk, s, d, o in zip(el.blocks, self.algebra, self.multiplicities, self.offsets):
            if s.is_diffuse:
                z = np.exp(2j * np.pi * np.arange(d) / d)
                vals = np.zeros(d, dtype=complex)
                for k, c in blk.coeffs:
                    vals += complex(c) * z ** k
                diag[o:o + d] = vals
                continue
            x = blk.to_numpy()
            n = s.n
            if np.count_nonzero(x - np.diag(np.diagonal(x))):
                if dense is None:
                    dense = np.zeros((self.N, self.N), dtype=complex)
                dense[o:o + n * d, o:o + n * d] = np.kron(x, np.eye(d))
            else:
                diag[o:o + n * d] = np.repeat(np.diagonal(x), d)
        if dense is None:
            return "diag", diag
        dense[np.diag_indices(self.N)] += diag
        return "dense", dense


def realize(a: TracialAlgebra, N: int) -> BlockLayout:
    """Block multiplicities ``d_i`` by largest-remainder rounding of ``alpha_i N / n_i``.

    Each multiplicity is the floor or the ceiling of its target, so achieved
    weights are within ``n_i / N`` of the targets.  Diffuse summands count
    as size 1.
    """
    if N < 1:
        raise AmbientTooSmall("N must be positive")
    sizes = [s.n or 1 for s in a]
    targets = [s.weight * N / n for s, n in zip(a, sizes)]
    mult = [math.floor(t) for t in targets]
    rest = N - sum(d * n for d, n in zip(mult, sizes))
    order = sorted(range(len(a)), key=lambda i: (-(targets[i] - mult[i]), i))
    for i in order:
        if rest == 0:
            break
        if sizes[i] <= rest and targets[i] > mult[i]:
            mult[i] += 1
            rest -= sizes[i]
    if rest:
        raise AmbientTooSmall(f"N={N} cannot be split into blocks of sizes {sizes} near the target weights")
    if any(d == 0 for d in mult):
        raise AmbientTooSmall(f"N={N} is too small: some summand gets no block ({mult})")
    return BlockLayout(a, N, tuple(mult))


def _mul(x, y):
    kx, ax = x
    ky, ay = y
    if kx == "diag" and ky == "diag":
        return "diag", ax * ay
    if kx == "diag":
        return "dense", ax[:, None] * ay
    if ky == "diag":
        return "dense", ax * ay[None, :]
    return "dense", ax @ ay


def _trace_of_product(x, y) -> complex:
    kx, ax = x
    ky, ay = y
    if kx == "diag" and ky == "diag":
        return complex(np.sum(ax * ay))
    if kx == "diag":
        return complex(np.sum(ax * np.diagonal(ay)))
    if ky == "diag":
        return complex(np.sum(np.diagonal(ax) * ay))
    return complex(np.sum(ax * ay.T))


class MatrixModel:
    """One finite-``N`` sample of ``A * B``: ``A`` block-diagonal, ``B`` conjugated by a Haar unitary.

    The rotation is drawn lazily: only as many leading columns as the
    right-hand letters touch are orthonormalized.
    """

    def __init__(self, N: int, left: BlockLayout, right: BlockLayout, gaussian: np.ndarray):
        self.N, self.left, self.right = N, left, right
        self._gaussian = gaussian
        self._rotation = None

    @classmethod
    def sample(cls, A: TracialAlgebra, B: TracialAlgebra, N: int, rng: np.random.Generator) -> "MatrixModel":
        return cls(N, realize(A, N), realize(B, N), _ginibre(N, rng))

    @property
    def achieved_weights(self) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
        return self.left.achieved_weights, self.right.achieved_weights

    def rotation(self, columns: int | None = None) -> np.ndarray:
        """Leading ``columns`` columns of the Haar rotation (all by default)."""
        c = self.N if columns is None else columns
        if self._rotation is None or self._rotation.shape[1] < c:
            self._rotation = _orthonormalize(self._gaussian[:, :c])
        return self._rotation

    def _right_raw(self, el: Element):
        kind, x = self.right.operator(el)
        if kind == "diag":
            nz = np.flatnonzero(x)
            return kind, x, (int(nz[-1]) + 1 if nz.size else 0)
        return kind, x, self.N

    def letter_operator(self, letter: Letter, cache: dict | None = None):
        key = (letter.side, letter.element.key())
        if cache is not None and key in cache:
            return cache[key]
        if letter.side is Side.LEFT:
            op = self.left.operator(letter.element)
        else:
            kind, x, c = self._right_raw(letter.element)
            if c == 0:
                op = ("diag", np.zeros(self.N, dtype=complex))
            elif kind == "diag":
                U = self.rotation(c)[:, :c]
                op = ("dense", (U * x[None, :c]) @ U.conj().T)
            else:
                U = self.rotation()
                op = ("dense", U @ x @ U.conj().T)
        if cache is not None:
            cache[key] = op
        return op

    def normalized_traces(self, words) -> list[complex]:
        """``(1/N) Tr`` of each realized word, sharing one rotation."""
        reduced = [list((w if isinstance(w, FreeWord) else FreeWord(w)).reduced()) for w in words]
        need = 0
        for letters in reduced:
            for l in letters:
                if l.side is Side.RIGHT:
                    need = max(need, self._right_raw(l.element)[2])
        if need:
            self.rotation(need)
        cache: dict = {}
        out = []
        for letters in reduced:
            if not letters:
                out.append(1.0 + 0j)
                continue
            ops = [self.letter_operator(l, cache) for l in letters]
            if len(ops) == 1:
                k, a = ops[0]
                out.append(complex((np.sum(a) if k == "diag" else np.trace(a)) / self.N))
                continue
            acc = ops[0]
            for op in ops[1:-1]:
                acc = _mul(acc, op)
            out.append(_trace_of_product(acc, ops[-1]) / self.N)
        return out

    def normalized_trace(self, w) -> complex:
        return self.normalized_traces([w])[0]


@dataclass(frozen=True)
class EmpiricalTrace:
    mean: complex
    stderr: float
    N: int
    trials: int
    seed: int
    achieved_left: TracialAlgebra
    achieved_right: TracialAlgebra

    def to_dict(self) -> dict:
        return {"mean_re": self.mean.real, "mean_im": self.mean.imag, "stderr": self.stderr,
                "N": self.N, "trials": self.trials, "seed": self.seed}


def empirical_word_traces(A: TracialAlgebra, B: TracialAlgebra, words, N: int = 1000,
                          trials: int = 50, seed: int = 42) -> list[EmpiricalTrace]:
    """:func:`empirical_word_trace` for several words sharing the same rotations."""
    left, right = realize(A, N), realize(B, N)
    words = list(words)
    vals = np.empty((trials, len(words)), dtype=complex)
    for t, rng in enumerate(trial_rngs(seed, trials)):
        model = MatrixModel(N, left, right, _ginibre(N, rng))
        vals[t] = model.normalized_traces(words)
    out = []
    for k in range(len(words)):
        mean = complex(vals[:, k].mean())
        stderr = float(np.std(vals[:, k], ddof=1) / math.sqrt(trials)) if trials > 1 else float("nan")
        out.append(EmpiricalTrace(mean, stderr, N, trials, seed,
                                  left.achieved_algebra(), right.achieved_algebra()))
    return out


def empirical_word_trace(A: TracialAlgebra, B: TracialAlgebra, w, N: int = 1000,
                         trials: int = 50, seed: int = 42) -> EmpiricalTrace:
    """Mean and standard error of ``(1/N) Tr(w)`` over independent Haar rotations.

    Compare against the exact trace at ``achieved_left``/``achieved_right``,
    the algebras with the rounded weights actually realized.
    """
    return empirical_word_traces(A, B, [w], N, trials, seed)[0]


@dataclass(frozen=True)
class SpectralSample:
    """Pooled eigenvalues of ``P Q P`` over all trials (``N`` per trial, sorted).

    ``p_rank`` is the rank of ``P``; eigenvalues on ``ran(1 - P)`` are exact zeros.
    """

    eigenvalues: np.ndarray
    N: int
    trials: int
    seed: int
    p_rank: int
    q_rank: int
    threshold: float = ATOM_THRESHOLD
    raw_range: tuple[float, float] | None = None  # extreme eigenvalues before clipping

    @property
    def achieved_alpha(self) -> Fraction:
        return Fraction(self.p_rank, self.N)

    @property
    def achieved_beta(self) -> Fraction:
        return Fraction(self.q_rank, self.N)

    def _count(self, mask) -> float:
        return float(np.count_nonzero(mask)) / (self.N * self.trials)

    @property
    def atom1_mass(self) -> float:
        """Estimate of ``tau(p ∧ q)``."""
        return self._count(self.eigenvalues > 1 - self.threshold)

    @property
    def atom0_mass(self) -> float:
        """Estimate of ``tau(p ∧ (1 - q))``: zero eigenvalues on ``ran P``."""
        zeros = self._count(self.eigenvalues < self.threshold)
        return zeros - (self.N - self.p_rank) / self.N

    @property
    def continuous_mass(self) -> float:
        e = self.eigenvalues
        return self._count((e >= self.threshold) & (e <= 1 - self.threshold))

    @property
    def support(self) -> tuple[float, float] | None:
        e = self.eigenvalues
        inner = e[(e >= self.threshold) & (e <= 1 - self.threshold)]
        if inner.size == 0:
            return None
        return float(inner.min()), float(inner.max())

    @property
    def atom_stderr(self) -> float:
        """Binomial-scale error bar ``1/sqrt(N trials)`` for the mass estimates."""
        return 1.0 / math.sqrt(self.N * self.trials)

    def summary(self) -> dict:
        sup = self.support
        return {
            "atom1_mass": self.atom1_mass,
            "atom0_mass": self.atom0_mass,
            "continuous_mass": self.continuous_mass,
            "support": None if sup is None else list(sup),
            "stderr": self.atom_stderr,
            "raw_range": None if self.raw_range is None else list(self.raw_range),
            "N": self.N,
            "trials": self.trials,
            "seed": self.seed,
            "achieved_alpha": f"{self.achieved_alpha.numerator}/{self.achieved_alpha.denominator}",
            "achieved_beta": f"{self.achieved_beta.numerator}/{self.achieved_beta.denominator}",
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["eigenvalue"])
        for x in self.eigenvalues:
            w.writerow([repr(float(x))])
        return buf.getvalue()


def two_projection_spectrum(alpha, beta, N: int = 1000, trials: int = 50, seed: int = 42) -> SpectralSample:
    """Eigenvalues of ``P Q~ P`` with ``Q~ = U Q U*`` for a Haar unitary ``U``.

    ``P`` and ``Q`` are diagonal projections of ranks realizing ``alpha`` and
    ``beta``.  Eigenvalues on ``ran P`` come from the compressed block
    ``Q~[P, P]``; the rest are exact zeros.  Values are clipped to
    ``[-1e-9, 1 + 1e-9]`` and then clamped into ``[0, 1]``; the extremes
    before clipping are kept in ``raw_range``.
    """
    normalize_pair(alpha, beta)  # domain check only
    pl = realize(mk_algebra([Matrix(1, alpha), Matrix(1, 1 - Fraction(alpha))]), N)
    ql = realize(mk_algebra([Matrix(1, beta), Matrix(1, 1 - Fraction(beta))]), N)
    rp, rq = pl.multiplicities[0], ql.multiplicities[0]
    out = []
    lo, hi = (0.0, 0.0) if rp < N else (math.inf, -math.inf)  # padded zeros count
    for rng in trial_rngs(seed, trials):
        Ur = haar_unitary(N, rng, columns=rq)
        block = Ur[:rp, :] @ Ur[:rp, :].conj().T
        ev = np.linalg.eigvalsh(block)
        lo, hi = min(lo, float(ev[0])), max(hi, float(ev[-1]))
        ev = np.clip(ev, -CLIP_EPS, 1 + CLIP_EPS)
        out.append(np.clip(ev, 0.0, 1.0))
        out.append(np.zeros(N - rp))
    eig = np.sort(np.concatenate(out))
    return SpectralSample(eig, N, trials, seed, rp, rq, raw_range=(lo, hi))


def intersection_rank(P: np.ndarray, Q: np.ndarray, tol: float = SV_ONE_TOL) -> int:
    """``dim(ran P ∩ ran Q)``: number of singular values of ``PQ`` equal to 1 within ``tol``."""
    P, Q = np.asarray(P), np.asarray(Q)
    if P.ndim != 2 or P.shape[0] != P.shape[1] or P.shape != Q.shape:
        raise ShapeMismatch(f"projections must be square of equal shape, got {P.shape} and {Q.shape}")
    s = np.linalg.svd(P @ Q, compute_uv=False)
    return int(np.count_nonzero(np.abs(s - 1) <= tol))


@dataclass(frozen=True)
class RankTrial:
    N: int
    p_rank: int
    q_rank: int
    observed: int

    @property
    def predicted(self) -> int:
        return max(0, self.p_rank + self.q_rank - self.N)

    @property
    def ok(self) -> bool:
        return self.observed == self.predicted


def generic_position_trials(N: int = 40, trials: int = 100, seed: int = 42) -> list[RankTrial]:
    """Check ``dim(ran P ∩ ran UQU*) = max(0, rank P + rank Q - N)`` on random ranks.

    Each trial draws ``rank P`` and ``rank Q`` uniformly from ``1..N-1`` and a
    fresh Haar unitary ``U``.
    """
    out = []
    for rng in trial_rngs(seed, trials):
        rp, rq = (int(x) for x in rng.integers(1, N, size=2))
        U = haar_unitary(N, rng)
        P = np.diag((np.arange(N) < rp).astype(float))
        Uq = U[:, :rq]
        Q = Uq @ Uq.conj().T
        out.append(RankTrial(N, rp, rq, intersection_rank(P, Q)))
    return out
