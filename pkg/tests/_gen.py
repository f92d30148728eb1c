"""Random rational algebras for property tests."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from freeprod import Diffuse, Matrix, mk_algebra

DENOMINATORS = (2, 3, 4, 5, 6, 8, 9, 10, 12, 16, 25, 36, 60, 97, 100)


def _split(rng: random.Random, parts: int) -> list[Fraction]:
    den = rng.choice([d for d in DENOMINATORS if d >= parts])
    cuts = sorted(rng.sample(range(1, den), parts - 1))
    return [Fraction(b - a, den) for a, b in zip([0, *cuts], [*cuts, den])]


def random_algebra(rng: random.Random, max_summands: int = 4, diffuse_prob: float = 0.2):
    k = rng.randint(1, max_summands)
    sizes = [rng.choice((1, 1, 1, 2, 2, 3, 4)) for _ in range(k)]
    diffuse = rng.random() < diffuse_prob
    ws = _split(rng, k + diffuse)
    summands = [Matrix(n, w) for n, w in zip(sizes, ws)]
    if diffuse:
        summands.insert(rng.randrange(k + 1), Diffuse(ws[-1]))
    return mk_algebra(summands)


def boundary_pair(rng: random.Random):
    """A pair built so that some (i, j) has score exactly 1 when possible."""
    B = random_algebra(rng)
    mats = B.matrix_indices()
    if not mats:
        return random_algebra(rng), B
    j = rng.choice(mats)
    need = 1 - B[j].weight / B[j].n ** 2
    for n in rng.sample([1, 2, 3], 3):
        alpha = n * n * need
        if 0 < alpha < 1:
            rest = 1 - alpha
            others = [Matrix(rng.choice((1, 2)), rest / 2), Matrix(1, rest / 2)]
            return mk_algebra([Matrix(n, alpha), *others]), B
        if alpha == 1:
            return mk_algebra([Matrix(n, 1)]), B
    return random_algebra(rng), B


def random_pairs(seed: int, count: int, boundary_share: float = 0.2):
    rng = random.Random(seed)
    for _ in range(count):
        if rng.random() < boundary_share:
            yield boundary_pair(rng)
        else:
            yield random_algebra(rng), random_algebra(rng)


@st.composite
def algebras(draw, max_summands: int = 4, allow_diffuse: bool = True):
    k = draw(st.integers(1, max_summands))
    diffuse = allow_diffuse and draw(st.booleans()) and draw(st.booleans())
    parts = k + diffuse
    den = draw(st.sampled_from([d for d in DENOMINATORS if d >= parts]))
    cuts = sorted(draw(st.sets(st.integers(1, den - 1), min_size=parts - 1, max_size=parts - 1))) if parts > 1 else []
    ws = [Fraction(b - a, den) for a, b in zip([0, *cuts], [*cuts, den])]
    sizes = draw(st.lists(st.sampled_from((1, 1, 2, 3)), min_size=k, max_size=k))
    summands = [Matrix(n, w) for n, w in zip(sizes, ws)]
    if diffuse:
        summands.insert(draw(st.integers(0, k)), Diffuse(ws[-1]))
    return mk_algebra(summands)
