import math
from fractions import Fraction

import numpy as np
import pytest

from freeprod import AmbientTooSmall, Diffuse, Matrix, ShapeMismatch, mk_algebra
from freeprod.moments import FreeWord, Letter, Side, haar, parse_word, projection, word_trace
from freeprod.oracle import (
    MatrixModel,
    empirical_word_trace,
    empirical_word_traces,
    generic_position_trials,
    haar_unitary,
    intersection_rank,
    realize,
    trial_rngs,
    two_projection_spectrum,
)

F = Fraction
HALVES = mk_algebra([Matrix(1, "1/2"), Matrix(1, "1/2")])


def test_haar_unitary_is_unitary():
    rng = np.random.default_rng(0)
    U = haar_unitary(60, rng)
    assert np.max(np.abs(U @ U.conj().T - np.eye(60))) < 1e-12
    assert abs(abs(np.linalg.det(U)) - 1) < 1e-10


def test_haar_unitary_first_moment():
    vals = [np.trace(haar_unitary(200, r)) / 200 for r in trial_rngs(3, 200)]
    mean = np.mean(vals)
    stderr = np.std(vals, ddof=1) / math.sqrt(len(vals))
    assert abs(mean) <= 3 * stderr


def test_leading_columns_match_full_unitary():
    full = haar_unitary(30, np.random.default_rng(9))
    lead = haar_unitary(30, np.random.default_rng(9), columns=7)
    assert np.allclose(full[:, :7], lead)


@pytest.mark.parametrize("summands, N, mult", [
    ([Matrix(1, "1/2"), Matrix(1, "1/2")], 10, (5, 5)),
    ([Matrix(2, 1)], 10, (5,)),
    ([Matrix(1, "9/10"), Matrix(1, "1/10")], 20, (18, 2)),
])
def test_realize_examples(summands, N, mult):
    layout = realize(mk_algebra(summands), N)
    assert layout.multiplicities == mult
    assert sum(d * n for d, n in zip(layout.multiplicities, layout.sizes)) == N


def test_realize_rounding_bound():
    a = mk_algebra([Matrix(3, "1/7"), Matrix(1, "2/7"), Diffuse("4/7")])
    layout = realize(a, 101)
    for s, w, n in zip(a, layout.achieved_weights, layout.sizes):
        assert abs(w - s.weight) <= F(n, 101)


def test_realize_too_small():
    with pytest.raises(AmbientTooSmall):
        realize(mk_algebra([Matrix(1, "99/100"), Matrix(1, "1/100")]), 10)
    with pytest.raises(AmbientTooSmall):
        realize(mk_algebra([Matrix(2, 1)]), 3)


def test_operator_of_projection_and_diffuse():
    a = mk_algebra([Matrix(2, "1/2"), Diffuse("1/2")])
    layout = realize(a, 8)
    kind, diag = layout.operator(projection(a, 1))
    assert kind == "diag" and np.allclose(diag, layout.support_projection(1))
    kind, diag = layout.operator(haar(a))
    assert kind == "diag" and abs(diag.sum()) < 1e-12


def test_intersection_rank_examples():
    rng = np.random.default_rng(1)
    P = np.diag([1.0] * 7 + [0.0] * 3)
    U = haar_unitary(10, rng)
    Q = U[:, :8] @ U[:, :8].conj().T
    assert intersection_rank(P, Q) == 5
    assert intersection_rank(P, P) == 7
    Q3 = U[:, :3] @ U[:, :3].conj().T
    assert intersection_rank(P[:, :], Q3) == 0
    with pytest.raises(ShapeMismatch):
        intersection_rank(P, np.eye(4))


def test_generic_position_law():
    assert all(r.ok for r in generic_position_trials(N=12, trials=30, seed=4))


def test_empirical_trace_small():
    p = Letter(Side.LEFT, projection(HALVES, 1))
    q = Letter(Side.RIGHT, projection(HALVES, 1))
    e = empirical_word_trace(HALVES, HALVES, FreeWord([p, q]), N=200, trials=10, seed=1)
    assert abs(e.mean - 0.25) <= 3 * e.stderr + 4 / 200


def test_empirical_diffuse_letter_is_centered():
    A = mk_algebra([Diffuse(1)])
    w = FreeWord([Letter(Side.LEFT, haar(A))])
    e = empirical_word_trace(A, HALVES, w, N=100, trials=3, seed=2)
    assert abs(e.mean) < 1e-12


def test_empirical_matches_exact_on_mixed_words():
    A = mk_algebra([Matrix(1, "1/3"), Matrix(2, "2/3")])
    B = mk_algebra([Diffuse("1/2"), Matrix(2, "1/2")])
    texts = ["L:p1 R:p2", "L:e12 R:u L:e21 R:u^-1", "L:p1 R:e11 L:p2 R:e22 L:p1 R:p1"]
    words = [parse_word(t, A, B) for t in texts]
    emp = empirical_word_traces(A, B, words, N=300, trials=8, seed=5)
    Aa, Ba = emp[0].achieved_left, emp[0].achieved_right
    for t, w, e in zip(texts, words, emp):
        exact = complex(word_trace(parse_word(t, Aa, Ba), Aa, Ba))
        assert abs(e.mean - exact) <= 3 * e.stderr + len(w.reduced()) ** 2 / 300


def test_matrix_model_rotation_is_reproducible():
    a = MatrixModel.sample(HALVES, HALVES, 50, np.random.default_rng(3)).rotation()
    b = MatrixModel.sample(HALVES, HALVES, 50, np.random.default_rng(3)).rotation()
    assert np.array_equal(a, b)


def test_spectrum_reproducible_and_shaped():
    s1 = two_projection_spectrum(F(3, 4), F(1, 2), N=120, trials=4, seed=11)
    s2 = two_projection_spectrum(F(3, 4), F(1, 2), N=120, trials=4, seed=11)
    assert np.array_equal(s1.eigenvalues, s2.eigenvalues)
    assert s1.eigenvalues.shape == (480,)
    assert np.all((s1.eigenvalues >= 0) & (s1.eigenvalues <= 1))
    assert np.all(np.diff(s1.eigenvalues) >= 0)
    assert abs(s1.atom0_mass - 0.25) < 0.02 and abs(s1.atom1_mass - 0.25) < 0.02
    assert s1.to_csv().splitlines()[0] == "eigenvalue"


def test_seed_changes_output():
    a = two_projection_spectrum(F(1, 2), F(1, 2), N=60, trials=2, seed=1)
    b = two_projection_spectrum(F(1, 2), F(1, 2), N=60, trials=2, seed=2)
    assert not np.array_equal(a.eigenvalues, b.eigenvalues)
