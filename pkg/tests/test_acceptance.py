"""Acceptance criteria 1-15.

Each ``test_criterion_NN_*`` maps to one criterion; the conftest prints a
PASS/FAIL line per criterion in the terminal summary.  Run alone with
``pytest tests/test_acceptance.py -v``.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from _gen import random_pairs
from freeprod import (
    DimensionHypothesisViolated,
    Matrix,
    decompose,
    decompose_by_induction,
    mk_algebra,
    two_projection_structure,
)
from freeprod.moments import FreeWord, Letter, Side, projection, verify_corollary32, verify_lemma31, word_trace
from freeprod.oracle import empirical_word_traces, generic_position_trials, two_projection_spectrum

DETAILS: dict[int, str] = {}

F = Fraction
SEED = 20240611
N, TRIALS = 1000, 50
PROPERTY_INPUTS = 1000


def _M2():
    return mk_algebra([Matrix(2, 1)])


def _pair(a, b):
    return mk_algebra([Matrix(1, a), Matrix(1, 1 - F(a))]), mk_algebra([Matrix(1, b), Matrix(1, 1 - F(b))])


def _timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


# -- golden exact cases ----------------------------------------------------

def test_criterion_01_scalars_times_m2_case_three():
    d, dt = _timed(lambda: decompose(mk_algebra([Matrix(1, "9/10"), Matrix(1, "1/10")]), _M2()))
    DETAILS[1] = f"gamma={d.gamma}, blocks={[(b.N, str(b.gamma)) for b in d.plus_blocks]}, {dt:.3f}s"
    assert d.gamma == F(2, 5)
    assert [(b.i, b.j, b.N, b.gamma) for b in d.plus_blocks] == [(1, 1, 2, F(3, 5))]
    assert d.boundary_maps == ()
    assert d.factor.simple is True and d.factor.unique_trace is True
    assert dt < 1


def test_criterion_02_boundary_case():
    d, dt = _timed(lambda: decompose(mk_algebra([Matrix(1, "3/4"), Matrix(1, "1/4")]), _M2()))
    DETAILS[2] = f"L0={[(b.i, b.j) for b in d.boundary_maps]}, kernel={d.kernel}, {dt:.3f}s"
    assert [(b.i, b.j, b.target_size) for b in d.boundary_maps] == [(1, 1, 2)]
    assert d.plus_blocks == ()
    assert d.factor.simple is False and d.factor.unique_trace is False
    assert d.kernel.simple and not d.kernel.unital and d.kernel.unique_trace
    from freeprod import render_report

    assert "0 → 𝔄₀₀ → 𝔄₀ → 𝕄₂ → 0; 𝔄₀₀ simple, nonunital, unique trace" in render_report(d)
    assert dt < 1


def test_criterion_03_m2_times_m2():
    d, dt = _timed(lambda: decompose(_M2(), _M2()))
    DETAILS[3] = f"L+={d.L_plus}, L0={d.L_zero}, {dt:.3f}s"
    assert d.plus_blocks == () and d.boundary_maps == ()
    assert d.gamma == 1
    assert d.factor.simple is True and d.factor.unique_trace is True
    assert dt < 1


def test_criterion_04_two_projection_atoms():
    t, dt = _timed(lambda: two_projection_structure(F(3, 4), F(1, 2)))
    DETAILS[4] = f"atoms=({t.atom_p_not_q}, {t.atom_p_and_q}), {dt:.3f}s"
    assert (t.atom_p_not_q, t.atom_p_and_q) == (F(1, 4), F(1, 4))
    assert dt < 1


# -- property suites -------------------------------------------------------

def _valid_pairs(seed):
    out = []
    for A, B in random_pairs(seed, 3 * PROPERTY_INPUTS):
        try:
            out.append((A, B, decompose(A, B)))
        except DimensionHypothesisViolated:
            continue
        if len(out) == PROPERTY_INPUTS:
            break
    assert len(out) == PROPERTY_INPUTS
    return out


@pytest.fixture(scope="module")
def property_inputs():
    t = time.perf_counter()
    cases = _valid_pairs(SEED)
    return cases, time.perf_counter() - t


def test_criterion_05_weight_conservation(property_inputs):
    cases, _ = property_inputs
    bad = [(A, B) for A, B, d in cases
           if not (d.gamma + sum(b.gamma for b in d.plus_blocks) == 1
                   and d.gamma > 0 and all(b.gamma > 0 for b in d.plus_blocks))]
    n_plus = sum(bool(d.plus_blocks) for *_, d in cases)
    n_zero = sum(bool(d.boundary_maps) for *_, d in cases)
    DETAILS[5] = f"{len(cases) - len(bad)}/{len(cases)} inputs ({n_plus} with L+, {n_zero} with L0)"
    assert not bad


def test_criterion_06_induction_agrees(property_inputs):
    cases, t0 = property_inputs
    t = time.perf_counter()
    bad = [(A, B) for A, B, d in cases if decompose_by_induction(A, B) != d]
    dt = time.perf_counter() - t + t0
    DETAILS[6] = f"{len(cases) - len(bad)}/{len(cases)} inputs agree field by field, {dt:.1f}s"
    assert not bad
    assert dt < 60


def test_criterion_07_swap_symmetry(property_inputs):
    cases, _ = property_inputs
    bad = [(A, B) for A, B, d in cases if decompose(B, A) != d.swapped()]
    DETAILS[7] = f"{len(cases) - len(bad)}/{len(cases)} inputs symmetric under swap"
    assert not bad


# -- exact freeness suite --------------------------------------------------

LEMMA_I = [(2, (F(1, 3), F(2, 3))), (3, (F(1, 5), F(3, 10), F(1, 2))), (4, (F(1, 4), F(1, 4), F(1, 2)))]
LEMMA_II = [(4, 2, (F(2, 5), F(3, 5))), (6, 2, (F(1, 6), F(1, 3), F(1, 2))), (6, 3, (F(1, 7), F(6, 7)))]


def test_criterion_08_lemma_part_one():
    t = time.perf_counter()
    reports = [verify_lemma31(len(w), n, w, samples=500, max_len=8, seed=SEED + n) for n, w in LEMMA_I]
    dt = time.perf_counter() - t
    DETAILS[8] = "; ".join(f"n={n}: {r.summary()}" for (n, _), r in zip(LEMMA_I, reports)) + f", {dt:.1f}s"
    assert all(r.passed and r.total == 500 for r in reports)


def test_criterion_09_lemma_part_two():
    t = time.perf_counter()
    reports = [verify_lemma31(len(w), n, w, l=l, samples=500, max_len=8, seed=SEED + 10 * n + l)
               for n, l, w in LEMMA_II]
    dt = time.perf_counter() - t
    DETAILS[9] = "; ".join(f"(n,l)=({n},{l}): {r.summary()}" for (n, l, _), r in zip(LEMMA_II, reports))
    DETAILS[9] += f", {dt:.1f}s"
    assert all(r.passed and r.total == 500 for r in reports)


def test_criterion_10_corollary():
    t = time.perf_counter()
    runs = [(3, None, (F(1, 3), F(2, 3))), (4, 2, (F(1, 4), F(3, 4)))]
    reports = [verify_corollary32(n, w, spanning_words=500, seed=SEED, l=l) for n, l, w in runs]
    dt = time.perf_counter() - t
    DETAILS[10] = "; ".join(r.summary() for r in reports) + f" (500 products b each), {dt:.1f}s"
    assert all(r.passed for r in reports)


def test_criterion_11_pqpq_exact():
    half = F(1, 2)
    A, B = _pair(half, half)
    p, q = Letter(Side.LEFT, projection(A, 1)), Letter(Side.RIGHT, projection(B, 1))
    value = word_trace(FreeWord([p, q, p, q]), A, B)
    a = b = half
    formula = a * a * b * (1 - b) + a * b * b * (1 - a) + a * a * b * b
    DETAILS[11] = f"tau(pqpq) = {value}"
    assert value == F(3, 16) == formula


# -- Monte Carlo suite -----------------------------------------------------

def _pq_power(A, B, k):
    p, q = Letter(Side.LEFT, projection(A, 1)), Letter(Side.RIGHT, projection(B, 1))
    return FreeWord([p, q] * k)


def test_criterion_12_empirical_pq_powers():
    A, B = _pair(F(1, 2), F(1, 2))
    words = [_pq_power(A, B, k) for k in range(1, 5)]
    emp = empirical_word_traces(A, B, words, N, TRIALS, SEED)
    Aa, Ba = emp[0].achieved_left, emp[0].achieved_right
    lines, ok = [], True
    for k, e in enumerate(emp, 1):
        exact = complex(word_trace(_pq_power(Aa, Ba, k), Aa, Ba))
        tol = 3 * e.stderr + 16 / N
        err = abs(e.mean - exact)
        ok = ok and err <= tol
        lines.append(f"k={k}: |{e.mean.real:.5f} - {exact.real:.5f}| = {err:.1e} <= {tol:.1e}")
    DETAILS[12] = "; ".join(lines)
    assert ok


def test_criterion_13_atom_at_one():
    s = two_projection_spectrum(F(7, 10), F(8, 10), N, TRIALS, SEED)
    target = float(two_projection_structure(F(8, 10), F(7, 10)).atom_p_and_q)
    tol = 2 / math.sqrt(N * TRIALS) + 2 / N
    DETAILS[13] = f"atom at 1 = {s.atom1_mass:.5f}, target {target}, tolerance {tol:.4f}"
    assert abs(s.atom1_mass - target) <= tol


def test_criterion_14_support_half_half():
    s = two_projection_spectrum(F(1, 2), F(1, 2), N, TRIALS, SEED)
    lo, hi = s.raw_range
    a, b = s.support
    DETAILS[14] = f"raw eigenvalues in [{lo:.2e}, {hi:.6f}], interior support [{a:.2e}, {b:.6f}]"
    assert -0.02 <= lo and hi <= 1.02
    assert a <= 0.05 and b >= 0.95


def test_criterion_15_generic_position_rank():
    res = generic_position_trials(N=40, trials=100, seed=SEED)
    good = sum(r.ok for r in res)
    DETAILS[15] = f"{good}/{len(res)} trials match max(0, rP + rQ - N) at N=40"
    assert good == len(res) == 100


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
