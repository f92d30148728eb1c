from fractions import Fraction

import pytest

from freeprod import Diffuse, Matrix, mk_algebra
from freeprod.exact import gq
from freeprod.moments import WordSyntaxError, haar, parse_element, parse_word, projection, word_trace

HALVES = mk_algebra([Matrix(1, "1/2"), Matrix(1, "1/2")])
M2 = mk_algebra([Matrix(2, 1)])
MIXED = mk_algebra([Matrix(2, "1/2"), Diffuse("1/2")])


def test_alternating_projections():
    w = parse_word("L:p1 R:p1 L:p1 R:p1", HALVES, HALVES)
    assert len(w) == 4 and word_trace(w, HALVES, HALVES) == Fraction(3, 16)


def test_arithmetic_and_complex_scalars():
    x = parse_element("3/4*p1 - 1/2 + i*p2", HALVES)
    assert x.trace() == gq("-1/8+1/2i")


def test_center():
    assert parse_element("center(p1)", HALVES).trace() == 0
    assert parse_element("center(e11 + 2*e22)", M2).trace() == 0


def test_matrix_units_and_shift():
    a = parse_element("e(1,2)*e21", M2)
    b = parse_element("e11", M2)
    assert a == b
    assert parse_element("u^2", M2) == parse_element("1", M2)
    assert parse_element("u*u^-1", M2) == parse_element("1", M2)


def test_u_prefers_diffuse_summand_and_selector():
    assert parse_element("u^3", MIXED) == haar(MIXED, 3)
    assert parse_element("u@1", MIXED) != parse_element("u@2", MIXED)
    assert parse_element("e12@1", MIXED).trace() == 0


def test_conjugation_across_sides():
    A = mk_algebra([Matrix(1, "1/3"), Matrix(1, "2/3")])
    w = parse_word("R:u L:p1 R:u^-1 L:p1", A, M2)
    assert word_trace(w, A, M2) == Fraction(1, 9)


def test_haar_moments_via_syntax():
    D = mk_algebra([Diffuse(1)])
    for k in range(1, 4):
        assert word_trace(parse_word(f"L:u^{k}", D, M2), D, M2) == 0
    assert word_trace(parse_word("L:u^2*u^-2", D, M2), D, M2) == 1


def test_projection_power():
    assert parse_element("p1^3", HALVES) == projection(HALVES, 1)


def test_empty_word():
    assert len(parse_word("", HALVES, M2)) == 0


@pytest.mark.parametrize("text", [
    "p1 R:p1",          # missing side
    "L:p1 +",           # dangling operator
    "L:(p1",            # unbalanced
    "L:p3",             # index out of range
    "L:e12",            # no matrix summand
    "L:p1^-1",          # negative power of non-unitary
    "L:p1 ?",           # junk
    "R:e13",            # matrix unit out of range
])
def test_syntax_errors(text):
    with pytest.raises(WordSyntaxError):
        parse_word(text, HALVES, M2)
