import json
from fractions import Fraction

import pytest
from hypothesis import given

from _gen import algebras
from freeprod import (
    Diffuse,
    EmptyAlgebra,
    Matrix,
    ShapeMismatch,
    WeightSumError,
    ZeroWeight,
    algebra_from_dict,
    algebra_from_json,
    algebra_to_json,
    ext_dim,
    mk_algebra,
    summand_trace,
)
from freeprod.algebra import common_denominator
from freeprod.exact import HaarPoly, QMatrix


def test_two_point_algebra():
    a = mk_algebra([Matrix(1, "9/10"), Matrix(1, Fraction(1, 10))])
    assert a.weights == (Fraction(9, 10), Fraction(1, 10))
    assert a.is_abelian()
    assert ext_dim(a).value == 2


def test_full_matrix_algebra():
    a = mk_algebra([Matrix(2, 1)])
    assert ext_dim(a).value == 4 and a.matrix_indices() == [1]


@pytest.mark.parametrize("summands, exc", [
    ([Matrix(1, "1/2"), Matrix(1, "1/3")], WeightSumError),
    ([Matrix(1, 1), Matrix(1, 0)], ZeroWeight),
    ([Matrix(1, "3/2"), Matrix(1, "-1/2")], ZeroWeight),
    ([], EmptyAlgebra),
])
def test_validation_errors(summands, exc):
    with pytest.raises(exc):
        mk_algebra(summands)


def test_float_weights_are_rejected():
    with pytest.raises(TypeError):
        mk_algebra([Matrix(1, 0.5), Matrix(1, 0.5)])


def test_diffuse_forces_infinite_dimension():
    a = mk_algebra([Diffuse("1/2"), Matrix(1, "1/2")])
    assert ext_dim(a).infinite and a.diffuse_index() == 1


def test_several_diffuse_summands_are_merged():
    with pytest.warns(UserWarning):
        a = mk_algebra([Diffuse("1/4"), Matrix(2, "1/2"), Diffuse("1/4", "E")])
    assert len(a) == 2 and a[1].weight == Fraction(1, 2)


def test_indexing_is_one_based():
    a = mk_algebra([Matrix(1, "1/3"), Matrix(2, "2/3")])
    assert a[2].n == 2
    with pytest.raises(IndexError):
        a[0]


def test_summand_trace():
    a = mk_algebra([Matrix(2, "1/2"), Diffuse("1/2")])
    assert summand_trace(a, 1, [[1, 0], [0, 0]]) == Fraction(1, 4)
    assert summand_trace(a, 2, HaarPoly({0: 2, 3: 1})) == 1
    with pytest.raises(ShapeMismatch):
        summand_trace(a, 1, QMatrix.identity(3))
    with pytest.raises(ShapeMismatch):
        summand_trace(a, 2, QMatrix.identity(2))


def test_json_weights_must_be_strings():
    with pytest.raises(TypeError):
        algebra_from_dict({"summands": [{"kind": "matrix", "n": 1, "weight": 1.0}]})
    with pytest.raises(ValueError):
        algebra_from_dict({"summands": [{"kind": "banana", "weight": "1"}]})


def test_common_denominator():
    assert common_denominator(mk_algebra([Matrix(1, "1/4"), Matrix(1, "1/6"), Matrix(1, "7/12")])) == 12


@given(algebras())
def test_json_round_trip(a):
    text = algebra_to_json(a)
    assert algebra_from_json(text) == a
    assert all(isinstance(s["weight"], str) for s in json.loads(text)["summands"])


@given(algebras())
def test_weights_sum_to_one(a):
    assert sum(a.weights) == 1
