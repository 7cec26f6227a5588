import itertools

import pytest
from hypothesis import given, strategies as st

from newton_schubert.exterior import (
    Multivector,
    Shape,
    combine,
    degree_functional,
    index_tuples,
    normalize,
    point_index,
    weight,
    wedge,
)


def test_normalize_examples():
    assert normalize((3, 1), Shape(2, 4)) == ((1, 3), -1)
    assert normalize((1, 1), Shape(2, 4)) is None
    assert normalize((1, 6), Shape(2, 4)) is None


def test_weight_examples():
    for k in range(1, 6):
        assert weight(tuple(range(1, k + 1))) == 0
    for k, n in [(2, 4), (3, 7), (4, 9)]:
        assert weight(point_index(Shape(k, n))) == k * (n - k)
    assert weight((1, 4)) == 2


@given(st.integers(1, 5).flatmap(lambda k: st.tuples(st.just(k), st.integers(k, 9))).flatmap(
    lambda kn: st.tuples(st.just(Shape(*kn)),
                         st.lists(st.integers(1, kn[1]), min_size=kn[0], max_size=kn[0], unique=True))))
def test_normalize_properties(data):
    shape, raw = data
    index, sign = normalize(raw, shape)
    assert normalize(index, shape) == (index, 1)
    assert weight(index) == sum(raw) - shape.k * (shape.k + 1) // 2
    # degree functional transforms by the permutation sign
    v = Multivector.basis(shape, raw)
    assert v.coefficient(index) == sign
    if index == point_index(shape):
        assert degree_functional(v) == sign
    else:
        assert degree_functional(v) == 0


def test_degree_functional_examples():
    s = Shape(2, 4)
    assert degree_functional(Multivector.basis(s, (3, 4))) == 1
    assert degree_functional(Multivector.basis(s, (1, 2))) == 0
    v = 5 * Multivector.basis(s, (3, 4)) - 2 * Multivector.basis(s, (2, 4))
    assert degree_functional(v) == 5
    assert degree_functional(Multivector.basis(s, (4, 3))) == -1


def test_combine_examples():
    s = Shape(2, 4)
    e13, e14 = Multivector.basis(s, (1, 3)), Multivector.basis(s, (1, 4))
    assert combine(e13, e13, 1, -1).is_zero()
    assert combine(e13, e14, 2, 3).terms == {(1, 3): 2, (1, 4): 3}
    v = combine(e13, e14, 7, -1)
    assert combine(v, Multivector.zero(s), 1, 1) == v
    with pytest.raises(ValueError):
        combine(e13, Multivector.basis(Shape(2, 5), (1, 3)))


def test_no_zero_coefficients_stored():
    s = Shape(2, 4)
    v = Multivector(s, {(1, 2): 0, (1, 3): 4})
    assert v.terms == {(1, 3): 4}
    with pytest.raises(ValueError):
        Multivector(s, {(2, 1): 1})


def test_textual_form_is_sorted_and_roundtrips():
    s = Shape(2, 4)
    v = Multivector(s, {(2, 4): -1, (1, 3): 2})
    assert str(v) == "+2 e[1,3] -1 e[2,4]"
    assert Multivector.parse(s, str(v)) == v
    assert str(Multivector.zero(s)) == "0"
    assert Multivector.parse(s, "0").is_zero()


def test_index_tuples_lexicographic():
    assert list(index_tuples(Shape(2, 4))) == list(itertools.combinations(range(1, 5), 2))
    assert list(index_tuples(Shape(2, 4), wt=2)) == [(1, 4), (2, 3)]


def test_wedge_signs():
    n = 5
    a = Multivector.basis(Shape(1, n), (3,))
    b = Multivector.basis(Shape(2, n), (1, 4))
    assert wedge(a, b).terms == {(1, 3, 4): -1}
    assert wedge(b, a).terms == {(1, 3, 4): -1}
    assert wedge(a, a).is_zero()


def test_shape_validation():
    with pytest.raises(ValueError):
        Shape(5, 4)
    with pytest.raises(ValueError):
        Shape(1, 0)
    assert Shape(3, 7).dimension == 12
