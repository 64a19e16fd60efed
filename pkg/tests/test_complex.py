from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from monoval.complex import ComplexError, DualComplex, WeightPoint
from monoval.core import Norm

from .strategies import multiplicities, simplex_points


def triangle(b=(1, 1, 1)):
    return DualComplex.from_maximal({1: b[0], 2: b[1], 3: b[2]}, [[1, 2, 3]])


def test_full_triangle_validates():
    assert triangle().validate() == []


def test_missing_subface_is_reported():
    cx = DualComplex({1: 1, 2: 1, 3: 1}, [frozenset(s) for s in ([1], [2], [3], [1, 2, 3])])
    errors = cx.validate()
    assert any("closed" in e or "subface" in e or "downward" in e for e in errors)
    with pytest.raises(ComplexError):
        cx.check()


def test_disconnected_complex_is_reported():
    cx = DualComplex.from_maximal({1: 1, 2: 1, 3: 1, 4: 1}, [[1, 2], [3, 4]])
    assert any("connect" in e for e in cx.validate())


def test_bad_multiplicity_is_reported():
    assert DualComplex.from_maximal({1: 0, 2: 1}, [[1, 2]]).validate()


@pytest.mark.parametrize(
    "b, coords, t",
    [
        ((1, 2), (Fraction(1, 2), Fraction(1, 2)), (Fraction(1, 2), Fraction(1, 4))),
        ((1, 1), (1, 0), (1, 0)),
        ((3,), (1,), (Fraction(1, 3),)),
    ],
)
def test_barycentric_examples(b, coords, t):
    cx = DualComplex.simplex(list(b))
    p = cx.from_barycentric(list(range(len(b))), coords)
    assert tuple(p[i] for i in range(len(b))) == t


def test_star_examples():
    path = DualComplex.from_maximal({1: 1, 2: 1, 3: 1}, [[1, 2], [2, 3]])
    L, faces = path.star([2])
    assert L == {1, 2, 3}
    assert faces == [frozenset([2]), frozenset([1, 2]), frozenset([2, 3])]
    L, faces = path.star([1, 2])
    assert L == {1, 2} and faces == [frozenset([1, 2])]
    L, _ = triangle().star([1, 2])
    assert L == {1, 2, 3}
    L, _ = DualComplex.from_maximal({1: 1, 2: 1, 3: 1}, [[1, 2], [2, 3], [1, 3]]).star([1, 2])
    assert L == {1, 2}


def test_divisor_examples():
    cx = DualComplex.simplex([1, 2])
    p = WeightPoint({0: Fraction(1, 2), 1: Fraction(1, 4)})
    assert cx.eval_divisor(p, cx.Z()) == 1
    assert cx.eval_divisor(cx.vertex_point(1), {1: 1}) == Fraction(1, 2)
    assert cx.eval_divisor(p, {0: 3, 1: -1}) == Fraction(5, 4)


def test_negative_weights_are_rejected():
    with pytest.raises(ComplexError):
        WeightPoint({0: -1})


@given(st.lists(multiplicities, min_size=2, max_size=4).flatmap(lambda b: st.tuples(st.just(b), simplex_points(b))))
def test_simplex_points_satisfy_normalisation(data):
    b, t = data
    cx = DualComplex.simplex(b)
    p = WeightPoint(dict(enumerate(t)))
    assert cx.contains(p)
    assert sum(cx.barycentric(p).values()) == 1
    assert cx.eval_divisor(p, cx.Z()) == 1


@given(st.lists(multiplicities, min_size=2, max_size=3).flatmap(
    lambda b: st.tuples(st.just(b), simplex_points(b), simplex_points(b), st.fractions(0, 1, max_denominator=8))
))
def test_segments_stay_in_the_face(data):
    b, s, t, lam = data
    cx = DualComplex.simplex(b)
    p, q = WeightPoint(dict(enumerate(s))), WeightPoint(dict(enumerate(t)))
    r = p.combine(q, lam)
    assert cx.contains(r)
    assert cx.distance(p, r, Norm.LINF) == lam * cx.distance(p, q, Norm.LINF)


def test_json_round_trip():
    cx = DualComplex.from_maximal({1: 2, 2: 1, 3: 1}, [[1, 2], [2, 3]])
    assert DualComplex.from_json(cx.to_json()) == cx
