from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monoval.complex import DualComplex, WeightPoint
from monoval.core import parse_support
from monoval.corpus import random_polynomial, rng_for
from monoval.reports import random_L101_instance, random_subdivision_instance, subdivision_case
from monoval.subdivision import (
    SubdivisionError,
    barycentric_outside_star,
    covers_exactly,
    is_projective,
    special_subdivide,
    verify_L101,
)

F = Fraction


def edge():
    return DualComplex.simplex([1, 1])


def test_edge_example():
    pc, h, sig = special_subdivide(edge(), [0, 1], WeightPoint({0: F(1, 2), 1: F(1, 2)}), F(1, 2))
    xs = sorted(p[0] for p in pc.positions.values())
    assert xs == [0, F(1, 4), F(3, 4), 1]
    edges = sorted(sorted(pc.positions[i][0] for i in f) for f in pc.maximal_faces())
    assert edges == [[0, F(1, 4)], [F(1, 4), F(3, 4)], [F(3, 4), 1]]
    assert pc.is_simplicial() and is_projective(pc, h)


def test_figure_configuration_has_quadrilaterals():
    tri = DualComplex.simplex([1, 1, 1])
    pc, h, sig = special_subdivide(tri, [0, 1], WeightPoint({0: F(1, 2), 1: F(1, 2)}), F(1, 3))
    quads = [f for f in pc.maximal_faces() if len(f) == 4]
    assert len(quads) == 2
    for q in quads:
        assert 2 in q and pc.dim(q) == 2
    assert not pc.is_simplicial()
    assert is_projective(pc, h)
    refined = barycentric_outside_star(pc, sig)
    assert refined.is_simplicial()
    assert covers_exactly(pc, tri) and covers_exactly(refined, tri)


def test_maximal_face_adds_scaled_copy_and_collar():
    pc, _, sig = special_subdivide(edge(), [0, 1], WeightPoint({0: F(1, 3), 1: F(2, 3)}), F(1, 4))
    assert len(sig) == 2 and sig.isdisjoint({0, 1})
    assert sig in pc.faces


def test_trivial_subdivision_with_zero_function():
    from monoval.subdivision import PolyComplex

    cx = edge()
    pc = PolyComplex(tuple(cx.vertices), dict(cx.b), {0: (1, 0), 1: (0, 1)}, set(cx.faces))
    pc.carrier = {f: f for f in pc.faces}
    assert is_projective(pc, {0: 0, 1: 0})


def test_non_convex_function_is_rejected():
    pc, h, _ = special_subdivide(edge(), [0, 1], WeightPoint({0: F(1, 2), 1: F(1, 2)}), F(1, 2))
    values = {i: -h(pc.positions[i]) for i in pc.positions}
    ok, reasons = is_projective(pc, values, detail=True)
    assert not ok and reasons


def test_eps_must_be_inside_unit_interval():
    with pytest.raises(SubdivisionError):
        special_subdivide(edge(), [0], WeightPoint({0: 1}), 1)


def test_point_must_be_interior_to_sigma():
    with pytest.raises(SubdivisionError):
        special_subdivide(edge(), [0, 1], WeightPoint({0: 1}), F(1, 2))


def test_L101_monomial_is_exact():
    f = parse_support("x^2*y^3")
    rep = verify_L101((1, 1), (0, 1), WeightPoint({0: F(1, 2), 1: F(1, 2)}), F(1, 3), f)
    assert rep.status == "pass"


def test_L101_cusp_at_interior_point():
    f = parse_support("x^2 + y^3")
    rep = verify_L101((1, 1), (0, 1), WeightPoint({0: F(1, 2), 1: F(1, 2)}), F(1, 16), f)
    assert rep.precondition_ok and rep.identity_ok and rep.status == "pass"


def test_L101_large_eps_is_a_precondition_failure():
    # chi = min(2 t1, 3 t2) switches form between v = e_1 and e'_0 = (7/8, 1/8)
    f = parse_support("x^2 + y^3")
    rep = verify_L101((1, 1), (1,), WeightPoint({1: 1}), F(7, 8), f)
    assert rep.status == "precondition"
    assert not rep.precondition_ok


def test_L101_three_variables():
    f = parse_support("x^2 + y*z + z^3")
    rep = verify_L101((2, 3, 1), (0, 1, 2), WeightPoint({0: F(1, 6), 1: F(1, 9), 2: F(1, 3)}), F(1, 64), f)
    assert rep.status in ("pass", "precondition")
    assert rep.status != "fail"


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_L101_never_fails_when_preconditions_hold(seed):
    b, sigma, v, f = random_L101_instance(rng_for(seed))
    for k in range(1, 10):
        rep = verify_L101(b, sigma, v, F(1, 2**k), f)
        assert rep.status != "fail"
        if rep.precondition_ok:
            break


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_special_subdivisions_are_projective_and_refine_simplicially(seed):
    cx, sigma, v, eps = random_subdivision_instance(rng_for(seed))
    out = subdivision_case(cx, sigma, v, eps)
    assert out["projective"], out["reasons"]
    assert out["simplicial"] and out["star_preserved"]


@settings(max_examples=15)
@given(st.integers(0, 10**6))
def test_cells_cover_each_face_exactly(seed):
    cx, sigma, v, eps = random_subdivision_instance(rng_for(seed))
    pc, _, sig = special_subdivide(cx, sigma, v, eps)
    assert covers_exactly(pc, cx)
    assert covers_exactly(barycentric_outside_star(pc, sig), cx)
