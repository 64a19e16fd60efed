from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from monoval.polyhedra import (
    UnsupportedDimension,
    covolume,
    det,
    hull2d,
    in_newton,
    in_newton_lp,
    lp_minimize,
    minimal_elements,
    newton_facets,
    newton_vertices,
    polygon_area,
    rank,
    solve,
)

from .strategies import exponents

point_sets_2d = st.lists(exponents(2), min_size=1, max_size=7, unique=True)
point_sets_3d = st.lists(exponents(3), min_size=1, max_size=5, unique=True)


def test_vertices_drop_dominated_point():
    assert newton_vertices([(2, 0), (1, 3), (2, 2)], 2) == [(1, 3), (2, 0)]


def test_vertices_drop_point_above_a_segment():
    assert newton_vertices([(1, 0), (0, 1), (1, 1)], 2) == [(0, 1), (1, 0)]
    assert newton_vertices([(4, 0), (2, 2), (0, 4)], 2) == [(0, 4), (4, 0)]


@pytest.mark.parametrize(
    "gens, m, expected",
    [
        ([(1, 0), (0, 1)], 2, Fraction(1, 2)),
        ([(2, 0), (0, 3)], 2, 3),
        ([(2, 0), (1, 1), (0, 3)], 2, Fraction(5, 2)),
        ([(1, 0, 0), (0, 1, 0), (0, 0, 1)], 3, Fraction(1, 6)),
    ],
)
def test_covolume_examples(gens, m, expected):
    assert covolume(gens, m) == expected


def test_covolume_needs_low_dimension():
    with pytest.raises(UnsupportedDimension):
        covolume([tuple(int(i == j) for j in range(4)) for i in range(4)], 4)


def test_linear_algebra():
    assert det([[2, 1], [1, 1]]) == 1
    assert solve([[2, 1], [1, 1]], [3, 2]) == (1, 1)
    assert solve([[1, 2], [2, 4]], [1, 2]) is None
    assert rank([(1, 2, 3), (2, 4, 6), (0, 1, 0)]) == 2


def test_lp_small_example():
    # min x + 2y with x + y = 1, x, y >= 0 -> 1 at (1, 0)
    value, x = lp_minimize([1, 2], [[1, 1]], [1])
    assert value == 1 and x == (1, 0)
    assert lp_minimize([1, 1], [[1, 1], [1, 1]], [1, 2]) is None


def _brute_lp(c, A, b):
    """Minimum over basic feasible solutions."""
    n = len(c)
    best = None
    for cols in combinations(range(n), len(A)):
        sub = [[row[j] for j in cols] for row in A]
        sol = solve(sub, b)
        if sol is None or any(v < 0 for v in sol):
            continue
        x = [Fraction(0)] * n
        for j, v in zip(cols, sol):
            x[j] = v
        val = sum(ci * xi for ci, xi in zip(c, x))
        best = val if best is None else min(best, val)
    return best


@given(
    st.lists(st.integers(-3, 3), min_size=4, max_size=4),
    st.lists(st.lists(st.integers(0, 3), min_size=4, max_size=4), min_size=2, max_size=2),
    st.lists(st.integers(1, 4), min_size=2, max_size=2),
)
def test_lp_matches_vertex_enumeration(c, A, b):
    assume(rank(A) == 2)
    # nonnegative rows with positive rhs keep the feasible set bounded when every column is used
    assume(all(any(row[j] for row in A) for j in range(4)))
    got = lp_minimize(c, A, b)
    want = _brute_lp(c, A, b)
    assert (got is None) == (want is None)
    if got is not None:
        assert got[0] == want


def _complement_area(verts):
    """Shoelace area of the region under the staircase hull of 2D extremal points."""
    pts = sorted(verts)  # increasing first coordinate, decreasing second
    poly = [(0, 0), (pts[-1][0], 0)] + pts[::-1] + [(0, pts[0][1])]
    return polygon_area(poly)


@given(point_sets_2d)
def test_covolume_2d_matches_shoelace(pts):
    pts = pts + [(9, 0), (0, 9)]
    verts = newton_vertices(pts, 2)
    assert covolume(pts, 2) == _complement_area(verts)


@given(point_sets_2d)
def test_vertices_are_exactly_the_non_redundant_points(pts):
    verts = set(newton_vertices(pts, 2))
    for p in set(map(tuple, pts)):
        others = [q for q in pts if tuple(q) != p]
        redundant = bool(others) and in_newton_lp(p, others)
        assert (tuple(Fraction(x) for x in p) in verts) != redundant


@given(point_sets_3d, exponents(3))
def test_facet_membership_matches_lp(pts, beta):
    facets = newton_facets(pts, 3)
    assert in_newton(beta, facets) == in_newton_lp(beta, pts)


@given(point_sets_2d)
def test_minimal_elements_are_antichain(pts):
    mins = minimal_elements(pts)
    for a, b in combinations(mins, 2):
        assert not all(x >= y for x, y in zip(a, b)) and not all(y >= x for x, y in zip(a, b))
    for p in pts:
        assert any(all(x >= y for x, y in zip(p, q)) for q in mins)


def test_hull2d_square():
    hull = hull2d([(0, 0), (1, 0), (1, 1), (0, 1), (Fraction(1, 2), Fraction(1, 2))])
    assert len(hull) == 4 and polygon_area(hull) == 1
