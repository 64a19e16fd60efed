from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from monoval.core import INF, ArityError, Norm, SupportSet, norm_eval, parse_support
from monoval.polyhedra import lp_minimize
from monoval.valuation import (
    PiecewiseAffineConcave,
    check_theoremA,
    chi_on_face,
    eval_valuation,
    extremal_points,
    np_membership,
    restricted_dual_norm,
)

from .strategies import exponents, multiplicities, polynomials, simplex_points

F = Fraction


def pa(*forms, b=(1, 1)):
    return PiecewiseAffineConcave(tuple((tuple(a), F(c)) for a, c in forms), b)


# ---------------------------------------------------------------- worked examples


def test_eval_examples():
    f = parse_support("x^2 + x*y^3")
    assert eval_valuation((F(1, 2), F(1, 2)), f) == 1
    assert eval_valuation((1, 0), f) == 1
    assert eval_valuation((1, 1), SupportSet.one(2)) == 0
    assert eval_valuation((1, 1), SupportSet.zero(2)) == INF


def test_chi_drops_dominated_forms():
    chi = chi_on_face(parse_support("x^2 + x*y^3 + x^2*y^2"))
    assert [a for a, _ in chi.forms] == [(1, 3), (2, 0)]
    assert len(chi_on_face(parse_support("x^3*y")).forms) == 1


@pytest.mark.parametrize(
    "pts, expected",
    [
        ([(2, 0), (1, 3), (2, 2)], [(1, 3), (2, 0)]),
        ([(5, 0)], [(5, 0)]),
        ([(1, 0), (0, 1), (1, 1)], [(0, 1), (1, 0)]),
    ],
)
def test_extremal_examples(pts, expected):
    assert extremal_points(SupportSet.from_exponents(pts)) == expected


def test_membership_examples():
    f = SupportSet.from_exponents([(2, 0), (1, 3)])
    for method in ("vertex", "lp", "facets"):
        assert np_membership((2, 2), f, method)
        assert not np_membership((0, 0), f, method)
        assert all(np_membership(a, f, method) for a in extremal_points(f))


def test_directional_derivative_example():
    chi = pa(((2, 0), 0), ((1, 3), 0))
    v = (F(1, 2), F(1, 2))
    assert chi.directional_derivative(v, (1, 0)) == 1
    assert chi.directional_derivative(v, v) == 0
    affine = pa(((2, 5), 1))
    assert affine.directional_derivative(v, (0, 1)) == affine((0, 1)) - affine(v)


def test_lipschitz_and_c01_examples():
    chi = pa(((1, 0), 0), ((0, 1), 0))
    assert chi.lipschitz_constant(Norm.LINF) == 1
    assert chi.sup_abs() == F(1, 2)
    assert chi.c01_norm(Norm.LINF) == F(3, 2)
    assert pa(((0, 0), 3)).lipschitz_constant() == 0
    assert pa(((0, 0), 3)).c01_norm() == 3


def test_single_vertex_face_has_zero_lipschitz_constant():
    assert PiecewiseAffineConcave(((( 4,), F(0)),), (2,)).lipschitz_constant() == 0


def test_theoremA_example_on_the_smooth_simplex():
    f = parse_support("x^2 + x*y^3")
    rows = check_theoremA(f, norm=Norm.LINF)
    full = [r for r in rows if r.face == (0, 1)][0]
    assert {norm_eval(Norm.L1, a) for a in extremal_points(f)} == {2, 4}
    assert full.ord0 == 2 and full.ratio == 2 and full.passed
    rows = {r.face: r for r in check_theoremA(parse_support("x^5"))}
    assert rows[(0, 1)].ratio == 1 and rows[(0,)].ratio == 1
    # x is a unit at the generic point of {x = 0}
    assert rows[(1,)].ratio == 0


def test_form_length_must_match_face():
    with pytest.raises(ArityError):
        pa(((1, 2, 3), 0))


# ---------------------------------------------------------------- oracles


def _dual_norm_lp(m, b, norm):
    """sup <m, w> over the unit ball with sum b w = 0, as an LP."""
    n = len(m)
    if norm is Norm.LINF:
        # w = u - 1, 0 <= u <= 2
        A = [list(b) + [0] * n] + [[int(i == j) for j in range(n)] + [int(i == j) for j in range(n)] for i in range(n)]
        rhs = [sum(b)] + [2] * n
        val, _ = lp_minimize([-x for x in m] + [0] * n, A, rhs)
        return -val - sum(m)
    # w = p - q, sum(p + q) <= 1
    A = [list(b) + [-x for x in b] + [0], [1] * (2 * n) + [1]]
    val, _ = lp_minimize([-x for x in m] + list(m) + [0], A, [0, 1])
    return -val


@given(
    st.integers(2, 4).flatmap(
        lambda n: st.tuples(
            st.lists(st.integers(-6, 6), min_size=n, max_size=n),
            st.lists(multiplicities, min_size=n, max_size=n),
        )
    ),
    st.sampled_from([Norm.L1, Norm.LINF]),
)
def test_restricted_dual_norm_matches_lp(data, norm):
    m, b = data
    assert restricted_dual_norm(m, b, norm) == _dual_norm_lp(m, b, norm)


def _face_with_point(m):
    return st.lists(multiplicities, min_size=m, max_size=m).flatmap(
        lambda b: st.tuples(st.just(tuple(b)), simplex_points(b), simplex_points(b))
    )


@given(polynomials(m=2), _face_with_point(2))
def test_chi_agrees_with_direct_evaluation(f, data):
    b, s, _ = data
    assert chi_on_face(f, b)(s) == eval_valuation(s, f)


@given(polynomials(m=3), _face_with_point(3), st.fractions(0, 1, max_denominator=10))
def test_chi_is_concave(f, data, lam):
    b, s, t = data
    chi = chi_on_face(f, b)
    mid = tuple(lam * x + (1 - lam) * y for x, y in zip(s, t))
    assert chi(mid) >= lam * chi(s) + (1 - lam) * chi(t)


@given(polynomials(m=3), _face_with_point(3))
def test_pruning_keeps_values(f, data):
    b, s, _ = data
    every = PiecewiseAffineConcave(tuple((a, F(0)) for a in f.terms), b)
    assert every(s) == every.prune()(s) == chi_on_face(f, b)(s)


@given(polynomials(m=2), st.tuples(multiplicities, multiplicities), st.sampled_from([Norm.L1, Norm.LINF]))
def test_lipschitz_on_an_edge_is_the_steepest_piece(f, b, norm):
    chi = chi_on_face(f, b)
    pts = chi.cell_vertices()
    slopes = [
        abs(chi(p) - chi(q)) / norm_eval(norm, [x - y for x, y in zip(p, q)])
        for p, q in zip(pts, pts[1:])
    ]
    assert chi.lipschitz_constant(norm) == max(slopes, default=F(0))


@given(polynomials(m=3), _face_with_point(3), st.sampled_from([Norm.L1, Norm.LINF]))
def test_difference_quotients_never_exceed_lipschitz(f, data, norm):
    b, s, t = data
    chi = chi_on_face(f, b)
    if s != t:
        assert abs(chi(s) - chi(t)) <= chi.lipschitz_constant(norm) * norm_eval(norm, [x - y for x, y in zip(s, t)])


@given(polynomials(m=2), _face_with_point(2))
def test_directional_derivative_is_a_limit_of_secants(f, data):
    b, v, w = data
    chi = chi_on_face(f, b)
    h = F(1, 2**30)
    secant = (chi(tuple(x + h * (y - x) for x, y in zip(v, w))) - chi(v)) / h
    assert secant == chi.directional_derivative(v, w)


@given(polynomials(m=2), _face_with_point(2), st.integers(1, 12))
def test_directional_derivative_is_lower_semicontinuous(f, data, k):
    b, v, w = data
    chi = chi_on_face(f, b)
    lip = max(restricted_dual_norm(a, b, Norm.L1) for a, _ in chi.forms) + max(sum(map(abs, a)) for a, _ in chi.forms)
    # v' moves towards the other vertex by delta
    other = tuple(F(int(i == 0)) / b[0] for i in range(2))
    delta = F(1, 2**k)
    vp = tuple(x + delta * (y - x) for x, y in zip(v, other))
    dist = norm_eval(Norm.L1, [x - y for x, y in zip(v, vp)])
    assert chi.directional_derivative(vp, w) >= chi.directional_derivative(v, w) - 4 * lip * dist


@given(exponents(3), polynomials(m=3))
def test_membership_methods_agree(beta, f):
    answers = {np_membership(beta, f, m) for m in ("vertex", "lp", "facets")}
    assert len(answers) == 1


@given(polynomials(m=2), polynomials(m=2), _face_with_point(2))
def test_chi_of_a_product_is_the_sum(f, g, data):
    b, s, _ = data
    assert chi_on_face(f * g, b)(s) == (chi_on_face(f, b) + chi_on_face(g, b))(s)
