from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monoval.core import SupportSet, dot, parse_support
from monoval.multiplicities import (
    IdealError,
    MonomialIdeal,
    alpha,
    closure_power_offset,
    colength,
    hat_order,
    hilbert_samuel,
    hilbert_samuel_oracle,
    ideal_power,
    integral_closure,
    lipschitz_experiment_D,
    lipschitz_experiment_E,
    linking_number,
    linking_number_brute,
    linking_number_limit,
    mixed_multiplicities,
    mixed_multiplicities_oracle,
    order,
    rees_valuations,
    valuation_ideal,
    volume,
    volume_oracle,
)
from monoval.polyhedra import in_newton_lp

from .strategies import polynomials, weight_vectors

F = Fraction
I = MonomialIdeal.parse


@st.composite
def primary_ideals(draw, m=2, max_exp=5):
    gens = [tuple(draw(st.integers(1, max_exp)) * int(i == j) for j in range(m)) for i in range(m)]
    gens += draw(st.lists(st.tuples(*[st.integers(0, max_exp)] * m).filter(any), max_size=3))
    return MonomialIdeal.from_generators(gens, m)


def _colength_brute(J: MonomialIdeal) -> int:
    box = [max(g[i] for g in J.gens) for i in range(J.arity)]
    return sum(1 for a in product(*(range(b) for b in box)) if not J.contains(a))


# ---------------------------------------------------------------- worked examples


def test_valuation_ideal_examples():
    assert valuation_ideal((1, 1), 2).gens == ((0, 2), (1, 1), (2, 0))
    assert valuation_ideal((1, 2), 2).gens == ((0, 1), (2, 0))
    assert valuation_ideal((1, 3), 0).gens == ((0, 0),)
    with pytest.raises(IdealError):
        valuation_ideal((1, 0), 2)


@pytest.mark.parametrize("text, n", [("x, y", 1), ("x^2, y", 2), ("x^2, x*y, y^3", 4)])
def test_colength_examples(text, n):
    assert colength(I(text)) == n


def test_colength_rejects_non_primary():
    with pytest.raises(IdealError):
        colength(I("x^2"))


def test_products():
    assert (I("x, y") * I("x, y")).gens == I("x^2, x*y, y^2").gens
    assert (I("x^2, y") * MonomialIdeal.unit(2)).gens == I("x^2, y").gens
    assert (I("x^2, y") ** 2).gens == I("x^4, x^2*y, y^2").gens


@pytest.mark.parametrize(
    "text, closed",
    [("x^2, y^2", "x^2, x*y, y^2"), ("x^2, x*y, y^2", "x^2, x*y, y^2"), ("x^3, y^2", "x^3, x^2*y, y^2")],
)
def test_integral_closure_examples(text, closed):
    assert integral_closure(I(text)).gens == I(closed).gens


def test_rees_valuation_examples():
    assert rees_valuations(I("x, y")) == [(1, 1)]
    assert rees_valuations(I("x^3, y^2")) == [(F(1, 3), F(1, 2))]
    assert rees_valuations(I("x^2, x*y, y^3")) == [(F(1, 2), F(1, 2)), (F(2, 3), F(1, 3))]


def test_order_examples():
    assert order(I("x, y"), parse_support("x^2 + x*y^3")) == 2
    assert hat_order(I("x, y"), parse_support("x^2 + x*y^3")) == 2
    J = I("x^3, y^2")
    assert order(J, parse_support("x*y")) == 0
    assert hat_order(J, parse_support("x*y")) == F(5, 6)


@pytest.mark.parametrize("text, e", [("x, y", 1), ("x^2, y^3", 6), ("x^2, x*y, y^3", 5)])
def test_multiplicity_examples(text, e):
    assert hilbert_samuel(I(text)) == e


def test_mixed_multiplicity_examples():
    assert mixed_multiplicities(I("x, y"), I("x, y")) == [1, 1, 1]
    assert mixed_multiplicities(I("x, y"), I("x, y^2")) == [1, 1, 2]


def test_alpha_examples():
    assert alpha((1, 1)).exact == (1, 1, 1)
    assert alpha((1, 2)).exact == (1, F(1, 2), F(1, 2))
    assert alpha((1, 2), oracle_levels=(64,)).oracle[64] == (1, F(1, 2), F(1, 2))


def test_volume_examples():
    assert volume((1, 1)) == 1 and volume((1, 2)) == F(1, 2) and volume((1, 1, 1)) == 1


def test_linking_number_examples():
    assert linking_number((1, 2), (1, 1)) == 2
    assert linking_number_brute((1, 2), (1, 1), 20) == 2
    # w(a(v, n)) / n -> 1 / beta(v / w)
    assert 1 / linking_number_limit((1, 2), (1, 1), 64) == F(1, 2)


def test_lipschitz_experiments_on_equal_points():
    rows = lipschitz_experiment_D([((1, 2), (1, 2), F(0))], 1)
    assert rows[0].ratios == (0, 0, 0) and rows[0].inclusion_ok
    rows = lipschitz_experiment_E([((1, 2), (2, 1), (1, 2), (2, 1), F(0), F(0))], 1)
    assert rows[0].ratio == 0 and rows[0].submultiplicative and rows[0].perturbation_ok


# ---------------------------------------------------------------- oracles and properties


@given(primary_ideals())
def test_colength_matches_enumeration(J):
    assert colength(J) == _colength_brute(J)


@given(primary_ideals(m=3, max_exp=3))
def test_colength_matches_enumeration_3d(J):
    assert colength(J) == _colength_brute(J)


@given(primary_ideals(max_exp=4))
def test_closure_is_the_lattice_points_of_the_newton_polyhedron(J):
    cl = integral_closure(J)
    box = [max(g[i] for g in J.gens) + 1 for i in range(2)]
    for a in product(*(range(b) for b in box)):
        assert cl.contains(a) == in_newton_lp(a, list(J.gens))


@settings(max_examples=25)
@given(primary_ideals(max_exp=3))
def test_multiplicity_matches_colength_growth(J):
    e = hilbert_samuel(J)
    # colength(J^n) = e n^2 / 2 + O(n)
    est = hilbert_samuel_oracle(J, 24)
    assert abs(est - e) <= e * F(1, 3)


@settings(max_examples=15)
@given(primary_ideals(max_exp=3), primary_ideals(max_exp=3))
def test_mixed_multiplicities_match_oracle(J, K):
    exact = mixed_multiplicities(J, K)
    est = mixed_multiplicities_oracle(J, K, 16)
    assert all(abs(a - b) <= max(a, 1) * F(1, 2) for a, b in zip(exact, est))
    # Teissier: e_1^2 <= e_0 e_2
    assert exact[1] ** 2 <= exact[0] * exact[2]


@given(primary_ideals(max_exp=4), polynomials(m=2, max_terms=4, vanishing=True))
def test_order_sandwich(J, f):
    o, h = order(J, f), hat_order(J, f)
    assert o <= h
    assert J.contains_poly(f) == (o >= 1)


@given(weight_vectors(2))
def test_alpha_is_inverse_max_then_volume(t):
    a = alpha(t)
    assert a.exact[0] == 1
    assert a.exact[1] * max(t) == 1
    assert a.exact[2] == volume(t) == 1 / (t[0] * t[1])
    assert a.teissier()


@given(weight_vectors(3, hi=2))
def test_alpha_in_three_variables(t):
    a = alpha(t)
    assert a.exact[1] * max(t) == 1 and a.exact[3] == volume(t) and a.teissier()


@given(weight_vectors(2), st.integers(1, 30))
def test_valuation_ideal_generators(t, n):
    J = valuation_ideal(t, n)
    assert all(dot(t, g) >= n for g in J.gens)
    # each generator is minimal: dropping one from any positive coordinate falls below n
    for g in J.gens:
        for i, x in enumerate(g):
            if x:
                h = tuple(y - int(j == i) for j, y in enumerate(g))
                assert dot(t, h) < n


@settings(max_examples=25)
@given(weight_vectors(2, lo=F(1, 3), hi=3))
def test_volume_counting_oracle(t):
    assert abs(volume_oracle(t, 200) - volume(t)) <= volume(t) / 20


@settings(max_examples=20)
@given(weight_vectors(2, lo=F(1, 2), hi=3), weight_vectors(2, lo=F(1, 2), hi=3))
def test_linking_number_three_ways(t, s):
    exact = linking_number(t, s)
    assert linking_number_brute(t, s, 20) == exact
    assert abs(linking_number_limit(t, s, 512) - exact) <= exact / 50


@given(weight_vectors(2), weight_vectors(2), weight_vectors(2))
def test_linking_number_is_submultiplicative(u, v, w):
    assert linking_number(u, w) <= linking_number(u, v) * linking_number(v, w)


@pytest.mark.parametrize("text, N", [("x, y", 0), ("x^2, x*y, y^3", 0), ("x^3, y^2", 1)])
def test_closure_offset_of_reference_ideals(text, N):
    assert max(closure_power_offset(I(text), n) for n in range(1, 21)) == N
