from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from monoval.core import (
    INF,
    ArityError,
    Norm,
    ParseError,
    SupportSet,
    fmt,
    min_total_degree,
    norm_eval,
    parse_support,
    parse_vector,
)

from .strategies import polynomials, rationals


@pytest.mark.parametrize(
    "norm, v, expected",
    [
        (Norm.LINF, (Fraction(1, 2), -3), 3),
        (Norm.L1, (Fraction(1, 2), -3), Fraction(7, 2)),
        (Norm.LINF, (0, 0, 0), 0),
    ],
)
def test_norm_values(norm, v, expected):
    assert norm_eval(norm, v) == expected


def test_norm_of_empty_vector_is_an_arity_error():
    with pytest.raises(ArityError):
        norm_eval(Norm.L1, ())


def test_dual_norms_swap():
    assert Norm.L1.dual is Norm.LINF and Norm.LINF.dual is Norm.L1
    with pytest.raises(ParseError):
        Norm.parse("l2")


@pytest.mark.parametrize(
    "text, terms",
    [
        ("x^2 + x*y^3", {(2, 0): 1, (1, 3): 1}),
        ("x - x", {}),
        ("2*x + 3*x", {(1, 0): 5}),
        ("-1/2*y^2 + 1", {(0, 2): Fraction(-1, 2), (0, 0): 1}),
    ],
)
def test_parse_examples(text, terms):
    assert parse_support(text).terms == terms


@pytest.mark.parametrize("bad", ["x^", "x**2", "2x", "x^2 +", "", "q^2"])
def test_parse_rejects_malformed_input(bad):
    with pytest.raises((ParseError, ArityError)):
        parse_support(bad)


def test_order_examples():
    assert min_total_degree(parse_support("x^2 + x*y^3")) == 2
    assert min_total_degree(SupportSet.one(2)) == 0
    assert min_total_degree(SupportSet.zero(2)) == INF


def test_mixed_arity_arithmetic_is_rejected():
    with pytest.raises(ArityError):
        SupportSet.monomial((1, 0)) + SupportSet.monomial((1, 0, 0))


def test_parse_vector_and_fmt():
    assert parse_vector("1/2, 3") == (Fraction(1, 2), Fraction(3))
    with pytest.raises(ParseError):
        parse_vector("1,,2")
    assert fmt(Fraction(3, 6)) == "1/2" and fmt(4) == "4" and fmt(INF) == "inf"


@given(polynomials(m=3))
def test_serialize_round_trips(f):
    assert parse_support(f.serialize(), 3) == f


@given(polynomials(m=2))
def test_json_round_trips(f):
    assert SupportSet.from_json(f.to_json()) == f


@given(polynomials(m=2), polynomials(m=2))
def test_order_is_a_valuation(f, g):
    assert min_total_degree(f * g) == min_total_degree(f) + min_total_degree(g)
    s = f + g
    if not s.is_zero():
        assert min_total_degree(s) >= min(min_total_degree(f), min_total_degree(g))


@given(st.lists(rationals, min_size=1, max_size=5))
def test_norms_are_dual_pairing_bounds(v):
    # |<v, w>| <= |v|_1 |w|_inf for w = sign vector
    w = [1 if x >= 0 else -1 for x in v]
    assert sum(x * y for x, y in zip(v, w)) == norm_eval(Norm.L1, v)
    assert norm_eval(Norm.LINF, v) <= norm_eval(Norm.L1, v) <= len(v) * norm_eval(Norm.LINF, v)
