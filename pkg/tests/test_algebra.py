import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperbern.algebra import (
    BiPoly,
    PowerSeries,
    UniPoly,
    bipoly_shift_s,
    bipoly_subst_s,
    bipoly_subst_x,
    exp_series,
    format_rational,
    parse_rational,
    pochhammer,
    poly_derivative,
    poly_eval,
    poly_integral_weighted,
    rat,
    series_invert,
    series_mul,
    series_pow,
    series_truncate,
)
from oracles import beta_moment

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)


# --- rationals -------------------------------------------------------------


def test_rat_reduces():
    assert rat(2, 4) == Fraction(1, 2)


def test_rat_sign_normalization():
    q = rat(-3, -6)
    assert q == Fraction(1, 2)
    assert q.denominator > 0 and q.numerator == 1


def test_rat_zero():
    q = rat(0, 5)
    assert q.numerator == 0 and q.denominator == 1


def test_rat_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        rat(1, 0)


@given(rationals)
def test_rational_string_round_trip(q):
    assert parse_rational(format_rational(q)) == q


@pytest.mark.parametrize("bad", ["", "1.5", "1/0", "a/b", "1/-2", "1//2"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


# --- univariate polynomials ------------------------------------------------


def test_unipoly_canonical_form():
    assert UniPoly((1, 2, 0, 0)).coeffs == (1, 2)
    assert UniPoly((0, 0)).coeffs == ()
    assert UniPoly(()).degree is None
    assert UniPoly((0, 1)).degree == 1


def test_poly_eval_cases():
    b2 = UniPoly((Fraction(1, 6), -1, 1))  # x^2 - x + 1/6
    assert poly_eval(b2, 0) == Fraction(1, 6)
    assert poly_eval(UniPoly(()), 7) == 0
    assert poly_eval(UniPoly((-1, 1)), 1) == 0


def test_poly_derivative_cases():
    assert poly_derivative(UniPoly((0, 0, 0, 1))) == UniPoly((0, 0, 3))
    assert poly_derivative(UniPoly((5,))) == UniPoly(())
    # d/dx (x^2 - x + 1/6) = 2x - 1 = 2 * (x - 1/2)
    assert poly_derivative(UniPoly((Fraction(1, 6), -1, 1))) == UniPoly((-1, 2))


def test_poly_integral_weighted_cases():
    one = UniPoly((1,))
    assert poly_integral_weighted(one, 3) == Fraction(1, 3)
    assert poly_integral_weighted(one, 1) == 1
    assert poly_integral_weighted(UniPoly((Fraction(-1, 2), 1)), 1) == 0


@pytest.mark.parametrize("n_weight", range(1, 9))
def test_poly_integral_weighted_constant(n_weight):
    assert poly_integral_weighted(UniPoly((1,)), n_weight) == Fraction(1, n_weight)


@given(st.lists(rationals, max_size=6), st.integers(min_value=1, max_value=6))
def test_poly_integral_weighted_vs_beta_moments(coeffs, n_weight):
    p = UniPoly(tuple(coeffs))
    expected = sum(
        (c * beta_moment(k, n_weight) for k, c in enumerate(p.coeffs)), Fraction(0)
    )
    assert poly_integral_weighted(p, n_weight) == expected


@given(st.lists(rationals, max_size=8))
def test_derivative_then_antiderivative(coeffs):
    p = UniPoly(tuple(coeffs))
    d = poly_derivative(p)
    anti = UniPoly((Fraction(0),) + tuple(c / (k + 1) for k, c in enumerate(d.coeffs)))
    constant = UniPoly(p.coeffs[:1])
    assert anti == p - constant


# --- bivariate polynomials -------------------------------------------------


def test_bipoly_subst_s_cases():
    sx = BiPoly(((0, 0), (0, 1)))  # s*x
    assert bipoly_subst_s(sx, 2) == UniPoly((0, 2))
    s_minus_1 = BiPoly(((-1, 1),))
    assert bipoly_subst_s(s_minus_1, 1).is_zero


def test_bipoly_canonical_trim():
    a = BiPoly(((1, 0, 0), (0, 0, 0)))
    assert a.coeffs == ((Fraction(1),),)
    assert BiPoly(((0, 0),)).is_zero


@given(
    st.lists(st.lists(rationals, min_size=1, max_size=4), min_size=1, max_size=4),
    rationals,
    rationals,
    rationals,
)
def test_bipoly_shift_s_matches_direct_eval(rows, offset, x0, s0):
    a = BiPoly(tuple(tuple(r) for r in rows))
    shifted = bipoly_shift_s(a, offset)
    lhs = poly_eval(bipoly_subst_x(shifted, x0), s0)
    rhs = poly_eval(bipoly_subst_x(a, x0), s0 + offset)
    assert lhs == rhs


def test_bipoly_subst_x_at_zero_takes_first_row():
    a = BiPoly(((1, 2), (3, 4)))
    assert bipoly_subst_x(a, 0) == UniPoly((1, 2))


# --- power series ----------------------------------------------------------


def series(coeffs):
    return PowerSeries(tuple(Fraction(c) for c in coeffs))


def test_series_mul_cases():
    assert series_mul(series([1, 1, 0]), series([1, -1, 0])).coeffs == (1, 0, -1)
    a = series([2, 3, 5])
    assert series_mul(a, PowerSeries.one(2)) == a
    ee = series_mul(exp_series(3), exp_series(3))
    assert ee.coeffs == (1, 2, 2, Fraction(4, 3))


def test_series_mul_min_order():
    assert series_mul(series([1, 1, 1]), series([1, 1])).order == 1


def test_series_invert_geometric():
    assert series_invert(series([1, 1, 0, 0])).coeffs == (1, -1, 1, -1)
    assert series_invert(PowerSeries.one(3)) == PowerSeries.one(3)


def test_series_invert_known_table():
    a = series([1, Fraction(1, 3), Fraction(1, 12), Fraction(1, 60)])
    assert series_invert(a).coeffs == (
        1,
        Fraction(-1, 3),
        Fraction(1, 36),
        Fraction(1, 540),
    )


def test_series_invert_needs_unit():
    with pytest.raises(ZeroDivisionError):
        series_invert(series([0, 1]))


@given(st.lists(rationals, min_size=1, max_size=8))
def test_series_invert_is_right_inverse(coeffs):
    if coeffs[0] == 0:
        coeffs[0] = Fraction(1)
    a = series(coeffs)
    assert series_mul(a, series_invert(a)) == PowerSeries.one(a.order)


@given(st.lists(rationals, min_size=1, max_size=6), st.integers(min_value=0, max_value=8))
def test_series_pow_matches_repeated_mul(coeffs, r):
    a = series(coeffs)
    by_fold = PowerSeries.one(a.order)
    for _ in range(r):
        by_fold = series_mul(by_fold, a)
    assert series_pow(a, r) == by_fold


def test_series_pow_cases():
    a = series([1, 1, 0])
    assert series_pow(a, 0) == PowerSeries.one(2)
    assert series_pow(a, 1) == a
    assert series_pow(a, 2).coeffs == (1, 2, 1)


def test_series_truncate():
    a = series([1, 2, 3])
    assert series_truncate(a, 1).coeffs == (1, 2)
    with pytest.raises(ValueError):
        series_truncate(a, 5)


def test_exp_series_cases():
    assert exp_series(0).coeffs == (1,)
    assert exp_series(3).coeffs == (1, 1, Fraction(1, 2), Fraction(1, 6))
    assert exp_series(5).coeffs[5] == Fraction(1, 120)


def test_pochhammer_cases():
    assert pochhammer(Fraction(7, 3), 0) == 1
    assert pochhammer(1, 4) == 24
    assert pochhammer(3, 2) == 12


@given(st.lists(rationals, min_size=1, max_size=6), st.lists(rationals, min_size=1, max_size=6))
def test_results_are_canonically_reduced(a_coeffs, b_coeffs):
    prod = series_mul(series(a_coeffs), series(b_coeffs))
    for c in prod.coeffs:
        assert math.gcd(c.numerator, c.denominator) == 1
        assert c.denominator > 0
