"""Hypergeometric series and the period identities, with mpmath as the oracle."""

import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from kummer_sandwich.periods import (
    HypParams,
    half_argument,
    holomorphic_period_check,
    hyp2f1,
    quadratic_transformation_check,
)

F = Fraction
LAMBDAS = [2, F(5, 2), 3, 10]


def test_zero_argument():
    assert hyp2f1(F(1, 8), F(3, 8), 1, 0) == 1


def test_log_closed_form():
    assert abs(hyp2f1(1, 1, 2, 0.5) - 2 * math.log(2)) < 1e-12


def test_tolerance_halving_is_stable():
    assert abs(hyp2f1(F(1, 8), F(3, 8), 1, 0.1, tol=1e-12) - hyp2f1(F(1, 8), F(3, 8), 1, 0.1, tol=1e-15)) < 1e-12


@given(
    st.fractions(min_value=-3, max_value=3, max_denominator=8),
    st.fractions(min_value=-3, max_value=3, max_denominator=8),
    st.fractions(min_value=F(1, 8), max_value=4, max_denominator=8),
    st.floats(min_value=-0.9, max_value=0.9),
)
@settings(max_examples=60)
def test_series_matches_mpmath(a, b, c, z):
    ours = hyp2f1(a, b, c, z)
    theirs = complex(mpmath.hyp2f1(mpmath.mpf(a.numerator) / a.denominator, mpmath.mpf(b.numerator) / b.denominator,
                                   mpmath.mpf(c.numerator) / c.denominator, z))
    assert abs(ours - theirs) <= 1e-10 * max(1.0, abs(theirs))


@pytest.mark.parametrize("kwargs", [dict(c=0, z=0.1), dict(c=-2, z=0.1), dict(c=1, z=0.99)])
def test_parameter_validation(kwargs):
    with pytest.raises(ValueError):
        HypParams(F(1, 2), F(1, 2), F(kwargs["c"]), kwargs["z"])


def test_tolerance_floor():
    with pytest.raises(ValueError):
        hyp2f1(1, 1, 2, 0.5, tol=1e-20)


@pytest.mark.parametrize("lam", LAMBDAS)
def test_holomorphic_period(lam):
    report = holomorphic_period_check(lam)
    assert report.ok
    lv = float(F(lam))
    a = (1 - mpmath.sqrt(1 - 1 / mpmath.mpf(lv) ** 4)) / 2
    assert abs(report.lhs - float(mpmath.hyp2f1(0.25, 0.75, 1, a) ** 2)) < 1e-13


@pytest.mark.parametrize("lam", LAMBDAS)
@pytest.mark.parametrize("p, q", [(F(1, 8), F(3, 8)), (F(1, 4), F(1, 4)), (F(1, 4), F(3, 4))])
def test_quadratic_transformation(p, q, lam):
    assert quadratic_transformation_check(p, q, lam).ok


def test_large_lambda_limit():
    report = holomorphic_period_check(10**4)
    assert abs(report.lhs - 1) < 1e-12 and abs(report.rhs - 1) < 1e-12
    assert half_argument(10**4) < 1e-16


def test_lambda_must_exceed_one():
    with pytest.raises(ValueError):
        holomorphic_period_check(1)
