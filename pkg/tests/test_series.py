from fractions import Fraction

import mpmath
import pytest

from franelab.exact import harmonic
from franelab.series import (
    FixedPointDecimal,
    cross_series_agreement,
    default_terms,
    eval_series,
    partial_sum,
    pi_squared_over_18,
    pi_squared_over_18_interval,
    series_term,
    tail_bound,
)


def mp_pi2_18(digits):
    with mpmath.workdps(digits + 30):
        return Fraction(mpmath.nstr(mpmath.pi**2 / 18, digits + 25, strip_zeros=False))


def test_pi_examples():
    assert str(pi_squared_over_18(10)) == "0.5483113556"
    assert str(pi_squared_over_18(1)) == "0.5"


def test_pi_prefix_property():
    d50 = str(pi_squared_over_18(50))
    for d in (1, 10, 25, 49):
        assert d50.startswith(str(pi_squared_over_18(d)))


@pytest.mark.parametrize("digits", [1, 10, 30, 50, 120, 200])
def test_pi_matches_mpmath(digits):
    ref = mp_pi2_18(digits)
    got = pi_squared_over_18(digits)
    assert got.scaled == int(ref * 10**digits)
    lo, hi = pi_squared_over_18_interval(digits)
    assert lo <= ref <= hi and hi - lo < Fraction(1, 10**digits)


def test_pi_digit_range():
    for bad in (0, 201):
        with pytest.raises(ValueError):
            pi_squared_over_18(bad)


def test_fixed_point_decimal():
    x = FixedPointDecimal.from_fraction(Fraction(197, 360), 10)
    assert str(x) == "0.5472222222" and x.error == 1
    assert str(FixedPointDecimal.from_fraction(Fraction(1, 2), 3)) == "0.500"
    assert FixedPointDecimal.from_fraction(Fraction(1, 2), 3).error == 0
    assert str(abs(FixedPointDecimal(-5, 2))) == "0.05"
    assert x.truncate(3).scaled == 547


def test_aa1_examples():
    assert partial_sum("aa1", 1) == Fraction(1, 2)
    assert partial_sum("aa1", 3) == Fraction(197, 360)
    ev = eval_series("aa1", 3, 10)
    assert str(ev.partial_decimal) == "0.5472222222"
    ev1 = eval_series("aa1", 1, 10)
    assert ev1.within_bound
    assert abs(float(ev1.deviation) - 0.0483113556) < 1e-9


def test_a1_first_term():
    assert series_term("a1", 1) == Fraction(2, 3)


def test_a1_default_precision():
    ev = eval_series("a1", None, 25)
    assert ev.terms == default_terms("a1", 25)
    assert ev.deviation * 10**25 < 1
    assert ev.within_bound


@pytest.mark.parametrize("K", [5, 10, 20, 40, 60])
@pytest.mark.parametrize("sid", ["a1", "aa1"])
def test_bound_compliance(sid, K):
    ref = mp_pi2_18(80)
    assert abs(partial_sum(sid, K) - ref) <= tail_bound(sid, K)
    assert eval_series(sid, K, 60).within_bound


@pytest.mark.parametrize("sid", ["a1", "aa1"])
def test_tail_bounds_decrease(sid):
    bounds = [tail_bound(sid, K) for K in (5, 10, 20, 40, 60)]
    assert all(a > b for a, b in zip(bounds, bounds[1:]))


def test_a1_sign_pattern():
    for k in range(1, 101):
        assert harmonic(k) - 2 * harmonic(2 * k) < 0
        assert (series_term("a1", k) > 0) == (k % 2 == 1)


def test_cross_agreement():
    big = cross_series_agreement(200, exponent=20)
    assert big.passed
    (case,) = big.cases
    assert abs(case.lhs - case.rhs) * 10**20 < 1
    one = cross_series_agreement(1)
    assert one.passed and abs(one.cases[0].lhs - one.cases[0].rhs) == Fraction(1, 6)
    assert cross_series_agreement(0).passed


def test_default_terms_rule():
    for sid, d in (("a1", 25), ("aa1", 30), ("a1", 5)):
        K = default_terms(sid, d)
        target = Fraction(1, 10 ** (d + 5))
        assert tail_bound(sid, K) < target <= tail_bound(sid, K - 1)


def test_unknown_series():
    with pytest.raises(ValueError):
        eval_series("nosuch")
    with pytest.raises(ValueError):
        eval_series("a1", 0)
