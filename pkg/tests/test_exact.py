import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from franelab.exact import (
    binomial,
    common_denominator,
    format_rational,
    harmonic,
    harmonic_prefix,
    parse_rational,
    rational_sum,
)


@pytest.mark.parametrize("n,k,expected", [(4, 2, 6), (1, 3, 0), (6, 3, 20), (5, -1, 0), (0, 0, 1)])
def test_binomial_examples(n, k, expected):
    assert binomial(n, k) == expected


def test_binomial_matches_factorial_formula():
    for n in range(0, 40):
        for k in range(0, n + 1):
            assert binomial(n, k) == math.factorial(n) // (math.factorial(k) * math.factorial(n - k))


def test_binomial_rejects_negative_n():
    with pytest.raises(ValueError):
        binomial(-1, 0)


def test_binomial_large_n_outside_row_cache():
    assert binomial(3000, 7) == math.comb(3000, 7)


def test_pascal_rule():
    for n in range(0, 201):
        for k in range(0, n + 1):
            assert binomial(n + 1, k) == binomial(n, k) + binomial(n, k - 1)


def test_harmonic_examples():
    assert harmonic(0, 1) == 0
    assert harmonic(4, 1) == Fraction(25, 12)
    assert harmonic(2, 2) == Fraction(5, 4)


def test_harmonic_telescoping():
    for r in (1, 2):
        h = harmonic_prefix(500, r)
        for k in range(1, 501):
            assert h[k] - h[k - 1] == Fraction(1, k**r)
            assert harmonic(k, r) == h[k]


def test_harmonic_prefix_is_a_copy():
    h = harmonic_prefix(5)
    h[3] = Fraction(99)
    assert harmonic(3) == Fraction(11, 6)


def test_harmonic_bad_arguments():
    with pytest.raises(ValueError):
        harmonic(-1)
    with pytest.raises(ValueError):
        harmonic(3, 0)


def test_rational_sum_examples():
    assert rational_sum([Fraction(1, 2), Fraction(1, 3)]) == Fraction(5, 6)
    assert rational_sum([]) == 0
    assert rational_sum([Fraction(2, 3), Fraction(-4, 27)]) == Fraction(14, 27)


def test_results_are_canonical():
    rng = random.Random(7)
    for _ in range(200):
        k = rng.randrange(1, 300)
        q = harmonic(k, rng.choice((1, 2))) - harmonic(rng.randrange(0, k), 2)
        assert math.gcd(q.numerator, q.denominator) == 1 and q.denominator >= 1
    assert rational_sum([Fraction(1, 2), Fraction(-1, 2)]).denominator == 1


def test_common_denominator():
    vals = [Fraction(1, 2), Fraction(-2, 3), Fraction(5)]
    den, nums = common_denominator(vals)
    assert den == 6
    assert [Fraction(n, den) for n in nums] == vals


@given(st.integers(), st.integers(min_value=1))
def test_rational_string_round_trip(num, den):
    q = Fraction(num, den)
    s = format_rational(q)
    assert "/" in s
    assert parse_rational(s) == q


def test_zero_formats_canonically():
    assert format_rational(Fraction(0, 5)) == "0/1"
    assert format_rational(-Fraction(0)) == "0/1"
    assert parse_rational("-0") == 0
    assert parse_rational(" 12 ") == 12
