from fractions import Fraction

import pytest

from franelab.modular import primes_in_range
from franelab.sequences import (
    franel_exact,
    franel_mod,
    franel_strehl_central,
    franel_strehl_square,
    inv_central_binom_prefix,
    lucas_mod,
    lucas_seq,
    lucas_u_1_closed,
    lucas_v_minus1_closed,
    verify_franel_recurrence,
    verify_lucas_closed_forms,
    verify_strehl,
)

from oracles import franel_direct


def test_franel_first_values():
    assert franel_exact(4).values == (1, 2, 10, 56, 346)
    assert franel_exact(0).values == (1,)
    assert franel_exact(1).values == (1, 2)


def test_franel_recurrence_at_one():
    f = franel_exact(2)
    assert 4 * f[2] == 16 * f[1] + 8 * f[0] == 40


def test_franel_exact_against_cube_sum():
    f = franel_exact(120)
    assert all(f[n] == franel_direct(n) for n in range(121))


def test_franel_mod_examples():
    assert franel_mod(5, 25, 4).values == (1, 2, 10, 6, 21)
    assert franel_mod(5, 5, 4)[3] == 1


def test_franel_mod_matches_reduction():
    for p in primes_in_range(5, 50):
        exact = franel_exact(p - 1).values
        for m in (p, p * p):
            assert franel_mod(p, m, p - 1).values == tuple(x % m for x in exact)


def test_franel_mod_bounds():
    with pytest.raises(ValueError):
        franel_mod(7, 7, 7)
    with pytest.raises(ValueError):
        franel_mod(7, 14, 3)


def test_lucas_examples():
    assert list(lucas_seq("v", -1, 6).values) == [2, -1, -1, 2, -1, -1, 2]
    assert list(lucas_seq("u", 1, 7).values) == [0, 1, 1, 0, -1, -1, 0, 1]
    assert list(lucas_seq("u", 2, 4).values) == [0, 1, 2, 3, 4]


def test_lucas_rational_parameter():
    v = lucas_seq("v", Fraction(1, 2), 3)
    assert v.values == (2, Fraction(1, 2), Fraction(-7, 4), Fraction(-11, 8))


def test_lucas_mod_matches_exact():
    for t in (-3, -1, 0, 2, 5):
        for kind in "uv":
            exact = lucas_seq(kind, t, 60).values
            assert lucas_mod(kind, t, 60, 97) == [int(x) % 97 for x in exact]


def test_lucas_closed_form_examples():
    assert lucas_v_minus1_closed(3) == 2 == lucas_seq("v", -1, 3)[3]
    assert lucas_u_1_closed(4) == -1 == lucas_seq("u", 1, 4)[4]
    assert lucas_u_1_closed(1) == 1


def test_lucas_closed_forms_to_2000():
    entry = verify_lucas_closed_forms(2000)
    assert entry.passed
    assert len(entry.cases) == 2001 + 2000


def test_inv_central_binom_prefix():
    s = inv_central_binom_prefix(3)
    assert s == [0, Fraction(1, 2), Fraction(13, 24), Fraction(13, 24) + Fraction(1, 180)]


def test_strehl_small_values():
    for n in range(8):
        assert franel_strehl_square(n) == franel_strehl_central(n) == franel_direct(n)


def test_strehl_to_100():
    entry = verify_strehl(100)
    assert entry.passed and len(entry.cases) == 101


def test_franel_recurrence_to_200():
    entry = verify_franel_recurrence(franel_exact(200).values)
    assert entry.passed and len(entry.cases) == 199


def test_franel_recurrence_detects_corruption():
    vals = list(franel_exact(30).values)
    vals[17] += 1
    entry = verify_franel_recurrence(vals)
    assert not entry.passed
    assert entry.first_failure.params["n"] == 16
