import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from franelab.modular import (
    DenominatorNotInvertible,
    NotInvertible,
    Prime,
    Residue,
    factorial_tables,
    fermat_quotient3,
    inverse,
    inverse_table,
    is_prime,
    legendre_mod3,
    legendre_power_check,
    primes_in_range,
    reduce_rational,
)


def _trial_division(n):
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def test_primes_in_range_examples():
    assert primes_in_range(1, 12) == [5, 7, 11]
    assert primes_in_range(13, 13) == [13]
    # 25 primes below 100, minus 2 and 3
    assert len(primes_in_range(5, 100)) == 23
    assert primes_in_range(4, 4) == []


def test_primes_match_trial_division():
    expected = [n for n in range(5, 5001) if _trial_division(n)]
    assert primes_in_range(5, 5000) == expected
    assert all(isinstance(p, Prime) for p in primes_in_range(5, 50))


def test_primes_in_range_rejects_inverted_bounds():
    with pytest.raises(ValueError):
        primes_in_range(10, 9)


def test_is_prime_agrees_with_trial_division():
    for n in range(0, 3000):
        assert is_prime(n) == _trial_division(n)
    assert is_prime(2**61 - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


def test_prime_type():
    p = Prime(13)
    assert p == 13 and p.residue_class_mod6 == 1 and p.half == 6
    assert Prime(11).residue_class_mod6 == 5
    assert str(p) == "13"
    for bad in (2, 3, 4, 9, 1):
        with pytest.raises(ValueError):
            Prime(bad)


@pytest.mark.parametrize("a,expected", [(7, 1), (5, -1), (6, 0), (-1, -1), (0, 0)])
def test_legendre_mod3(a, expected):
    assert legendre_mod3(a) == expected


@given(st.integers())
def test_legendre_mod3_periodic(a):
    assert legendre_mod3(a) == legendre_mod3(a % 3) == legendre_mod3(a + 3)


def test_inverse_examples():
    assert inverse(Residue(2, 5)) == Residue(3, 5)
    assert inverse(Residue(27, 5)) == Residue(3, 5)
    with pytest.raises(NotInvertible):
        inverse(Residue(5, 25))


def test_inverse_is_two_sided_for_primes_to_1000():
    for p in primes_in_range(5, 1000):
        for a in range(1, p):
            r = Residue(a, p)
            s = inverse(r)
            assert r * s == 1 and s * r == 1


def test_inverse_table_matches_pow():
    for m in (7, 49, 997, 997 * 997):
        tab = inverse_table(m, 6 if m in (7, 49) else 996)
        assert all(tab[k] == pow(k, -1, m) for k in range(1, len(tab)))


def test_factorial_tables():
    fact, ifact = factorial_tables(13, 12)
    assert all(fact[i] * ifact[i] % 13 == 1 for i in range(13))
    with pytest.raises(ValueError):
        factorial_tables(13, 13)


def test_reduce_rational_examples():
    assert reduce_rational(Fraction(14, 27), 5) == Residue(2, 5)
    assert reduce_rational(Fraction(0), 7) == Residue(0, 7)
    with pytest.raises(DenominatorNotInvertible):
        reduce_rational(Fraction(1, 5), 5)
    with pytest.raises(DenominatorNotInvertible):
        reduce_rational(Fraction(1, 10), 25)


def test_reduce_rational_is_a_ring_homomorphism():
    rng = random.Random(2024)
    for p in primes_in_range(5, 100):
        for m in (p, p * p):
            for _ in range(100):
                a = Fraction(rng.randrange(-10**6, 10**6), rng.randrange(1, 10**4))
                b = Fraction(rng.randrange(-10**6, 10**6), rng.randrange(1, 10**4))
                if any(x.denominator % p == 0 for x in (a, b)):
                    continue
                ra, rb = reduce_rational(a, m), reduce_rational(b, m)
                assert reduce_rational(a + b, m) == ra + rb
                assert reduce_rational(a * b, m) == ra * rb


def test_residue_arithmetic_and_moduli():
    a, b = Residue(3, 7), Residue(5, 7)
    assert a + b == Residue(1, 7)
    assert a - b == Residue(5, 7)
    assert 2 - a == Residue(6, 7)
    assert -a == 4
    assert a / b == a * inverse(b)
    assert a**-1 == inverse(a)
    assert Residue(-1, 25).value == 24
    assert str(Residue(24, 25)) == "24 mod 25"
    assert Residue(6, 7).signed() == -1
    with pytest.raises(ValueError):
        Residue(1, 7) + Residue(1, 49)
    with pytest.raises(ValueError):
        Residue(1, 0)


def test_fermat_quotient_examples():
    assert fermat_quotient3(5) == Residue(1, 5)
    assert fermat_quotient3(7) == Residue(6, 7)
    assert fermat_quotient3(11) == Residue((3**10 - 1) // 11 % 11, 11) == Residue(0, 11)


def test_fermat_quotient_against_big_integers():
    for p in primes_in_range(5, 400):
        assert fermat_quotient3(p).value == ((3 ** (p - 1) - 1) // p) % p


def test_fermat_quotient_detects_composite():
    with pytest.raises(AssertionError):
        fermat_quotient3(25)


def test_legendre_power_check_examples():
    e5 = legendre_power_check(5)
    assert e5.passed
    power = e5.cases[0]
    assert power.lhs == Residue(4, 5) and power.rhs == Residue(-1, 5)
    assert legendre_power_check(7).cases[0].lhs == Residue(1, 7)
    halfp = legendre_power_check(13).cases[1]
    assert halfp.lhs[2] == Residue(2, 13) and halfp.rhs[2] == Residue(2, 13)


def test_legendre_power_check_exhaustive():
    for p in primes_in_range(5, 1000):
        assert legendre_power_check(p).passed
