"""Residues modulo p and p^2, primes, the Legendre symbol mod 3, Fermat quotients."""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "NotInvertible",
    "DenominatorNotInvertible",
    "Residue",
    "Prime",
    "is_prime",
    "primes_in_range",
    "legendre_mod3",
    "inverse",
    "reduce_rational",
    "fermat_quotient3",
    "inverse_table",
    "factorial_tables",
    "legendre_power_check",
]


class NotInvertible(ArithmeticError):
    """Raised when a residue shares a factor with its modulus."""


class DenominatorNotInvertible(NotInvertible):
    """A rational's denominator is divisible by a prime factor of the modulus.

    Congruence checks treat this as "inapplicable here" and record a skip.
    """


@dataclass(frozen=True, slots=True)
class Residue:
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        object.__setattr__(self, "modulus", int(self.modulus))
        object.__setattr__(self, "value", int(self.value) % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ValueError(f"modulus mismatch: {self.modulus} vs {other.modulus}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value + o, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value - o, self.modulus)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(o - self.value, self.modulus)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value * o, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __pow__(self, e: int):
        if e < 0:
            return inverse(self) ** (-e)
        return Residue(pow(self.value, e, self.modulus), self.modulus)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * inverse(Residue(o, self.modulus))

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.value == other.value and self.modulus == other.modulus
        if isinstance(other, int):
            return (self.value - other) % self.modulus == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __int__(self):
        return self.value

    def __str__(self):
        return f"{self.value} mod {self.modulus}"

    def signed(self) -> int:
        """Representative in (-m/2, m/2]."""
        v = self.value
        return v - self.modulus if 2 * v > self.modulus else v


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Prime(int):
    """A prime p >= 5; behaves as a plain ``int`` everywhere."""

    def __new__(cls, p: int):
        p = int(p)
        if p < 5 or not is_prime(p):
            raise ValueError(f"expected a prime >= 5, got {p}")
        return super().__new__(cls, p)

    @property
    def residue_class_mod6(self) -> int:
        return int(self) % 6

    @property
    def half(self) -> int:
        return (int(self) - 1) // 2

    def __repr__(self):
        return f"Prime({int(self)})"

    def __str__(self):
        return str(int(self))


_sieve = bytearray(b"\x00\x00")
_sieve_lock = threading.Lock()


def _sieve_upto(n: int) -> bytearray:
    global _sieve
    if n >= len(_sieve):
        with _sieve_lock:
            if n >= len(_sieve):
                size = max(n + 1, 2 * len(_sieve))
                sv = bytearray([1]) * size
                sv[0] = sv[1] = 0
                for i in range(2, math.isqrt(size - 1) + 1):
                    if sv[i]:
                        sv[i * i :: i] = bytes(len(range(i * i, size, i)))
                _sieve = sv
    return _sieve


def primes_in_range(lo: int, hi: int) -> list[Prime]:
    """Primes p with max(5, lo) <= p <= hi, ascending."""
    if lo > hi:
        raise ValueError(f"empty range: lo={lo} > hi={hi}")
    lo = max(5, lo)
    if hi < lo:
        return []
    sv = _sieve_upto(hi)
    return [Prime(p) for p in range(lo, hi + 1) if sv[p]]


def legendre_mod3(a: int) -> int:
    """(a/3): +1, -1 or 0 by the residue of a mod 3."""
    return (0, 1, -1)[a % 3]


def inverse(r: Residue) -> Residue:
    try:
        return Residue(pow(r.value, -1, r.modulus), r.modulus)
    except ValueError:
        raise NotInvertible(f"{r} is not invertible") from None


def reduce_rational(q: Fraction | int, m: int) -> Residue:
    """Image of ``q`` in Z/mZ; the denominator must be a unit mod m."""
    q = Fraction(q)
    if math.gcd(q.denominator, m) != 1:
        raise DenominatorNotInvertible(f"denominator of {q} shares a factor with {m}")
    return Residue(q.numerator * pow(q.denominator, -1, m), m)


def fermat_quotient3(p: int) -> Residue:
    """(3^(p-1) - 1)/p mod p."""
    p2 = p * p
    t = pow(3, p - 1, p2)
    if t % p != 1:
        raise AssertionError(f"3^(p-1) != 1 mod {p}; is {p} prime?")
    return Residue((t - 1) // p, p)


def inverse_table(m: int, n: int) -> list[int]:
    """``inv[k] = k^-1 mod m`` for 1 <= k <= n, requiring n < smallest prime factor of m.

    Uses the linear-time recurrence inv[k] = -(m // k) * inv[m % k].
    """
    inv = [0] * (n + 1)
    if n >= 1:
        inv[1] = 1 % m
    for k in range(2, n + 1):
        inv[k] = -(m // k) * inv[m % k] % m
    return inv


def factorial_tables(p: int, n: int) -> tuple[list[int], list[int]]:
    """Factorials and inverse factorials mod p for 0..n, n < p."""
    if n >= p:
        raise ValueError(f"factorial table up to {n} is not invertible mod {p}")
    fact = [1] * (n + 1)
    for i in range(1, n + 1):
        fact[i] = fact[i - 1] * i % p
    ifact = [1] * (n + 1)
    ifact[n] = pow(fact[n], -1, p)
    for i in range(n, 0, -1):
        ifact[i - 1] = ifact[i] * i % p
    return fact, ifact


def legendre_power_check(p: int):
    """Check (-3)^((p-1)/2) = (p/3) and C((p-1)/2, k) = C(2k,k)/(-4)^k mod p.

    Returns an Entry with two cases, ``legendre_power`` and ``binom_halfp``.
    """
    from .report import Entry, compare

    p = Prime(p)
    h = p.half
    power = compare(
        "congruence",
        "legendre_power",
        {"p": int(p)},
        Residue(pow(-3, h, p), p),
        Residue(legendre_mod3(p), p),
    )

    # left: multiplicative recurrence along the row; right: factorial tables
    lhs = [1]
    for k in range(1, h + 1):
        lhs.append(lhs[-1] * (h - k + 1) % p * pow(k, -1, p) % p)
    fact, ifact = factorial_tables(p, 2 * h)
    inv_m4 = pow(-4, -1, p)
    rhs = [fact[2 * k] * ifact[k] * ifact[k] * pow(inv_m4, k, p) % p for k in range(h + 1)]
    halfp = compare(
        "congruence",
        "binom_halfp",
        {"p": int(p)},
        tuple(Residue(v, p) for v in lhs),
        tuple(Residue(v, p) for v in rhs),
    )
    return Entry("legendre_power", [power, halfp])
