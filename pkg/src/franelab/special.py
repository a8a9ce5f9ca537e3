"""Bernoulli and Euler numbers reduced mod p, and B_{p-2}(1/3) mod p two ways.

Convention: B_1 = -1/2, i.e. the coefficients of x/(e^x - 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from operator import mul

from .modular import (
    Prime,
    Residue,
    factorial_tables,
    inverse_table,
    legendre_mod3,
    reduce_rational,
)

__all__ = [
    "BernoulliTable",
    "EulerTable",
    "bernoulli_table",
    "bernoulli_poly_at",
    "b_p2_third_table",
    "b_p2_third_fast",
    "euler_table",
    "euler_mod",
]


@dataclass(frozen=True)
class BernoulliTable:
    p: int
    values: tuple[int, ...]  # B_0 .. B_{p-2} mod p

    def __getitem__(self, m: int) -> int:
        return self.values[m]

    def perturbed(self, index: int, delta: int = 1) -> "BernoulliTable":
        vals = list(self.values)
        vals[index] = (vals[index] + delta) % self.p
        return BernoulliTable(self.p, tuple(vals))


@dataclass(frozen=True)
class EulerTable:
    p: int
    values: tuple[int, ...]  # E_0, E_2, ..., E_{p-3} mod p (even indices only)

    def __getitem__(self, n: int) -> int:
        if n % 2:
            return 0
        return self.values[n // 2]


@lru_cache(maxsize=256)
def bernoulli_table(p: int) -> BernoulliTable:
    """B_0..B_{p-2} mod p from sum_{j<=m} C(m+1, j) B_j = 0.

    Writing C(m+1, j) = (m+1)! / (j! (m+1-j)!) turns each step into a dot
    product of b_j/j! against 1/(m+1-j)!; only j = 1 and even j contribute.
    """
    p = Prime(p)
    n = p - 2
    fact, ifact = factorial_tables(p, n + 1)
    b = [0] * (n + 1)
    b[0] = 1
    if n >= 1:
        b[1] = (p - 1) * pow(2, -1, p) % p
    # scaled[i] = B_{2i} / (2i)!
    scaled = [1]
    for m in range(2, n + 1, 2):
        # even-index terms j = 0, 2, ..., m-2, plus j = 1
        acc = sum(map(mul, scaled, ifact[m + 1 : 2 : -2]))
        acc += b[1] * ifact[1] * ifact[m]
        # (m+1)! * acc + C(m+1, m) B_m = 0 and C(m+1, m) = m+1
        bm = -fact[m + 1] * acc * pow(m + 1, -1, p) % p
        b[m] = bm
        scaled.append(bm * ifact[m] % p)
    return BernoulliTable(int(p), tuple(b))


def bernoulli_poly_at(p: int, n: int, t: Fraction | int, table: BernoulliTable | None = None) -> Residue:
    """B_n(t) mod p = sum_k C(n,k) B_k t^(n-k), for 0 <= n <= p-2."""
    p = int(p)
    if not 0 <= n <= p - 2:
        raise ValueError(f"index n={n} outside [0, p-2] for p={p}")
    tab = table if table is not None else bernoulli_table(p)
    tr = reduce_rational(t, p).value
    fact, ifact = factorial_tables(p, n)
    acc = 0
    tpow = 1
    for k in range(n, -1, -1):
        acc += fact[n] * ifact[k] * ifact[n - k] % p * tab[k] * tpow
        tpow = tpow * tr % p
    return Residue(acc, p)


def b_p2_third_table(p: int, table: BernoulliTable | None = None) -> Residue:
    """B_{p-2}(1/3) mod p through the Bernoulli table (O(p^2))."""
    return bernoulli_poly_at(p, p - 2, Fraction(1, 3), table)


def b_p2_third_fast(p: int) -> Residue:
    """B_{p-2}(1/3) mod p as 2 (p/3) H_{floor(p/3)}^(2), in O(p)."""
    p = Prime(p)
    m = p // 3
    inv = inverse_table(p, m)
    h2 = sum(v * v for v in inv[1:]) % p
    return Residue(2 * legendre_mod3(p) * h2, p)


@lru_cache(maxsize=256)
def euler_table(p: int) -> EulerTable:
    """E_0, E_2, ..., E_{p-3} mod p from sum_{k<=m} C(2m, 2k) E_{2k} = 0."""
    p = Prime(p)
    top = p - 3
    fact, ifact = factorial_tables(p, top)
    vals = [1]
    scaled = [1]  # E_{2k} / (2k)!
    for m in range(1, top // 2 + 1):
        acc = sum(map(mul, scaled, ifact[2 * m : 0 : -2]))
        em = -fact[2 * m] * acc % p
        vals.append(em)
        scaled.append(em * ifact[2 * m] % p)
    return EulerTable(int(p), tuple(vals))


def euler_mod(p: int, n: int) -> Residue:
    return Residue(euler_table(p)[n], p)
