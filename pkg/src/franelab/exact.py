"""Exact integer and rational arithmetic.

Python ``int`` already is an arbitrary-precision signed integer with a
canonical zero, and :class:`fractions.Fraction` keeps numerator and
denominator reduced with a positive denominator, so both are used directly.
This module adds the binomial convention, memoized harmonic prefixes and
the string forms used in reports.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "Fraction",
    "binomial",
    "binomial_row",
    "harmonic",
    "harmonic_prefix",
    "rational_sum",
    "common_denominator",
    "format_int",
    "parse_int",
    "format_rational",
    "parse_rational",
]


def binomial(n: int, k: int) -> int:
    """C(n, k), zero when ``k`` falls outside ``[0, n]``."""
    if n < 0:
        raise ValueError(f"binomial: negative upper index n={n}")
    if k < 0 or k > n:
        return 0
    if n <= _ROW_CACHE_LIMIT:
        return binomial_row(n)[k]
    return math.comb(n, k)


_ROW_CACHE_LIMIT = 1024


@lru_cache(maxsize=_ROW_CACHE_LIMIT + 1)
def binomial_row(n: int) -> tuple[int, ...]:
    """Row ``n`` of Pascal's triangle as a tuple (cached)."""
    if n < 0:
        raise ValueError(f"binomial_row: negative n={n}")
    row = [1] * (n + 1)
    for k in range(1, n // 2 + 1):
        row[k] = row[n - k] = row[k - 1] * (n - k + 1) // k
    return tuple(row)


class _HarmonicPrefix:
    """Growable prefix table H_0^(r), H_1^(r), ... for one order r."""

    def __init__(self, order: int):
        self.order = order
        self.values: list[Fraction] = [Fraction(0)]
        self._lock = threading.Lock()

    def upto(self, k: int) -> list[Fraction]:
        if k >= len(self.values):
            with self._lock:
                vals = self.values
                r = self.order
                while len(vals) <= k:
                    j = len(vals)
                    vals.append(vals[-1] + Fraction(1, j**r))
        return self.values


_harmonic_tables: dict[int, _HarmonicPrefix] = {}
_harmonic_lock = threading.Lock()


def _table(order: int) -> _HarmonicPrefix:
    tab = _harmonic_tables.get(order)
    if tab is None:
        with _harmonic_lock:
            tab = _harmonic_tables.setdefault(order, _HarmonicPrefix(order))
    return tab


def harmonic(k: int, order: int = 1) -> Fraction:
    """Generalized harmonic number H_k^(order) = sum_{j=1..k} 1/j^order."""
    if k < 0:
        raise ValueError(f"harmonic: negative index k={k}")
    if order < 1:
        raise ValueError(f"harmonic: order must be >= 1, got {order}")
    return _table(order).upto(k)[k]


def harmonic_prefix(n: int, order: int = 1) -> list[Fraction]:
    """List ``[H_0^(order), ..., H_n^(order)]`` (a fresh list)."""
    if n < 0:
        raise ValueError(f"harmonic_prefix: negative n={n}")
    if order < 1:
        raise ValueError(f"harmonic_prefix: order must be >= 1, got {order}")
    return _table(order).upto(n)[: n + 1]


def rational_sum(terms: Iterable[Fraction | int]) -> Fraction:
    """Exact sum of rationals; the empty sum is 0."""
    return sum(terms, Fraction(0))


def common_denominator(values: Sequence[Fraction]) -> tuple[int, list[int]]:
    """Return ``(D, nums)`` with ``values[i] == nums[i] / D`` and D the lcm of denominators.

    Lets long weighted sums of rationals run in integer arithmetic.
    """
    den = 1
    for v in values:
        den = math.lcm(den, v.denominator)
    return den, [v.numerator * (den // v.denominator) for v in values]


def format_int(n: int) -> str:
    return str(n)


def parse_int(s: str) -> int:
    return int(s.strip())


def format_rational(q: Fraction | int) -> str:
    """Always ``"p/q"``, including integers (``"3/1"``)."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    """Parse ``"p/q"`` or a bare integer into a reduced Fraction."""
    s = s.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(s))
