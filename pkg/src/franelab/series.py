"""Exact partial sums of the two pi^2/18 series with rigorous tail bounds.

Only the reference value pi^2/18 is approximate.  It is produced from
Machin's arctangent formula in scaled-integer arithmetic with an explicit
error bound, so every comparison below is exact over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import binomial, harmonic
from .report import Case, Entry

__all__ = [
    "FixedPointDecimal",
    "SeriesEvaluation",
    "SERIES_IDS",
    "pi_squared_over_18",
    "pi_squared_over_18_interval",
    "series_term",
    "partial_sum",
    "tail_bound",
    "default_terms",
    "eval_series",
    "cross_series_agreement",
]

SERIES_IDS = ("a1", "aa1")
GUARD_DIGITS = 10
MAX_DIGITS = 200


@dataclass(frozen=True)
class FixedPointDecimal:
    """The number ``scaled * 10**-digits`` with ``|true - value| <= error * 10**-digits``."""

    scaled: int
    digits: int
    error: int = 0

    @classmethod
    def from_fraction(cls, q: Fraction, digits: int) -> "FixedPointDecimal":
        """Truncate toward minus infinity; the error is below one unit in the last place."""
        scaled = (q.numerator * 10**digits) // q.denominator
        exact = scaled * q.denominator == q.numerator * 10**digits
        return cls(scaled, digits, 0 if exact else 1)

    def to_fraction(self) -> Fraction:
        return Fraction(self.scaled, 10**self.digits)

    def truncate(self, digits: int) -> "FixedPointDecimal":
        if digits > self.digits:
            raise ValueError("cannot truncate to more digits than stored")
        shift = 10 ** (self.digits - digits)
        q, rem = divmod(self.scaled, shift)
        return FixedPointDecimal(q, digits, self.error // shift + 1 if self.error or rem else 0)

    def __sub__(self, other: "FixedPointDecimal") -> "FixedPointDecimal":
        if self.digits != other.digits:
            raise ValueError("digit mismatch")
        return FixedPointDecimal(self.scaled - other.scaled, self.digits, self.error + other.error)

    def __abs__(self) -> "FixedPointDecimal":
        return FixedPointDecimal(abs(self.scaled), self.digits, self.error)

    def __str__(self) -> str:
        sign = "-" if self.scaled < 0 else ""
        s = str(abs(self.scaled)).rjust(self.digits + 1, "0")
        if self.digits == 0:
            return sign + s
        return f"{sign}{s[:-self.digits]}.{s[-self.digits:]}"


def _arctan_inv(x: int, scale: int) -> tuple[int, int]:
    """(arctan(1/x) * scale, error bound in units of 1/scale)."""
    total = 0
    power = scale // x
    x2 = x * x
    k = 0
    terms = 0
    while power:
        term = power // (2 * k + 1)
        total += -term if k % 2 else term
        power //= x2
        k += 1
        terms += 1
    # power_k is within 2 units of scale/x^(2k+1), so each term is within 3;
    # the dropped alternating tail is below 2 units
    return total, 3 * terms + 2


def _pi_scaled(digits: int) -> tuple[int, int]:
    """(v, e) with |pi * 10^digits - v| <= e, from pi = 16 atan(1/5) - 4 atan(1/239)."""
    scale = 10**digits
    a, ea = _arctan_inv(5, scale)
    b, eb = _arctan_inv(239, scale)
    return 16 * a - 4 * b, 16 * ea + 4 * eb


def pi_squared_over_18_interval(digits: int) -> tuple[Fraction, Fraction]:
    """Rational ``lo <= pi^2/18 <= hi`` with ``hi - lo`` around 10^-digits."""
    work = digits + GUARD_DIGITS
    v, e = _pi_scaled(work)
    scale = 10**work
    lo = Fraction((v - e) ** 2, 18 * scale * scale)
    hi = Fraction((v + e) ** 2, 18 * scale * scale)
    return lo, hi


def pi_squared_over_18(digits: int) -> FixedPointDecimal:
    """pi^2/18 truncated to ``digits`` decimals (so D=50 truncates to the D=10 value)."""
    if not 1 <= digits <= MAX_DIGITS:
        raise ValueError(f"digits must lie in [1, {MAX_DIGITS}], got {digits}")
    guard = GUARD_DIGITS
    while True:
        work = digits + guard
        v, e = _pi_scaled(work)
        scale = 10**work
        lo = FixedPointDecimal.from_fraction(Fraction((v - e) ** 2, 18 * scale * scale), digits)
        hi = FixedPointDecimal.from_fraction(Fraction((v + e) ** 2, 18 * scale * scale), digits)
        if lo.scaled == hi.scaled:
            return FixedPointDecimal(lo.scaled, digits, 1)
        guard *= 2


def series_term(series_id: str, k: int) -> Fraction:
    if series_id == "aa1":
        return Fraction(1, k * k * binomial(2 * k, k))
    if series_id == "a1":
        return (harmonic(k) - 2 * harmonic(2 * k)) / ((-3) ** k * k)
    raise ValueError(f"unknown series id {series_id!r}; valid: {', '.join(SERIES_IDS)}")


def partial_sum(series_id: str, K: int) -> Fraction:
    return sum((series_term(series_id, k) for k in range(1, K + 1)), Fraction(0))


def _ceil_log2(m: int) -> int:
    return (m - 1).bit_length()


def tail_bound(series_id: str, K: int) -> Fraction:
    """Upper bound on the absolute value of the tail after K terms.

    aa1: consecutive terms shrink by a factor below 1/3, so the tail is at
    most 3/2 times the first omitted term.  a1: |H_k - 2H_{2k}| / k is at
    most 2 H_{2k} / k, which decreases in k, and H_m <= 1 + ceil(log2 m).
    """
    if series_id == "aa1":
        return series_term("aa1", K + 1) * Fraction(3, 2)
    if series_id == "a1":
        return 2 * (1 + _ceil_log2(2 * K + 2)) * Fraction(1, 3 ** (K + 1)) * Fraction(3, 2)
    raise ValueError(f"unknown series id {series_id!r}; valid: {', '.join(SERIES_IDS)}")


def default_terms(series_id: str, digits: int) -> int:
    """Least K with tail_bound(K) < 10^-(digits + 5)."""
    target = Fraction(1, 10 ** (digits + 5))
    K = 1
    while tail_bound(series_id, K) >= target:
        K += 1
    return K


@dataclass(frozen=True)
class SeriesEvaluation:
    series_id: str
    terms: int
    digits: int
    partial: Fraction
    partial_decimal: FixedPointDecimal
    tail_bound: Fraction
    reference: FixedPointDecimal
    deviation: Fraction  # upper bound on |partial - pi^2/18|
    rounding_allowance: Fraction

    @property
    def within_bound(self) -> bool:
        return self.deviation <= self.tail_bound + self.rounding_allowance

    def to_case(self) -> Case:
        params = {
            "terms": self.terms,
            "digits": self.digits,
            "tail_bound": _sci(self.tail_bound),
            "deviation": _sci(self.deviation),
        }
        return Case("series", self.series_id, params, str(self.partial_decimal), str(self.reference),
                    "pass" if self.within_bound else "fail")


def _sci(q: Fraction) -> str:
    """Compact scientific rendering of a non-negative rational, 6 significant digits."""
    if q == 0:
        return "0"
    exp = len(str(q.numerator)) - len(str(q.denominator))
    if Fraction(10) ** exp > q:
        exp -= 1
    mant = q / Fraction(10) ** exp
    return f"{float(mant):.5f}e{exp:+d}"


def eval_series(series_id: str, K: int | None = None, digits: int = 30) -> SeriesEvaluation:
    if series_id not in SERIES_IDS:
        raise ValueError(f"unknown series id {series_id!r}; valid: {', '.join(SERIES_IDS)}")
    if not 1 <= digits <= MAX_DIGITS:
        raise ValueError(f"digits must lie in [1, {MAX_DIGITS}], got {digits}")
    if K is None:
        K = default_terms(series_id, digits)
    if K < 1:
        raise ValueError(f"need at least one term, got K={K}")
    s = partial_sum(series_id, K)
    lo, hi = pi_squared_over_18_interval(digits)
    deviation = max(abs(s - lo), abs(s - hi))
    return SeriesEvaluation(
        series_id=series_id,
        terms=K,
        digits=digits,
        partial=s,
        partial_decimal=FixedPointDecimal.from_fraction(s, digits),
        tail_bound=tail_bound(series_id, K),
        reference=pi_squared_over_18(digits),
        deviation=deviation,
        rounding_allowance=hi - lo,
    )


def cross_series_agreement(K: int, exponent: int | None = None, id: str = "series_agreement") -> Entry:
    """Partial sums of a1 and aa1 after K terms differ by less than the sum of their tail bounds.

    With ``exponent`` the difference must also be below 10^-exponent.
    """
    a = partial_sum("a1", K)
    b = partial_sum("aa1", K)
    diff = abs(a - b)
    if K == 0:
        ok = diff == 0
        bound = Fraction(0)
    else:
        bound = tail_bound("a1", K) + tail_bound("aa1", K)
        ok = diff < bound
    if exponent is not None:
        ok = ok and diff * 10**exponent < 1
    params = {"K": K, "difference": _sci(diff), "bound": _sci(bound)}
    if exponent is not None:
        params["threshold"] = f"1e-{exponent}"
    return Entry(id, [Case("limit", id, params, a, b, "pass" if ok else "fail")])
