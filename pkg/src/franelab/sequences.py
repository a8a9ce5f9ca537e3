"""Franel numbers, Lucas sequences u_k(t)/v_k(t), inverse central binomial sums."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import binomial
from .modular import Prime, inverse_table, legendre_mod3
from .report import Entry, compare

__all__ = [
    "FranelSeq",
    "LucasSeq",
    "franel_cube_sum",
    "franel_strehl_square",
    "franel_strehl_central",
    "franel_exact",
    "franel_mod",
    "lucas_seq",
    "lucas_mod",
    "lucas_v_minus1_closed",
    "lucas_u_1_closed",
    "verify_lucas_closed_forms",
    "inv_central_binom_prefix",
    "verify_strehl",
    "verify_franel_recurrence",
]

FRANEL_CHECK_WINDOW = 50


@dataclass(frozen=True)
class FranelSeq:
    values: tuple[int, ...]
    modulus: int | None = None  # None for exact integers

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class LucasSeq:
    kind: str
    t: Fraction
    values: tuple[Fraction, ...]

    def __getitem__(self, k: int) -> Fraction:
        return self.values[k]


def franel_cube_sum(n: int) -> int:
    return sum(binomial(n, k) ** 3 for k in range(n + 1))


def franel_strehl_square(n: int) -> int:
    """sum_k C(n,k)^2 C(2k,n)."""
    return sum(binomial(n, k) ** 2 * binomial(2 * k, n) for k in range(n + 1))


def franel_strehl_central(n: int) -> int:
    """sum_k C(n,k) C(k,n-k) C(2k,k)."""
    return sum(binomial(n, k) * binomial(k, n - k) * binomial(2 * k, k) for k in range(n + 1))


def franel_exact(N: int) -> FranelSeq:
    """f_0..f_N from the three-term recurrence, checked against the cube sum for n <= 50."""
    if N < 0:
        raise ValueError(f"N must be >= 0, got {N}")
    f = [1, 2]
    for n in range(1, N):
        num = (7 * n * n + 7 * n + 2) * f[n] + 8 * n * n * f[n - 1]
        q, r = divmod(num, (n + 1) ** 2)
        if r:
            raise ArithmeticError(f"Franel recurrence left a remainder at n={n}")
        f.append(q)
    f = f[: N + 1]
    for n in range(min(N, FRANEL_CHECK_WINDOW) + 1):
        if f[n] != franel_cube_sum(n):
            raise ArithmeticError(f"Franel recurrence disagrees with cube sum at n={n}")
    return FranelSeq(tuple(f))


def franel_mod(p: int, modulus: int, N: int) -> FranelSeq:
    """f_0..f_N mod p or p^2 by the recurrence; N <= p-1 keeps (n+1)^2 invertible."""
    p = Prime(p)
    if modulus not in (p, p * p):
        raise ValueError(f"modulus must be p or p^2, got {modulus}")
    if not 0 <= N <= p - 1:
        raise ValueError(f"N must lie in [0, p-1], got {N}")
    m = modulus
    inv = inverse_table(m, N)
    f = [1, 2 % m]
    for n in range(1, N):
        i = inv[n + 1]
        f.append(((7 * n * n + 7 * n + 2) * f[n] + 8 * n * n * f[n - 1]) * i % m * i % m)
    return FranelSeq(tuple(f[: N + 1]), m)


def lucas_seq(kind: str, t: Fraction | int, N: int) -> LucasSeq:
    """u (seeds 0, 1) or v (seeds 2, t) under a_k = t a_{k-1} - a_{k-2}."""
    t = Fraction(t)
    seeds = {"u": (Fraction(0), Fraction(1)), "v": (Fraction(2), t)}
    if kind not in seeds:
        raise ValueError(f"kind must be 'u' or 'v', got {kind!r}")
    if N < 0:
        raise ValueError(f"N must be >= 0, got {N}")
    a = list(seeds[kind])
    for _ in range(2, N + 1):
        a.append(t * a[-1] - a[-2])
    return LucasSeq(kind, t, tuple(a[: N + 1]))


def lucas_mod(kind: str, t: int, N: int, m: int) -> list[int]:
    """Residue version of :func:`lucas_seq` for integer t."""
    a = [0, 1] if kind == "u" else [2 % m, t % m]
    for _ in range(2, N + 1):
        a.append((t * a[-1] - a[-2]) % m)
    return a[: N + 1]


def lucas_v_minus1_closed(k: int) -> int:
    return -3 * legendre_mod3(k) ** 2 + 2


def lucas_u_1_closed(k: int) -> Fraction:
    return Fraction((-1) ** (k // 3) + (-1) ** ((k - 1) // 3), 2)


def verify_lucas_closed_forms(N: int) -> Entry:
    v = lucas_seq("v", -1, N)
    u = lucas_seq("u", 1, N)
    cases = [compare("identity", "lucas_v", {"k": k}, v[k], Fraction(lucas_v_minus1_closed(k))) for k in range(N + 1)]
    cases += [compare("identity", "lucas_u", {"k": k}, u[k], lucas_u_1_closed(k)) for k in range(1, N + 1)]
    return Entry("lucas", cases)


def inv_central_binom_prefix(N: int) -> list[Fraction]:
    """[S_0, ..., S_N] with S_j = sum_{k=1..j} 1/(k^2 C(2k,k))."""
    out = [Fraction(0)]
    c = 1
    for k in range(1, N + 1):
        c = c * 2 * (2 * k - 1) // k
        out.append(out[-1] + Fraction(1, k * k * c))
    return out


def verify_strehl(N: int) -> Entry:
    """Cube sum against both of Strehl's forms; each case compares (cube, cube) to (square, central)."""
    cases = []
    for n in range(N + 1):
        cube = franel_cube_sum(n)
        rhs = (franel_strehl_square(n), franel_strehl_central(n))
        cases.append(compare("identity", "strehl", {"n": n}, (cube, cube), rhs))
    return Entry("strehl", cases)


def verify_franel_recurrence(seq: Sequence[int]) -> Entry:
    cases = []
    for n in range(1, len(seq) - 1):
        lhs = (n + 1) ** 2 * seq[n + 1]
        rhs = (7 * n * n + 7 * n + 2) * seq[n] + 8 * n * n * seq[n - 1]
        cases.append(compare("identity", "franel_rec", {"n": n}, lhs, rhs))
    return Entry("franel_rec", cases)
