"""Registry of congruences modulo p and p^2, per-prime runner and range scanner.

Left-hand sides are computed from definitions through the residue arrays
held by :class:`PrimeContext` (harmonic prefixes, Franel numbers, central
binomials).  Right-hand sides come from :mod:`franelab.special` and the
Fermat quotient, never from those arrays.  For small primes every scalar
left-hand side is recomputed with exact rationals and reduced, so the fast
residue path is itself cross-checked.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Iterable

from .exact import binomial, harmonic_prefix
from .modular import (
    NotInvertible,
    Prime,
    Residue,
    factorial_tables,
    fermat_quotient3,
    inverse_table,
    legendre_mod3,
    legendre_power_check,
    primes_in_range,
    reduce_rational,
)
from .report import FAIL, PASS, SKIPPED, Case, VerificationReport
from .sequences import franel_exact, franel_mod, inv_central_binom_prefix, lucas_mod
from .special import bernoulli_table, b_p2_third_fast, b_p2_third_table, euler_mod

__all__ = [
    "Fault",
    "ScanOptions",
    "PrimeContext",
    "CongruenceCheck",
    "REGISTRY",
    "UnknownCheckId",
    "run_check",
    "scan",
]

C5_FULL_MAX = 200
C5_SAMPLES = 16


class UnknownCheckId(KeyError):
    pass


@dataclass(frozen=True)
class Fault:
    """Deliberate perturbation of one stored value, used to prove the checks can fail.

    ``kind`` is ``franel``, ``harmonic`` or ``bernoulli``; the entry at
    ``index`` is shifted by +1 (when the prime has such an index).
    """

    kind: str
    index: int

    KINDS = ("franel", "harmonic", "bernoulli")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"fault kind must be one of {self.KINDS}, got {self.kind!r}")
        if self.index < 0:
            raise ValueError(f"fault index must be >= 0, got {self.index}")

    @classmethod
    def parse(cls, text: str) -> "Fault":
        kind, _, idx = text.partition(":")
        if not idx:
            raise ValueError(f"fault must look like KIND:INDEX, got {text!r}")
        return cls(kind.strip(), int(idx))

    def __str__(self):
        return f"{self.kind}:{self.index}"


@dataclass(frozen=True)
class ScanOptions:
    o2_ceiling: int = 500
    bernoulli_table_max: int = 1000
    exact_max: int = 100
    seed: int = 0
    faults: tuple[Fault, ...] = ()


class PrimeContext:
    """Residue arrays for one prime, built lazily and shared by all checks at that prime."""

    def __init__(self, p: int, options: ScanOptions | None = None):
        self.p = Prime(p)
        self.options = options or ScanOptions()
        self.half = self.p.half
        self.leg = legendre_mod3(self.p)

    def _faulted(self, kind: str) -> list[int]:
        return [f.index for f in self.options.faults if f.kind == kind]

    def _apply(self, kind: str, values: list[int], m: int) -> list[int]:
        for i in self._faulted(kind):
            if i < len(values):
                values[i] = (values[i] + 1) % m
        return values

    @cached_property
    def inv(self) -> list[int]:
        return inverse_table(self.p, self.p - 1)

    @cached_property
    def inv_sq(self) -> list[int]:
        p = self.p
        return [v * v % p for v in self.inv]

    def _harmonic(self, order: int) -> list[int]:
        p = self.p
        src = self.inv if order == 1 else self.inv_sq
        out = [0] * p
        for k in range(1, p):
            out[k] = (out[k - 1] + src[k]) % p
        return self._apply("harmonic", out, p)

    @cached_property
    def h1(self) -> list[int]:
        return self._harmonic(1)

    @cached_property
    def h2(self) -> list[int]:
        return self._harmonic(2)

    @cached_property
    def central(self) -> list[int]:
        """C(2k,k) mod p for 0 <= k <= p-1, by C(2k,k) = C(2k-2,k-1) (4k-2)/k."""
        p = self.p
        out = [1] * p
        for k in range(1, p):
            out[k] = out[k - 1] * (4 * k - 2) % p * self.inv[k] % p
        return out

    @cached_property
    def inv_central_sums(self) -> list[int]:
        """sum_{k<=j} 1/(k^2 C(2k,k)) mod p for 0 <= j <= (p-1)/2."""
        p = self.p
        out = [0] * (self.half + 1)
        for k in range(1, self.half + 1):
            out[k] = (out[k - 1] + self.inv_sq[k] * pow(self.central[k], -1, p)) % p
        return out

    @cached_property
    def franel_p(self) -> list[int]:
        return self._apply("franel", list(franel_mod(self.p, self.p, self.p - 1).values), self.p)

    @cached_property
    def franel_p2(self) -> list[int]:
        m = self.p * self.p
        return self._apply("franel", list(franel_mod(self.p, m, self.p - 1).values), m)

    @cached_property
    def bernoulli(self):
        table = bernoulli_table(self.p)
        for i in self._faulted("bernoulli"):
            if i < len(table.values):
                table = table.perturbed(i)
        return table

    @property
    def bernoulli_path(self) -> str:
        if self._faulted("bernoulli") or self.p <= self.options.bernoulli_table_max:
            return "table"
        return "fast"

    @cached_property
    def b_third(self) -> Residue:
        """B_{p-2}(1/3) mod p through whichever path :attr:`bernoulli_path` names."""
        if self.bernoulli_path == "table":
            return b_p2_third_table(self.p, self.bernoulli)
        return b_p2_third_fast(self.p)

    @cached_property
    def b_third_table(self) -> Residue:
        return b_p2_third_table(self.p, self.bernoulli)

    @cached_property
    def fermat_q(self) -> Residue:
        return fermat_quotient3(self.p)

    def r(self, v: int) -> Residue:
        return Residue(v, self.p)

    def frac(self, num: int, den: int) -> Residue:
        return Residue(num * pow(den, -1, self.p), self.p)

    def c5_t_values(self) -> list[int]:
        p = self.p
        if p <= C5_FULL_MAX:
            return list(range(1, p))
        rng = random.Random(f"{self.options.seed}:{p}")
        return sorted(rng.sample(range(1, p), C5_SAMPLES))


# -- left-hand sides (residue path) -------------------------------------------------

def _lhs_sun2011(ctx: PrimeContext):
    return ctx.r(ctx.inv_central_sums[ctx.half])


def _lhs_thm12(ctx: PrimeContext):
    p, h1 = ctx.p, ctx.h1
    inv_m3 = pow(-3, -1, p)
    acc = 0
    w = 1
    for k in range(1, ctx.half + 1):
        w = w * inv_m3 % p
        acc += (h1[k] - 2 * h1[2 * k]) * w % p * ctx.inv[k]
    return ctx.r(acc)


def _lhs_c18(ctx: PrimeContext):
    s, c = ctx.inv_central_sums, ctx.central
    return ctx.r(sum(c[k] * s[k] for k in range(ctx.half + 1)))


def _lhs_c4_half(ctx: PrimeContext):
    c, h2 = ctx.central, ctx.h2
    return ctx.r(sum(c[k] * h2[k] for k in range(ctx.half + 1)))


def _lhs_c4_full(ctx: PrimeContext):
    c, h2 = ctx.central, ctx.h2
    return ctx.r(sum(c[k] * h2[k] for k in range(1, ctx.p)))


def _lhs_c5(ctx: PrimeContext):
    p, c, h2 = ctx.p, ctx.central, ctx.h2
    out = []
    for t in ctx.c5_t_values():
        acc = 0
        tp = t  # t^(p-k) at k = p-1
        for k in range(p - 1, 0, -1):
            acc += tp * c[k] % p * h2[k]
            tp = tp * t % p
        out.append(ctx.r(acc))
    return tuple(out)


def _signed_weight(k: int) -> int:
    return (-1) ** (k // 3) + (-1) ** ((k - 1) // 3)


def _lhs_cc3(ctx: PrimeContext):
    return ctx.r(sum(_signed_weight(k) * ctx.inv_sq[k] for k in range(1, ctx.p)))


def _lhs_wolstenholme(ctx: PrimeContext):
    return (ctx.r(ctx.h2[ctx.p - 1]), ctx.r(ctx.h2[ctx.half]))


def _lhs_lehmer_third(ctx: PrimeContext):
    return ctx.r(ctx.h2[ctx.p // 3])


def _lhs_lehmer_sixth(ctx: PrimeContext):
    return ctx.r(ctx.h2[ctx.p // 6])


def _lhs_c15(ctx: PrimeContext):
    p, h = ctx.p, ctx.half
    fact, ifact = factorial_tables(p, p - 1)
    out = []
    for d in range(h + 1):
        acc = sum(fact[2 * k] * ifact[k + d] % p * ifact[k - d] for k in range(d, h + 1))
        out.append(ctx.r(acc))
    return tuple(out)


def _c19_weight(j: int, p: int) -> int:
    return (-3 * legendre_mod3(j) ** 2 + 2) * (legendre_mod3(p - j) - legendre_mod3(j))


def _lhs_c19(ctx: PrimeContext):
    return ctx.r(sum(_c19_weight(j, ctx.p) * ctx.inv_sq[j] for j in range(1, ctx.half + 1)))


def _alt_franel_harmonic(ctx: PrimeContext, h: list[int]):
    f = ctx.franel_p
    return ctx.r(sum((f[k] if k % 2 == 0 else -f[k]) * h[k] for k in range(ctx.p)))


def _lhs_thm13_h2(ctx: PrimeContext):
    return _alt_franel_harmonic(ctx, ctx.h2)


def _lhs_thm13_h1(ctx: PrimeContext):
    return _alt_franel_harmonic(ctx, ctx.h1)


def _lhs_sun_franel(ctx: PrimeContext):
    f = ctx.franel_p2
    return Residue(sum(f[k] if k % 2 == 0 else -f[k] for k in range(ctx.p)), ctx.p * ctx.p)


def _lhs_ms(ctx: PrimeContext):
    c, h1 = ctx.central, ctx.h1
    return ctx.r(sum(c[j] * h1[j] for j in range(ctx.half + 1)))


# -- right-hand sides -----------------------------------------------------------------

def _rhs_sun2011(ctx: PrimeContext):
    sign = -1 if ctx.half % 2 else 1
    return ctx.frac(4 * sign, 3) * euler_mod(ctx.p, ctx.p - 3)


def _rhs_thm12(ctx: PrimeContext):
    return ctx.frac(ctx.leg, 6) * ctx.b_third


def _rhs_sixth_b(ctx: PrimeContext):
    return ctx.frac(1, 6) * ctx.b_third


def _rhs_c4(ctx: PrimeContext):
    return ctx.frac(-1, 6) * ctx.b_third


def _rhs_c5(ctx: PrimeContext):
    p = ctx.p
    out = []
    for t in ctx.c5_t_values():
        u = lucas_mod("u", 2 - t, p - 1, p)
        acc = sum(u[k] * pow(k, -2, p) for k in range(1, p))
        out.append(ctx.r(-2 * t * acc))
    return tuple(out)


def _rhs_wolstenholme(ctx: PrimeContext):
    return (ctx.r(0), ctx.r(0))


def _rhs_lehmer_third(ctx: PrimeContext):
    return ctx.frac(ctx.leg, 2) * ctx.b_third_table


def _rhs_lehmer_sixth(ctx: PrimeContext):
    return ctx.frac(5 * ctx.leg, 2) * ctx.b_third


def _rhs_c15(ctx: PrimeContext):
    p = ctx.p
    return tuple(ctx.r(legendre_mod3(p - d) - legendre_mod3(d)) for d in range(ctx.half + 1))


def _rhs_c19(ctx: PrimeContext):
    return ctx.frac(1, 3) * ctx.b_third


def _rhs_thm13_h2(ctx: PrimeContext):
    return ctx.frac(1, 2) * ctx.b_third


def _rhs_thm13_h1(ctx: PrimeContext):
    return ctx.r(-2 * ctx.leg) * ctx.fermat_q


def _rhs_sun_franel(ctx: PrimeContext):
    return Residue(ctx.leg, ctx.p * ctx.p)


def _rhs_ms(ctx: PrimeContext):
    return ctx.r(-ctx.leg) * ctx.fermat_q


def _rhs_d3(ctx: PrimeContext):
    c, s = ctx.central, ctx.inv_central_sums
    return ctx.r(3 * sum(c[j] * s[j] for j in range(ctx.half + 1)))


# -- auxiliary assertions ---------------------------------------------------------------

def _aux_c16(ctx: PrimeContext) -> tuple[bool, str]:
    """Truncated two-term form of the half sum agrees with the closed form for every d."""
    p = ctx.p
    top = (p + 1) // 2
    for d in range(ctx.half + 1):
        two_term = legendre_mod3(top - d) + legendre_mod3(top - d - 1)
        closed = legendre_mod3(p - d) - legendre_mod3(d)
        if (two_term - closed) % p:
            return False, f"two-term form differs from closed form at d={d}"
    return True, ""


def _aux_d3(ctx: PrimeContext) -> tuple[bool, str]:
    """C(2j,j) vanishes mod p for (p+1)/2 <= j <= p-1."""
    bad = [j for j in range(ctx.half + 1, ctx.p) if ctx.central[j] % ctx.p]
    if bad:
        return False, f"C(2j,j) nonzero mod p at j={bad[0]}"
    return True, ""


# -- exact-rational left-hand sides for small primes -------------------------------------

def _exact_franel_alt(p: int, order: int) -> Fraction:
    f = franel_exact(p - 1).values
    h = harmonic_prefix(p - 1, order)
    return sum(((-1) ** k * f[k] * h[k] for k in range(p)), Fraction(0))


def _exact_thm12(p: int) -> Fraction:
    from .identities import a1_partial_sums

    return a1_partial_sums((p - 1) // 2)[-1]


def _exact_c18(p: int) -> Fraction:
    h = (p - 1) // 2
    s = inv_central_binom_prefix(h)
    return sum((binomial(2 * k, k) * s[k] for k in range(h + 1)), Fraction(0))


def _exact_c4(p: int, top: int) -> Fraction:
    h2 = harmonic_prefix(top, 2)
    return sum((binomial(2 * k, k) * h2[k] for k in range(top + 1)), Fraction(0))


def _exact_cc3(p: int) -> Fraction:
    return sum((Fraction(_signed_weight(k), k * k) for k in range(1, p)), Fraction(0))


def _exact_c19(p: int) -> Fraction:
    return sum((Fraction(_c19_weight(j, p), j * j) for j in range(1, (p - 1) // 2 + 1)), Fraction(0))


def _exact_c15(p: int) -> tuple[int, ...]:
    h = (p - 1) // 2
    return tuple(sum(binomial(2 * k, k + d) for k in range(h + 1)) for d in range(h + 1))


def _exact_ms(p: int) -> Fraction:
    h = (p - 1) // 2
    h1 = harmonic_prefix(h, 1)
    return sum((binomial(2 * j, j) * h1[j] for j in range(h + 1)), Fraction(0))


# -- registry -----------------------------------------------------------------------------

@dataclass(frozen=True)
class CongruenceCheck:
    id: str
    description: str
    modulus: str  # "p" or "p^2"
    cost: str  # "O(p)" or "O(p^2)"
    lhs: Callable[[PrimeContext], Any] = field(repr=False)
    rhs: Callable[[PrimeContext], Any] = field(repr=False)
    exact_lhs: Callable[[int], Any] | None = field(default=None, repr=False)
    aux: Callable[[PrimeContext], tuple[bool, str]] | None = field(default=None, repr=False)
    uses_bernoulli: bool = False


def _delegated(name: str):
    def side(ctx: PrimeContext, which: str):
        entry = legendre_power_check(ctx.p)
        case = next(c for c in entry.cases if c.id == name)
        return case.lhs if which == "lhs" else case.rhs

    return (lambda ctx: side(ctx, "lhs")), (lambda ctx: side(ctx, "rhs"))


_lp_lhs, _lp_rhs = _delegated("legendre_power")
_bh_lhs, _bh_rhs = _delegated("binom_halfp")

_CHECKS = [
    CongruenceCheck("sun2011_euler", "half-range inverse central binomial sum vs (4/3)(-1)^((p-1)/2) E_{p-3}",
                    "p", "O(p^2)", _lhs_sun2011, _rhs_sun2011,
                    exact_lhs=lambda p: inv_central_binom_prefix((p - 1) // 2)[-1]),
    CongruenceCheck("thm12_main", "half-range harmonic series sum vs (1/6)(p/3) B_{p-2}(1/3)",
                    "p", "O(p)", _lhs_thm12, _rhs_thm12, exact_lhs=_exact_thm12, uses_bernoulli=True),
    CongruenceCheck("c18_key", "central binomial weighted inverse central binomial sums vs (1/6) B_{p-2}(1/3)",
                    "p", "O(p)", _lhs_c18, _rhs_sixth_b, exact_lhs=_exact_c18, uses_bernoulli=True),
    CongruenceCheck("lemma_c4_half", "sum_{k<=(p-1)/2} C(2k,k) H_k^(2) vs -(1/6) B_{p-2}(1/3)",
                    "p", "O(p)", _lhs_c4_half, _rhs_c4,
                    exact_lhs=lambda p: _exact_c4(p, (p - 1) // 2), uses_bernoulli=True),
    CongruenceCheck("lemma_c4_full", "sum_{k<=p-1} C(2k,k) H_k^(2) vs -(1/6) B_{p-2}(1/3)",
                    "p", "O(p)", _lhs_c4_full, _rhs_c4,
                    exact_lhs=lambda p: _exact_c4(p, p - 1), uses_bernoulli=True),
    CongruenceCheck("c5_poly", "polynomial congruence in t with Lucas u_k(2-t), over sampled t",
                    "p", "O(p)", _lhs_c5, _rhs_c5),
    CongruenceCheck("cc3_signed", "period-6 signed inverse squares vs (1/6) B_{p-2}(1/3)",
                    "p", "O(p)", _lhs_cc3, _rhs_sixth_b, exact_lhs=_exact_cc3, uses_bernoulli=True),
    CongruenceCheck("wolstenholme_pair", "H_{p-1}^(2) and H_{(p-1)/2}^(2) vanish mod p",
                    "p", "O(p)", _lhs_wolstenholme, _rhs_wolstenholme,
                    exact_lhs=lambda p: (harmonic_prefix(p - 1, 2)[p - 1], harmonic_prefix(p - 1, 2)[(p - 1) // 2])),
    CongruenceCheck("lehmer_third", "H_{floor(p/3)}^(2) vs (1/2)(p/3) B_{p-2}(1/3) via the Bernoulli table",
                    "p", "O(p^2)", _lhs_lehmer_third, _rhs_lehmer_third,
                    exact_lhs=lambda p: harmonic_prefix(p // 3, 2)[-1]),
    CongruenceCheck("lehmer_sixth", "H_{floor(p/6)}^(2) vs (5/2)(p/3) B_{p-2}(1/3)",
                    "p", "O(p)", _lhs_lehmer_sixth, _rhs_lehmer_sixth,
                    exact_lhs=lambda p: harmonic_prefix(p // 6, 2)[-1], uses_bernoulli=True),
    CongruenceCheck("lemma_c15", "sum_k C(2k,k+d) vs ((p-d)/3) - (d/3) for every 0 <= d <= (p-1)/2",
                    "p", "O(p^2)", _lhs_c15, _rhs_c15, exact_lhs=_exact_c15, aux=_aux_c16),
    CongruenceCheck("c19_weighted", "Legendre-weighted inverse squares vs (1/3) B_{p-2}(1/3)",
                    "p", "O(p)", _lhs_c19, _rhs_c19, exact_lhs=_exact_c19, uses_bernoulli=True),
    CongruenceCheck("binom_halfp", "C((p-1)/2, k) vs C(2k,k)/(-4)^k for all k",
                    "p", "O(p)", _bh_lhs, _bh_rhs),
    CongruenceCheck("legendre_power", "(-3)^((p-1)/2) vs (p/3)", "p", "O(p)", _lp_lhs, _lp_rhs),
    CongruenceCheck("thm13_h2", "alternating Franel sum weighted by H_k^(2) vs (1/2) B_{p-2}(1/3)",
                    "p", "O(p)", _lhs_thm13_h2, _rhs_thm13_h2,
                    exact_lhs=lambda p: _exact_franel_alt(p, 2), uses_bernoulli=True),
    CongruenceCheck("thm13_h1", "alternating Franel sum weighted by H_k vs -2 (p/3) q_p(3)",
                    "p", "O(p)", _lhs_thm13_h1, _rhs_thm13_h1,
                    exact_lhs=lambda p: _exact_franel_alt(p, 1)),
    CongruenceCheck("sun_franel_alt_p2", "alternating Franel sum vs (p/3) mod p^2",
                    "p^2", "O(p)", _lhs_sun_franel, _rhs_sun_franel,
                    exact_lhs=lambda p: sum((-1) ** k * f for k, f in enumerate(franel_exact(p - 1).values))),
    CongruenceCheck("ms_central_harmonic", "sum_{j<=(p-1)/2} C(2j,j) H_j vs -(p/3) q_p(3)",
                    "p", "O(p)", _lhs_ms, _rhs_ms, exact_lhs=_exact_ms),
    CongruenceCheck("d3_truncation", "alternating Franel H^(2) sum vs 3 sum_j C(2j,j) S_j over the half range",
                    "p", "O(p)", _lhs_thm13_h2, _rhs_d3,
                    exact_lhs=lambda p: _exact_franel_alt(p, 2), aux=_aux_d3),
]

REGISTRY: dict[str, CongruenceCheck] = {c.id: c for c in _CHECKS}


def _reduce_like(value: Any, m: int) -> Any:
    if isinstance(value, tuple):
        return tuple(_reduce_like(v, m) for v in value)
    return reduce_rational(value, m)


def run_check(id: str, p: int, ctx: PrimeContext | None = None,
              options: ScanOptions | None = None) -> Case:
    """Evaluate one registered congruence at one prime."""
    try:
        check = REGISTRY[id]
    except KeyError:
        raise UnknownCheckId(f"unknown check id {id!r}; valid: {', '.join(sorted(REGISTRY))}") from None
    if ctx is None:
        ctx = PrimeContext(p, options)
    p = ctx.p
    params: dict[str, Any] = {"p": int(p), "modulus": check.modulus}
    if check.uses_bernoulli:
        params["bernoulli_path"] = ctx.bernoulli_path
    if id == "lehmer_third":
        params["bernoulli_path"] = "table"
    if id == "c5_poly":
        params["t_count"] = len(ctx.c5_t_values())
        if p > C5_FULL_MAX:
            params["seed"] = ctx.options.seed
    try:
        lhs = check.lhs(ctx)
        rhs = check.rhs(ctx)
        notes = []
        ok = lhs == rhs
        if check.exact_lhs is not None and p <= ctx.options.exact_max:
            m = p * p if check.modulus == "p^2" else p
            exact = _reduce_like(check.exact_lhs(int(p)), m)
            params["lhs_exact_crosscheck"] = True
            if exact != lhs:
                ok = False
                notes.append("residue LHS disagrees with exact-rational LHS")
        if check.aux is not None:
            aux_ok, aux_note = check.aux(ctx)
            if not aux_ok:
                ok = False
                notes.append(aux_note)
    except NotInvertible as exc:
        return Case("congruence", id, params, "", "", SKIPPED, f"skipped: {exc}")
    return Case("congruence", id, params, lhs, rhs, PASS if ok else FAIL, "; ".join(notes))


def _scan_prime(args: tuple[int, tuple[str, ...], ScanOptions]) -> list[Case]:
    p, ids, options = args
    ctx = PrimeContext(p, options)
    out = []
    for cid in ids:
        if REGISTRY[cid].cost == "O(p^2)" and p > options.o2_ceiling:
            continue
        out.append(run_check(cid, p, ctx, options))
    return out


def scan(ids: Iterable[str] | None, p_min: int, p_max: int, *, options: ScanOptions | None = None,
         jobs: int = 1) -> VerificationReport:
    """All selected checks over all primes in [p_min, p_max], ordered by (check id, prime).

    ``ids=None`` selects the whole registry; an empty collection selects nothing.
    """
    options = options or ScanOptions()
    selected = tuple(sorted(REGISTRY if ids is None else set(ids)))
    for cid in selected:
        if cid not in REGISTRY:
            raise UnknownCheckId(f"unknown check id {cid!r}; valid: {', '.join(sorted(REGISTRY))}")
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    primes = primes_in_range(p_min, p_max) if p_min <= p_max else []
    tasks = [(int(p), selected, options) for p in primes] if selected else []
    if jobs == 1 or len(tasks) <= 1:
        chunks = [_scan_prime(t) for t in tasks]
    else:
        # largest primes first so the pool drains evenly
        order = sorted(range(len(tasks)), key=lambda i: -tasks[i][0])
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = dict(zip(order, pool.map(_scan_prime, [tasks[i] for i in order])))
        chunks = [results[i] for i in range(len(tasks))]
    cases = sorted((c for chunk in chunks for c in chunk), key=lambda c: (c.id, c.params["p"]))
    config = {
        "ids": list(selected),
        "p_min": p_min,
        "p_max": p_max,
        "o2_ceiling": options.o2_ceiling,
        "bernoulli_table_max": options.bernoulli_table_max,
        "exact_max": options.exact_max,
        "seed": options.seed,
        "faults": [str(f) for f in options.faults],
    }
    report = VerificationReport(config=config, cases=cases)
    if not primes:
        report.notes.append(f"no primes >= 5 in [{p_min}, {p_max}]")
    capped = [cid for cid in selected if REGISTRY[cid].cost == "O(p^2)"]
    if capped and p_max > options.o2_ceiling:
        report.notes.append(f"O(p^2) checks ({', '.join(capped)}) capped at p <= {options.o2_ceiling}")
    return report
