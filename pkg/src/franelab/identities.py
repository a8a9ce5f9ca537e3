"""Exact checks of the finite identities and a P-recursive recurrence certifier.

Every check returns an :class:`~franelab.report.Entry` whose cases carry
both sides as exact ``Fraction`` (or ``int``) witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .exact import binomial, common_denominator, harmonic_prefix
from .modular import legendre_mod3
from .report import Case, Entry, compare
from .sequences import (
    franel_cube_sum,
    franel_exact,
    inv_central_binom_prefix,
    lucas_seq,
    lucas_v_minus1_closed,
    verify_franel_recurrence,
    verify_lucas_closed_forms,
    verify_strehl,
)

__all__ = [
    "RecurrenceSpec",
    "SequenceOracle",
    "B1_RECURRENCE",
    "FRANEL_RECURRENCE",
    "b1_lhs_values",
    "b1_rhs_values",
    "b1_lhs_oracle",
    "b1_rhs_oracle",
    "a1_partial_sums",
    "check_recurrence",
    "certify_identity_via_recurrence",
    "verify_b1",
    "verify_b2_transform",
    "verify_b3_limit",
    "verify_c1",
    "c2_points",
    "c2_sides",
    "verify_c2_polynomial",
    "verify_d1_d2",
    "d_sum",
    "verify_tauraso_halfsum",
    "IdentitySpec",
    "IDENTITIES",
    "run_identity",
]


@dataclass(frozen=True)
class RecurrenceSpec:
    """sum_i c_i(n) S(n+i) = 0, each c_i given low-degree-first as integer coefficients."""

    name: str
    coeffs: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int, n: int) -> int:
        acc = 0
        for a in reversed(self.coeffs[i]):
            acc = acc * n + a
        return acc


# 3(n+1)(2n+3), -(2n+5)(5n+9), 2n^2+17n+29, (n+3)(2n+5)
B1_RECURRENCE = RecurrenceSpec(
    "b1_order3",
    ((9, 15, 6), (-45, -43, -10), (29, 17, 2), (15, 11, 2)),
)

# Franel recurrence shifted by one: -8(n+1)^2 f_n - (7n^2+21n+16) f_{n+1} + (n+2)^2 f_{n+2} = 0
FRANEL_RECURRENCE = RecurrenceSpec(
    "franel_order2",
    ((-8, -16, -8), (-16, -21, -7), (4, 4, 1)),
)


class SequenceOracle:
    """A named, deterministic term function n -> Fraction with memoization."""

    def __init__(self, name: str, term: Callable[[int], Fraction] | None = None,
                 values: Sequence[Fraction] | None = None):
        if term is None and values is None:
            raise ValueError("SequenceOracle needs a term function or precomputed values")
        self.name = name
        self._term = term
        self._cache: dict[int, Fraction] = dict(enumerate(values)) if values is not None else {}

    def __call__(self, n: int) -> Fraction:
        if n not in self._cache:
            if self._term is None:
                raise IndexError(f"{self.name}: no value for n={n}")
            self._cache[n] = Fraction(self._term(n))
        return self._cache[n]

    def perturbed(self, n: int, delta: Fraction | int = 1) -> "SequenceOracle":
        base = self

        def term(m: int) -> Fraction:
            return base(m) + (delta if m == n else 0)

        return SequenceOracle(f"{self.name}+fault@{n}", term)


def b1_lhs_values(N: int) -> list[Fraction]:
    """sum_{k=0..n} (-4)^k C(n,k) S_k for n = 0..N, with S_k the inverse central binomial sums."""
    den, nums = common_denominator(inv_central_binom_prefix(N))
    out = []
    for n in range(N + 1):
        acc = 0
        w = 1
        for k in range(n + 1):
            acc += w * binomial(n, k) * nums[k]
            w *= -4
        out.append(Fraction(acc, den))
    return out


def a1_partial_sums(N: int) -> list[Fraction]:
    """T_n = sum_{k=1..n} (H_k - 2 H_{2k}) / ((-3)^k k) for n = 0..N."""
    h = harmonic_prefix(2 * N, 1)
    out = [Fraction(0)]
    for k in range(1, N + 1):
        out.append(out[-1] + (h[k] - 2 * h[2 * k]) / ((-3) ** k * k))
    return out


def b1_rhs_values(N: int) -> list[Fraction]:
    return [(-3) ** n * t for n, t in enumerate(a1_partial_sums(N))]


def b1_lhs_oracle(N: int) -> SequenceOracle:
    return SequenceOracle("b1_lhs", values=b1_lhs_values(N))


def b1_rhs_oracle(N: int) -> SequenceOracle:
    return SequenceOracle("b1_rhs", values=b1_rhs_values(N))


def check_recurrence(spec: RecurrenceSpec, seq: SequenceOracle, n_max: int) -> Entry:
    """One case per 0 <= n <= n_max - r comparing sum_i c_i(n) seq(n+i) with 0."""
    r = spec.order
    cases = []
    for n in range(n_max - r + 1):
        lead = spec.coeff(r, n)
        if lead == 0:
            raise ValueError(f"{spec.name}: leading coefficient vanishes at n={n}")
        total = sum((spec.coeff(i, n) * seq(n + i) for i in range(r + 1)), Fraction(0))
        cases.append(compare("recurrence", f"{spec.name}:{seq.name}", {"n": n}, total, Fraction(0)))
    return Entry(f"{spec.name}:{seq.name}", cases)


def certify_identity_via_recurrence(spec: RecurrenceSpec, lhs: SequenceOracle,
                                    rhs: SequenceOracle, n_max: int) -> Entry:
    """Same recurrence for both sides, equal initial values, and pointwise agreement on the window.

    Cases are ordered initial values, pointwise, then the two recurrence runs.
    """
    r = spec.order
    cid = f"certify:{lhs.name}={rhs.name}"
    cases: list[Case] = []
    for n in range(min(r, n_max + 1)):
        cases.append(compare("initial", cid, {"n": n}, lhs(n), rhs(n)))
    for n in range(n_max + 1):
        cases.append(compare("pointwise", cid, {"n": n}, lhs(n), rhs(n)))
    cases += check_recurrence(spec, lhs, n_max).cases
    cases += check_recurrence(spec, rhs, n_max).cases
    return Entry(cid, cases)


def verify_b1(n_max: int) -> Entry:
    lhs, rhs = b1_lhs_values(n_max), b1_rhs_values(n_max)
    return Entry("b1", [compare("identity", "b1", {"n": n}, lhs[n], rhs[n]) for n in range(n_max + 1)])


def verify_b2_transform(n_max: int) -> Entry:
    """T_n = sum_{j<=n} a_j (1 - sum_{k<j} (-4)^k C(n,k) / (-3)^n) with a_j = 1/(j^2 C(2j,j))."""
    s = inv_central_binom_prefix(n_max)
    t = a1_partial_sums(n_max)
    den, anum = common_denominator([s[j] - s[j - 1] for j in range(1, n_max + 1)])
    cases = []
    for n in range(n_max + 1):
        # sum_j a_j * P(n, j) with P(n, j) = sum_{k<j} (-4)^k C(n,k)
        acc = 0
        partial = 0
        w = 1
        for j in range(1, n + 1):
            partial += w * binomial(n, j - 1)
            w *= -4
            acc += anum[j - 1] * partial
        rhs = s[n] - Fraction(acc, den * (-3) ** n)
        cases.append(compare("identity", "b2", {"n": n}, t[n], rhs))
    return Entry("b2", cases)


def verify_b3_limit(n: int = 60, j_max: int = 5, exponent: int = 6) -> Entry:
    """|sum_{k<j} (-4)^k C(n,k) / (-3)^n| < 10^-exponent, compared exactly."""
    cases = []
    for j in range(1, j_max + 1):
        q = sum((Fraction((-4) ** k * binomial(n, k), (-3) ** n) for k in range(j)), Fraction(0))
        small = abs(q.numerator) * 10**exponent < q.denominator
        cases.append(Case("limit", "b3", {"n": n, "j": j, "bound": f"1e-{exponent}"}, q, f"<1e-{exponent}",
                          "pass" if small else "fail"))
    return Entry("b3", cases)


def verify_b4_limit(n: int = 200, exponent: int = 20) -> Entry:
    from .series import cross_series_agreement

    return cross_series_agreement(n, exponent=exponent, id="b4")


def verify_c1(n_max: int) -> Entry:
    s = inv_central_binom_prefix(n_max)
    h2 = harmonic_prefix(n_max, 2)
    cases = []
    for n in range(n_max + 1):
        c = binomial(2 * n, n)
        rhs = c * h2[n] + sum(
            (Fraction(lucas_v_minus1_closed(k) * binomial(2 * n, n + k), k * k) for k in range(1, n + 1)),
            Fraction(0),
        )
        cases.append(compare("identity", "c1", {"n": n}, c * s[n], rhs))
    return Entry("c1", cases)


def c2_points(count: int) -> list[int]:
    """count distinct integers 1, 0, 2, -1, 3, -2, ... (always starting at t = 1)."""
    out = []
    i = 0
    while len(out) < count:
        out.append(1 + (i + 1) // 2 if i % 2 == 0 else 1 - (i + 1) // 2)
        i += 1
    return out


def c2_sides(n: int, t: Fraction | int) -> tuple[Fraction, Fraction]:
    """Both sides of the polynomial identity at one rational t, by direct summation."""
    t = Fraction(t)
    c = binomial(2 * n, n)
    lhs = c * sum((t**k / (k * k * binomial(2 * k, k)) for k in range(1, n + 1)), Fraction(0))
    v = lucas_seq("v", t - 2, n)
    rhs = c * harmonic_prefix(n, 2)[n] + sum(
        (v[k] / (k * k) * binomial(2 * n, n + k) for k in range(1, n + 1)), Fraction(0)
    )
    return lhs, rhs


def verify_c2_polynomial(n_max: int, points: int | None = None) -> Entry:
    """Both sides are polynomials of degree <= n in t; agreement at >= n+1 points is a proof.

    One case per n; lhs/rhs are the tuples of values over all evaluation points.
    """
    if points is None:
        points = n_max + 1
    if points < n_max + 1:
        raise ValueError(f"need at least n_max + 1 = {n_max + 1} points, got {points}")
    ts = c2_points(points)
    s = inv_central_binom_prefix(n_max)
    aden, anum = common_denominator([s[k] - s[k - 1] for k in range(1, n_max + 1)])
    h2 = harmonic_prefix(n_max, 2)
    sq_den, sq_num = common_denominator([Fraction(1, k * k) for k in range(1, n_max + 1)])

    lhs_rows: list[list[Fraction]] = [[] for _ in range(n_max + 1)]
    rhs_rows: list[list[Fraction]] = [[] for _ in range(n_max + 1)]
    for t in ts:
        v = lucas_seq("v", t - 2, n_max).values
        vint = [int(x) for x in v]
        prefix = 0
        tk = 1
        for n in range(n_max + 1):
            c = binomial(2 * n, n)
            if n:
                tk *= t
                prefix += tk * anum[n - 1]
            lhs_rows[n].append(Fraction(c * prefix, aden))
            tail = sum(vint[k] * sq_num[k - 1] * binomial(2 * n, n + k) for k in range(1, n + 1))
            rhs_rows[n].append(c * h2[n] + Fraction(tail, sq_den))
    cases = [
        compare("identity", "c2", {"n": n, "points": points}, tuple(lhs_rows[n]), tuple(rhs_rows[n]))
        for n in range(n_max + 1)
    ]
    return Entry("c2", cases)


def d_sum(n: int, order: int, k_from: int | None = None) -> Fraction:
    """sum_{k=n..2n} (-1)^k C(k,n) C(n,k-n) H_k^(order); ``k_from=0`` sums from k = 0 instead."""
    h = harmonic_prefix(2 * n, order)
    start = n if k_from is None else k_from
    return sum(
        ((-1) ** k * binomial(k, n) * binomial(n, k - n) * h[k] for k in range(start, 2 * n + 1)),
        Fraction(0),
    )


def _verify_d(n_max: int, order: int) -> Entry:
    cid = "d1" if order == 2 else "d2"
    hden, hnum = common_denominator(harmonic_prefix(2 * n_max, order))
    if order == 2:
        target = [3 * x for x in inv_central_binom_prefix(n_max)]
    else:
        target = [2 * x for x in harmonic_prefix(n_max, 1)]
    cases = []
    for n in range(n_max + 1):
        acc = sum((-1) ** k * binomial(k, n) * binomial(n, k - n) * hnum[k] for k in range(n, 2 * n + 1))
        cases.append(compare("identity", cid, {"n": n}, Fraction(acc, hden), target[n]))
    return Entry(cid, cases)


def verify_d1_d2(n_max: int) -> Entry:
    return Entry("d1_d2", _verify_d(n_max, 2).cases + _verify_d(n_max, 1).cases)


def verify_tauraso_halfsum(n_max: int, d_max: int | None = None) -> Entry:
    """sum_{k<n} C(2k,k+d) against sum_{k<=n-d} ((n-d-k)/3) C(2n,k), all 0 <= d <= n <= n_max."""
    cases = []
    for n in range(n_max + 1):
        top = n if d_max is None else min(n, d_max)
        for d in range(top + 1):
            lhs = sum(binomial(2 * k, k + d) for k in range(n))
            rhs = sum(legendre_mod3(n - d - k) * binomial(2 * n, k) for k in range(n - d + 1))
            cases.append(compare("identity", "tauraso", {"n": n, "d": d}, lhs, rhs))
    return Entry("tauraso", cases)


def _franel_certify(n_max: int) -> Entry:
    f = franel_exact(n_max)
    rec = SequenceOracle("franel_rec", values=[Fraction(x) for x in f.values])
    cube = SequenceOracle("franel_cube", term=franel_cube_sum)
    return certify_identity_via_recurrence(FRANEL_RECURRENCE, rec, cube, n_max)


def _b1_certify(n_max: int) -> Entry:
    return certify_identity_via_recurrence(B1_RECURRENCE, b1_lhs_oracle(n_max), b1_rhs_oracle(n_max), n_max)


@dataclass(frozen=True)
class IdentitySpec:
    id: str
    description: str
    label: str
    parameters: str
    default_n_max: int
    run: Callable[[int], Entry] = field(repr=False)


IDENTITIES: dict[str, IdentitySpec] = {
    spec.id: spec
    for spec in [
        IdentitySpec("b1", "binomial transform of inverse central binomial sums equals (-3)^n times the "
                     "alternating harmonic series partial sum", "binomial-transform lemma", "0 <= n <= n_max",
                     200, verify_b1),
        IdentitySpec("b1_recurrence", "both sides of b1 satisfy the order-3 recurrence and share initial values",
                     "recurrence certificate", "0 <= n <= n_max", 100, _b1_certify),
        IdentitySpec("b2", "finite rearrangement of the harmonic series partial sum", "finite transform",
                     "0 <= n <= n_max", 200, verify_b2_transform),
        IdentitySpec("b3", "deflation term is below 1e-6 at n = 60 for j <= 5", "limit sanity",
                     "1 <= j <= 5, n = 60", 60, lambda n_max: verify_b3_limit()),
        IdentitySpec("b4", "partial sums of the two pi^2/18 series agree to 1e-20 at n = 200",
                     "shared limit", "n = 200", 200, lambda n_max: verify_b4_limit()),
        IdentitySpec("c1", "central binomial times inverse central binomial sum, specialised at t = 1",
                     "t = 1 specialisation", "0 <= n <= n_max", 100, verify_c1),
        IdentitySpec("c2", "polynomial identity in t with Lucas v_k(t-2), checked at n+1 points",
                     "polynomial identity", "0 <= n <= n_max, n_max + 1 integer points", 100,
                     lambda n_max: verify_c2_polynomial(n_max)),
        IdentitySpec("d1", "signed binomial sum of H_k^(2) equals 3 times the inverse central binomial sum",
                     "second-order harmonic transform", "0 <= n <= n_max", 200,
                     lambda n_max: _verify_d(n_max, 2)),
        IdentitySpec("d2", "signed binomial sum of H_k equals 2 H_n", "first-order harmonic transform",
                     "0 <= n <= n_max", 200, lambda n_max: _verify_d(n_max, 1)),
        IdentitySpec("strehl", "cube sum equals both Strehl forms of the Franel numbers", "Strehl identity",
                     "0 <= n <= n_max", 200, verify_strehl),
        IdentitySpec("franel_rec", "Franel numbers satisfy their three-term recurrence", "Franel recurrence",
                     "1 <= n <= n_max - 1", 200, lambda n_max: verify_franel_recurrence(franel_exact(n_max).values)),
        IdentitySpec("franel_certify", "recurrence-generated and cube-sum Franel numbers agree",
                     "recurrence certificate", "0 <= n <= n_max", 200, _franel_certify),
        IdentitySpec("lucas", "closed forms of v_k(-1) and u_k(1)", "Lucas closed forms", "0 <= k <= n_max",
                     2000, verify_lucas_closed_forms),
        IdentitySpec("tauraso", "sum of C(2k,k+d) against a Legendre-weighted row of C(2n,.)",
                     "half-sum binomial identity", "0 <= d <= n <= n_max", 100, verify_tauraso_halfsum),
    ]
}


def run_identity(id: str, n_max: int | None = None) -> Entry:
    if id not in IDENTITIES:
        raise KeyError(f"unknown identity id {id!r}; valid: {', '.join(IDENTITIES)}")
    spec = IDENTITIES[id]
    return spec.run(spec.default_n_max if n_max is None else n_max)
