import dataclasses
from fractions import Fraction

import pytest

from franelab import congruences
from franelab.congruences import (
    REGISTRY,
    Fault,
    PrimeContext,
    ScanOptions,
    UnknownCheckId,
    run_check,
    scan,
)
from franelab.modular import DenominatorNotInvertible, Residue, primes_in_range

from oracles import franel_direct, reduce_mod


def test_registry_ids():
    assert set(REGISTRY) == {
        "sun2011_euler", "thm12_main", "c18_key", "lemma_c4_half", "lemma_c4_full", "c5_poly",
        "cc3_signed", "wolstenholme_pair", "lehmer_third", "lehmer_sixth", "lemma_c15",
        "c19_weighted", "binom_halfp", "legendre_power", "thm13_h2", "thm13_h1",
        "sun_franel_alt_p2", "ms_central_harmonic", "d3_truncation",
    }
    assert all(c.cost in ("O(p)", "O(p^2)") and c.modulus in ("p", "p^2") for c in REGISTRY.values())


def test_thm12_at_5():
    case = run_check("thm12_main", 5)
    assert case.passed
    assert case.lhs == Residue(2, 5) == case.rhs
    assert reduce_mod(Fraction(14, 27), 5) == 2


def test_sun_franel_at_5():
    case = run_check("sun_franel_alt_p2", 5)
    assert sum((-1) ** k * franel_direct(k) for k in range(5)) == 299
    assert case.lhs == Residue(24, 25) == case.rhs


def test_thm13_at_5():
    h1 = run_check("thm13_h1", 5)
    h2 = run_check("thm13_h2", 5)
    assert h1.lhs == Residue(reduce_mod(Fraction(3787, 6), 5), 5) == Residue(2, 5) == h1.rhs
    assert h2.lhs == Residue(reduce_mod(Fraction(30733, 72), 5), 5) == Residue(4, 5) == h2.rhs


def test_unknown_check():
    with pytest.raises(UnknownCheckId):
        run_check("nosuch", 5)
    with pytest.raises(UnknownCheckId):
        scan(["nosuch"], 5, 7)


def test_scan_all_to_100():
    report = scan(None, 5, 100)
    assert report.summary["fail"] == 0 and report.summary["skipped"] == 0
    assert report.summary["pass"] == len(REGISTRY) * len(primes_in_range(5, 100))


def test_scan_empty_selection():
    report = scan([], 5, 100)
    assert report.cases == [] and report.summary == {"pass": 0, "fail": 0, "skipped": 0}


def test_scan_single_case():
    report = scan(["thm13_h2"], 7, 7)
    assert len(report.cases) == 1
    (case,) = report.cases
    assert case.lhs == case.rhs == Residue(3, 7)


def test_scan_ordering_and_cap():
    report = scan(["lemma_c15", "thm12_main"], 5, 60, options=ScanOptions(o2_ceiling=30))
    keys = [(c.id, c.params["p"]) for c in report.cases]
    assert keys == sorted(keys)
    assert max(c.params["p"] for c in report.cases if c.id == "lemma_c15") <= 30
    assert max(c.params["p"] for c in report.cases if c.id == "thm12_main") == 59
    assert any("capped" in n for n in report.notes)


def test_scan_no_primes_note():
    report = scan(None, 4, 4)
    assert report.cases == [] and report.ok
    assert any("no primes" in n for n in report.notes)


def test_scan_parallel_matches_serial():
    a = scan(None, 5, 80, jobs=1)
    b = scan(None, 5, 80, jobs=2)
    assert [c.to_dict() for c in a.cases] == [c.to_dict() for c in b.cases]


def test_lemma_c15_counts_every_d():
    for p in (5, 13, 101):
        case = run_check("lemma_c15", p)
        assert case.passed
        assert len(case.lhs) == (p - 1) // 2 + 1


def test_c5_sampling_is_deterministic():
    small = PrimeContext(199)
    assert small.c5_t_values() == list(range(1, 199))
    a = PrimeContext(401, ScanOptions(seed=3)).c5_t_values()
    b = PrimeContext(401, ScanOptions(seed=3)).c5_t_values()
    c = PrimeContext(401, ScanOptions(seed=4)).c5_t_values()
    assert a == b and len(a) == 16 and a != c
    case = run_check("c5_poly", 401, options=ScanOptions(seed=3))
    assert case.passed and case.params["t_count"] == 16 and case.params["seed"] == 3


def test_bernoulli_path_recorded():
    assert run_check("thm12_main", 13).params["bernoulli_path"] == "table"
    fast = run_check("thm12_main", 13, options=ScanOptions(bernoulli_table_max=7))
    assert fast.passed and fast.params["bernoulli_path"] == "fast"
    assert run_check("lehmer_third", 13).params["bernoulli_path"] == "table"


def test_exact_crosscheck_flagged():
    assert run_check("thm13_h1", 53).params.get("lhs_exact_crosscheck") is True
    assert "lhs_exact_crosscheck" not in run_check("thm13_h1", 53, options=ScanOptions(exact_max=0)).params


def test_fault_parse():
    assert Fault.parse("franel:3") == Fault("franel", 3)
    for bad in ("franel", "nosuch:1", "harmonic:-1"):
        with pytest.raises(ValueError):
            Fault.parse(bad)


@pytest.mark.parametrize("fault", [Fault("franel", 3), Fault("harmonic", 2), Fault("bernoulli", 4)])
def test_single_fault_is_detected(fault):
    report = scan(None, 5, 60, options=ScanOptions(faults=(fault,)))
    assert report.summary["fail"] > 0


@pytest.mark.parametrize("cid", sorted(REGISTRY))
def test_independence_audit(cid, monkeypatch):
    """Each check fails when its RHS is replaced by LHS + 1, and its RHS does not evaluate its LHS."""
    check = REGISTRY[cid]

    def shifted(ctx):
        v = check.lhs(ctx)
        if isinstance(v, tuple):
            return (v[0] + 1,) + v[1:]
        return v + 1

    monkeypatch.setitem(REGISTRY, cid, dataclasses.replace(check, rhs=shifted))
    assert not run_check(cid, 13).passed

    def forbidden(ctx):
        raise AssertionError("RHS evaluated the LHS")

    expected = check.rhs(PrimeContext(13))
    monkeypatch.setitem(REGISTRY, cid, dataclasses.replace(check, lhs=forbidden))
    assert REGISTRY[cid].rhs(PrimeContext(13)) == expected


def test_exact_crosscheck_catches_residue_path_bug(monkeypatch):
    check = REGISTRY["thm13_h1"]

    def shifted(ctx):
        return check.lhs(ctx) + 1

    monkeypatch.setitem(REGISTRY, "thm13_h1", dataclasses.replace(check, lhs=shifted, rhs=shifted))
    case = run_check("thm13_h1", 11)
    assert case.verdict == "fail" and "exact" in case.note
    assert run_check("thm13_h1", 11, options=ScanOptions(exact_max=0)).passed


def test_denominator_failure_becomes_skip(monkeypatch):
    check = REGISTRY["thm12_main"]

    def raising(ctx):
        raise DenominatorNotInvertible("forced")

    monkeypatch.setitem(REGISTRY, "thm12_main", dataclasses.replace(check, rhs=raising))
    case = run_check("thm12_main", 7)
    assert case.verdict == "skipped"
    report = scan(["thm12_main"], 5, 7)
    assert report.summary["skipped"] == 2 and not report.ok
