"""Acceptance criteria 1-10, each run at its stated bound and tolerance.

Every test records one PASS/FAIL line, printed in the pytest terminal
summary.  Run this file directly to print the lines without pytest.
"""

import subprocess
import sys
import time

import numpy as np
import pytest

from magmakit import sweeps
from magmakit.actions import semidirect, trivial_action
from magmakit.classes import short_five_mixed
from magmakit.composition import is_composable
from magmakit.core import cyclic_group, identity, or_monoid
from magmakit.enumeration import SearchBudget, count_magmas, enumerate_magmas, iso_classes
from magmakit.search import search_noncomposable_pair

SEED = 20240607
RESULTS: dict[int, str] = {}


def record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(RESULTS[n])
    assert ok, RESULTS[n]


def _failures(results) -> list[str]:
    return [f"{r.name}: {r.counterexamples}" for r in results if not r.passed]


def test_criterion_01_semidirect_validity():
    t0 = time.perf_counter()
    valid, *_ = sweeps.semidirect_sweep(3)
    secs = time.perf_counter() - t0
    ok = valid.passed and valid.instances > 0 and secs < 120
    record(1, ok, f"{valid.instances} actions with |B|,|X| <= 3, {len(valid.counterexamples)} failures, {secs:.1f}s")


def test_criterion_02_round_trips():
    _, round_trip, comparison = sweeps.semidirect_sweep(3)
    scrambled = sweeps.comparison_iso_sweep(2, 1000, 3, SEED)
    bad = _failures([round_trip, comparison, scrambled])
    ok = not bad and scrambled.instances >= 1000
    record(
        2,
        ok,
        f"Act->SplExt->Act on {round_trip.instances}, comparison maps on {comparison.instances}, "
        f"{scrambled.instances} scrambled" + (f"; {bad}" if bad else ""),
    )


def test_criterion_03_composability_trichotomy():
    r = sweeps.composition_sweep(2, SEED)
    record(3, r.passed and r.instances > 0, f"{r.instances} middle-compatible pairs, details {r.details}")


def test_criterion_04_noncomposable_witness():
    hit = search_noncomposable_pair(SearchBudget(max_order=2))
    f, e = sweeps.specific_noncomposable_pair()
    c = is_composable(f, e)
    ok = (
        hit is not None
        and not hit.result.composable
        and not c.composable
        and c.witness == (1, 1, 1)
        and c.violation[0] == "assoc_left"
    )
    record(4, ok, f"search witness {None if hit is None else hit.result.witness}, specific pair fails at {c.witness}")


def test_criterion_05_firmness_closure():
    exhaustive = sweeps.firm_closure_exhaustive(2, SEED)
    sampled = sweeps.firm_closure_sampled(10_000, 3, SEED)
    counts = sampled.details["counts"]
    bad = _failures([exhaustive, sampled])
    ok = not bad and min(counts.values()) >= 10_000 and exhaustive.details["firm_both"] > 0
    record(
        5,
        ok,
        f"exhaustive {exhaustive.instances} pairs {exhaustive.details}; sampled {counts}, "
        f"nontrivial inner actions {sampled.details['nontrivial_inner_actions']}"
        + (f"; {bad}" if bad else ""),
    )


def test_criterion_06_pullback_stability():
    r = sweeps.pullback_stability(2, 3, SEED)
    record(6, r.passed and r.instances > 0, f"{r.instances} (extension, f) pairs, {len(r.counterexamples)} failures")


def test_criterion_07_monoid_specialization():
    r = sweeps.monoid_specialization(3)
    record(7, r.passed and r.instances > 0, f"{r.instances} tuples over monoids of order <= 3, {len(r.counterexamples)} failures")


def test_criterion_08_short_five():
    ab = sweeps.short_five_sweep(3)
    orm, z2 = or_monoid(), cyclic_group(2)
    rep_or = short_five_mixed(orm, orm, identity(orm))
    rep_z2 = short_five_mixed(z2, z2, identity(z2))
    d = semidirect(trivial_action(orm, orm))
    p = rep_or.p.values
    hyp = np.array_equal(p[d.inj1.values], d.inj1.values) and np.array_equal(d.proj2.values[p], d.proj2.values)
    ok = (
        ab.passed
        and ab.details["case_a"] > 0
        and ab.details["case_b"] > 0
        and rep_or.is_hom
        and hyp
        and not rep_or.injective
        and p[d.pair(0, 1)] == p[d.pair(1, 1)]
        and rep_z2.isomorphism
    )
    record(
        8,
        ok,
        f"cases a/b: {ab.details['case_a']}/{ab.details['case_b']} maps all isomorphisms; "
        f"OR p={p.tolist()} not injective; Z2 bijective={rep_z2.isomorphism}",
    )


def test_criterion_09_counts():
    small = [sum(1 for _ in enumerate_magmas(n)) for n in (1, 2, 3)]
    t0 = time.perf_counter()
    order4 = count_magmas(4, workers=4)
    secs = time.perf_counter() - t0
    streamed = sum(1 for _ in enumerate_magmas(4))
    classes = len(iso_classes(enumerate_magmas(2)))
    ok = small == [1, 2, 81] and order4 == streamed == 262144 and secs < 600 and classes == 2
    record(9, ok, f"counts {small + [order4]} (order 4 in {secs:.1f}s, 4 workers), {classes} classes at order 2")


def _verify(workers: int) -> bytes:
    cmd = [sys.executable, "-m", "magmakit.cli", "verify", "--max-order", "2", "--json", "--workers", str(workers)]
    out = subprocess.run(cmd, capture_output=True, check=False)
    assert out.returncode == 0, out.stderr.decode()
    return out.stdout


def test_criterion_10_determinism():
    runs = [_verify(1), _verify(1), _verify(4)]
    ok = len(set(runs)) == 1 and len(runs[0]) > 0
    record(10, ok, f"3 runs (workers 1, 1, 4), {len(runs[0])} bytes, identical={len(set(runs)) == 1}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
