import pytest

from magmakit import sweeps
from magmakit.enumeration import SearchBudget
from magmakit.verify import distributive_precondition, run_verification_suite

SMALL = [
    lambda: sweeps.core_invariants(2),
    lambda: sweeps.semidirect_sweep(2),
    lambda: sweeps.literal_validation_sweep(2),
    lambda: sweeps.comparison_iso_sweep(2, 20, 3, 0),
    lambda: sweeps.equation_redundancy(2, 2),
    lambda: sweeps.monoid_specialization(2),
    lambda: sweeps.morphism_sweep(2, 0),
    lambda: sweeps.kernel_cokernel(2, 2, 0),
    lambda: sweeps.composition_sweep(2, 0),
    lambda: sweeps.noncomposable_witness(2),
    lambda: sweeps.firm_closure_exhaustive(2, 0),
    lambda: sweeps.firm_closure_sampled(20, 3, 0),
    lambda: sweeps.pullback_stability(2, 2, 0),
    lambda: sweeps.restriction_sweep(2, 2),
    lambda: sweeps.short_five_sweep(2),
    lambda: sweeps.short_five_mixed_case(2),
    lambda: sweeps.enumeration_counts(3),
    lambda: distributive_precondition(3),
]


@pytest.mark.parametrize("step", range(len(SMALL)))
def test_small_sweeps_pass(step):
    out = SMALL[step]()
    for r in out if isinstance(out, list) else [out]:
        assert r.passed, (r.name, r.counterexamples)
        assert r.instances > 0


def test_counterexamples_are_capped():
    r = sweeps.PropertyResult("x", "claim", "scope")
    for i in range(20):
        r.fail({"i": i})
    assert not r.passed
    assert len(r.counterexamples) == sweeps.MAX_COUNTEREXAMPLES
    assert "seconds" not in r.to_dict()


def test_iterated_composition_is_informational():
    r = sweeps.iterated_composition(2, 50)
    assert r.passed
    assert r.instances == 50


def test_verify_small_budgets():
    rep = run_verification_suite(SearchBudget(max_order=1))
    assert rep.passed
    names = [p.name for p in rep.properties]
    assert len(names) == len(set(names)) == 21
    rep2 = run_verification_suite(SearchBudget(max_order=2))
    assert rep2.passed
    details = {p.name: p.details for p in rep2.properties}
    assert details["noncomposable_witness"]["search_witness"]["y_d_x"] == [1, 1, 1]


def test_verify_json_is_stable_across_workers():
    a = run_verification_suite(SearchBudget(max_order=2), workers=1).to_json()
    b = run_verification_suite(SearchBudget(max_order=2), workers=2).to_json()
    assert a == b
