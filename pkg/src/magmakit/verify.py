"""The verification suite: every property sweep at bounds derived from a budget.

``max_order`` caps the component orders.  Cheap sweeps run up to order 3,
pair and morphism sweeps up to order 2, and the magma count up to order 4.
Sampled sweeps run only from order 3 on, with ``max_candidates`` samples per
family (default 200).
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field

from . import sweeps
from .actions import semidirect
from .classes import SplitEpiClass, class_of_extension
from .composition import check_distributive_closure
from .enumeration import SearchBudget
from .errors import PreconditionViolation
from .extensions import kernel_only_extension
from .search import search_firm_not_distributive
from .sweeps import PropertyResult, timed

log = logging.getLogger(__name__)

DEFAULT_SAMPLES = 200


@dataclass
class VerificationReport:
    budget: SearchBudget
    properties: list[PropertyResult] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.properties)

    def to_dict(self) -> dict:
        # worker count and timings are left out: the report must not depend on them
        return {
            "suite": "magmakit-verify",
            "budget": {
                "max_order": self.budget.max_order,
                "max_candidates": self.budget.max_candidates,
                "seed": self.budget.seed,
            },
            "passed": self.passed,
            "properties": [p.to_dict() for p in self.properties],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def table(self) -> str:
        width = max((len(p.name) for p in self.properties), default=8)
        lines = [f"{'property':<{width}}  status  {'instances':>10}  seconds"]
        for p in self.properties:
            status = "PASS" if p.passed else "FAIL"
            lines.append(f"{p.name:<{width}}  {status:<6}  {p.instances:>10}  {p.seconds:7.2f}")
            for w in p.counterexamples:
                lines.append(f"    counterexample: {json.dumps(w, sort_keys=True)}")
        verdict = "PASS" if self.passed else "FAIL"
        lines.append(f"overall: {verdict} ({len(self.properties)} properties, {self.seconds:.1f}s)")
        return "\n".join(lines)


@timed
def distributive_precondition(max_order: int) -> PropertyResult:
    """A firm action that is not distributive exists from |X| = 3 on, and
    the distributive closure check refuses it."""
    res = PropertyResult(
        "distributive_precondition",
        "firm does not imply distributive; closure check rejects such inputs",
        f"lexicographic search with |B|, |X| <= {max_order}",
    )
    found = search_firm_not_distributive(SearchBudget(max_order=max_order))
    res.instances = 0 if found is None else found.candidates
    if found is None:
        res.details = {"witness": None}
        if max_order >= 3:
            res.fail({"claim": "search finds a firm non-distributive action"})
        return res
    res.details = {
        "witness": {
            "B": found.action.b.table.tolist(),
            "X": found.action.x.table.tolist(),
            "action": found.action.table.tolist(),
            "b_x_x'": list(found.witness),
        }
    }
    inner = semidirect(found.action).extension
    if class_of_extension(inner) != SplitEpiClass.E_PRIME:
        res.fail({"claim": "witness classifies as firm but not distributive"})
    try:
        check_distributive_closure(kernel_only_extension(inner.b), inner)
        res.fail({"claim": "closure check accepts a non-distributive inner extension"})
    except PreconditionViolation:
        pass
    return res


def run_verification_suite(budget: SearchBudget, workers: int | None = None) -> VerificationReport:
    workers = budget.workers if workers is None else workers
    m, seed = budget.max_order, budget.seed
    m2, m3 = min(m, 2), min(m, 3)
    samples = (budget.max_candidates or DEFAULT_SAMPLES) if m >= 3 else 0
    t0 = time.perf_counter()
    rep = VerificationReport(budget)
    steps = [
        lambda: sweeps.core_invariants(m3),
        lambda: sweeps.semidirect_sweep(m3, workers),
        lambda: sweeps.literal_validation_sweep(m2),
        lambda: sweeps.comparison_iso_sweep(m2, samples, 3, seed),
        lambda: sweeps.equation_redundancy(m3, m2),
        lambda: sweeps.monoid_specialization(m3),
        lambda: sweeps.morphism_sweep(m2, seed),
        lambda: sweeps.kernel_cokernel(m2, m3, seed),
        lambda: sweeps.composition_sweep(m2, seed),
        lambda: sweeps.noncomposable_witness(m2),
        lambda: sweeps.firm_closure_exhaustive(m2, seed),
        lambda: sweeps.firm_closure_sampled(samples, 3, seed),
        lambda: distributive_precondition(m3),
        lambda: sweeps.pullback_stability(m2, m3, seed),
        lambda: sweeps.restriction_sweep(m2, m3),
        lambda: sweeps.short_five_sweep(m3, workers),
        lambda: sweeps.short_five_mixed_case(m2),
        lambda: sweeps.enumeration_counts(min(m, 4), workers),
        lambda: sweeps.iterated_composition(m2, 300),
    ]
    for step in steps:
        out = step()
        for r in out if isinstance(out, list) else [out]:
            log.info("%s: %s (%d instances)", r.name, "pass" if r.passed else "FAIL", r.instances)
            rep.properties.append(r)
    rep.seconds = time.perf_counter() - t0
    return rep
