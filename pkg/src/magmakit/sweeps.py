"""Exhaustive and sampled property sweeps.

Each sweep returns a :class:`PropertyResult` with an instance count and the
first few counterexamples.  Sweeps take their bounds explicitly; the
verification suite chooses bounds from a :class:`SearchBudget`, the
acceptance tests choose larger ones.  Sampled sweeps draw from
``numpy.random.default_rng(seed)`` in a fixed order.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator

import numpy as np

from . import laws
from .actions import (
    Action,
    associated_action,
    enumerate_actions,
    is_distributive,
    is_firm,
    restrict_action,
    semidirect,
    trivial_action,
)
from .classes import (
    SplitEpiClass,
    class_of_extension,
    short_five_check,
    short_five_mixed,
)
from .composition import (
    check_distributive_closure,
    check_firm_closure,
    compose,
    is_composable,
    normal_form_witness,
)
from .core import (
    Hom,
    Magma,
    additivity_witness,
    are_isomorphic,
    compose_maps,
    cyclic_group,
    identity,
    is_hom,
    or_monoid,
    submagma,
)
from .enumeration import (
    SearchBudget,
    count_magmas,
    enumerate_homs,
    enumerate_magmas,
    iso_classes,
    magma_tables,
    pmap,
)
from .errors import InternalDefect, MagmaKitError, NotComposable
from .extensions import (
    SplitExtension,
    jointly_generate,
    kernel_matches,
    pairing_is_bijective,
    scramble_extension,
)
from .morphisms import (
    act_to_splext,
    canonical_iso,
    comparison_morphisms,
    complete_morphism,
    is_set_pullback,
    pullback,
    splext_to_act,
    swap_identity_holds,
)
from .search import (
    all_action_tables,
    random_action,
    random_magma,
    search_noncomposable_pair,
    search_sfl_c,
)

MAX_COUNTEREXAMPLES = 5


@dataclass
class PropertyResult:
    name: str
    claim: str
    scope: str = ""
    passed: bool = True
    instances: int = 0
    counterexamples: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def fail(self, witness):
        self.passed = False
        if len(self.counterexamples) < MAX_COUNTEREXAMPLES:
            self.counterexamples.append(witness)

    def to_dict(self) -> dict:
        # wall time is left out so reports are byte-stable
        return {
            "name": self.name,
            "claim": self.claim,
            "scope": self.scope,
            "passed": self.passed,
            "instances": self.instances,
            "counterexamples": self.counterexamples,
            "details": self.details,
        }


def timed(fn: Callable[..., PropertyResult]) -> Callable[..., PropertyResult]:
    def run(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        return res

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


# -- shared generators -----------------------------------------------------


@lru_cache(maxsize=None)
def magmas_of(n: int) -> tuple[Magma, ...]:
    return tuple(enumerate_magmas(n))


@lru_cache(maxsize=None)
def monoids_of(n: int) -> tuple[Magma, ...]:
    return tuple(enumerate_magmas(n, associative_only=True))


def magmas_upto(n: int) -> Iterator[Magma]:
    for k in range(1, n + 1):
        yield from magmas_of(k)


def semidirect_extensions(max_order: int) -> Iterator[tuple[Action, SplitExtension]]:
    """Semidirect extensions of every action with |B|, |X| <= max_order."""
    for b in magmas_upto(max_order):
        for x in magmas_upto(max_order):
            for h in enumerate_actions(b, x):
                yield h, semidirect(h).extension


def extension_zoo(max_order: int, seed: int) -> list[SplitExtension]:
    """Semidirect extensions plus one permutation-scrambled copy of each."""
    rng = np.random.default_rng(seed)
    out = []
    for _, e in semidirect_extensions(max_order):
        out.append(e)
        out.append(scramble_extension(e, rng)[0])
    return out


def middle_compatible_pairs(max_order: int, seed: int) -> Iterator[tuple[SplitExtension, SplitExtension]]:
    """(outer F, inner E) with |D|, |Y|, |X| <= max_order.

    F runs over the extension zoo; E over semidirect extensions of every
    action of F's total magma on X, each also scrambled once.
    """
    rng = np.random.default_rng(seed)
    for f in extension_zoo(max_order, seed):
        for x in magmas_upto(max_order):
            for h in enumerate_actions(f.a, x):
                e = semidirect(h).extension
                yield f, e
                yield f, scramble_extension(e, rng)[0]


@lru_cache(maxsize=4096)
def _homs(m: Magma, n: Magma) -> np.ndarray:
    vals = [h.values for h in enumerate_homs(m, n)]
    return np.array(vals, dtype=np.intp).reshape(len(vals), m.order)


def _zero_maps(m: Magma, n: Magma) -> np.ndarray:
    if m.order == 1:
        return np.zeros((1, 1), dtype=np.intp)
    rest = np.array(list(itertools.product(range(n.order), repeat=m.order - 1)), dtype=np.intp)
    return np.concatenate([np.zeros((len(rest), 1), dtype=np.intp), rest], axis=1)


def _grid(*arrays: np.ndarray) -> list[np.ndarray]:
    """Every combination of rows, as aligned stacks."""
    idx = np.meshgrid(*[np.arange(len(a)) for a in arrays], indexing="ij")
    return [a[i.ravel()] for a, i in zip(arrays, idx)]


# -- semidirect products ---------------------------------------------------


def _semidirect_unit(args) -> dict:
    nb, bi, max_x = args
    B = magma_tables(nb, bi, bi + 1)[0]
    out = {"instances": 0, "invalid": [], "round_trip": [], "iso": []}
    for nx in range(1, max_x + 1):
        for xi, X in enumerate(magma_tables(nx)):
            h = all_action_tables(Magma._trusted(B), Magma._trusted(X))
            k, n = len(h), nx * nb
            T = laws.semidirect_tables(B, X, h)
            idx = np.arange(n)
            proj1, proj2 = idx // nb, idx % nb
            inj1, inj2 = np.arange(nx) * nb, np.arange(nb)
            Bk, Xk = laws.batch(B, k), laws.batch(X, k)
            valid = (
                laws.additivity_ok(T, Bk, laws.batch(proj2, k))
                & laws.additivity_ok(Bk, T, laws.batch(inj2, k))
                & laws.additivity_ok(Xk, T, laws.batch(inj1, k))
                & laws.equations_ok(
                    nb, nx, T, laws.batch(proj2, k), laws.batch(inj2, k),
                    laws.batch(inj1, k), laws.batch(proj1, k),
                )
            )
            # associated action: lam(beta(b) + kappa(x))
            assoc = proj1[T[:, inj2[:, None], inj1[None, :]]]
            round_trip = (assoc == h).reshape(k, -1).all(axis=1)
            # comparison maps: phi = (lam, alpha) is the identity pairing here
            T2 = laws.semidirect_tables(B, X, assoc)
            phi = laws.batch(proj1 * nb + proj2, k)
            psi = T[:, inj1[:, None], inj2[None, :]].reshape(k, n)
            inverse = (laws.take(psi, phi) == idx).all(axis=1) & (laws.take(phi, psi) == idx).all(axis=1)
            iso = inverse & laws.additivity_ok(T2, T, psi) & laws.additivity_ok(T, T2, phi)
            out["instances"] += k
            for key, ok in (("invalid", valid), ("round_trip", round_trip), ("iso", iso)):
                for i in np.flatnonzero(~ok)[:MAX_COUNTEREXAMPLES]:
                    out[key].append({"B": B.tolist(), "X": X.tolist(), "action": h[i].tolist()})
    return out


def semidirect_sweep(max_order: int, workers: int = 1) -> list[PropertyResult]:
    """Every action with |B|, |X| <= max_order: the semidirect diagram is a
    split extension, its associated action is the action again, and the
    comparison maps are inverse isomorphisms."""
    t0 = time.perf_counter()
    scope = f"all B, X with |B|, |X| <= {max_order}, all actions"
    res = [
        PropertyResult("semidirect_valid", "semidirect diagrams are split extensions", scope),
        PropertyResult("action_round_trip", "action -> semidirect -> associated action is the identity", scope),
        PropertyResult("comparison_iso_semidirect", "phi and psi are inverse isomorphisms on semidirect products", scope),
    ]
    jobs = [(nb, bi, max_order) for nb in range(1, max_order + 1) for bi in range(len(magmas_of(nb)))]
    for part in pmap(_semidirect_unit, jobs, workers):
        for r, key in zip(res, ("invalid", "round_trip", "iso")):
            r.instances += part["instances"]
            for w in part[key]:
                r.fail(w)
    for r in res:
        r.seconds = (time.perf_counter() - t0) / len(res)
    return res


def literal_validation_sweep(max_order: int) -> PropertyResult:
    """The typed validator, one instance at a time, on every semidirect diagram."""
    res = PropertyResult(
        "semidirect_valid_typed",
        "typed validator accepts every semidirect diagram",
        f"all B, X with |B|, |X| <= {max_order}",
    )
    t0 = time.perf_counter()
    for h, e in semidirect_extensions(max_order):
        res.instances += 1
        try:
            SplitExtension(e.b, e.x, e.a, e.alpha, e.beta, e.kappa, e.lam)
        except MagmaKitError as exc:
            res.fail({"action": h.table.tolist(), "error": str(exc)})
    res.seconds = time.perf_counter() - t0
    return res


@timed
def comparison_iso_sweep(max_order: int, samples: int, sample_order: int, seed: int) -> PropertyResult:
    """Comparison maps, the swap identity and action recovery on scrambled
    extensions: exhaustively for |B|, |X| <= max_order, then ``samples``
    random ones with |B|, |X| <= sample_order."""
    res = PropertyResult(
        "comparison_iso",
        "phi, psi are inverse isomorphisms of extensions; beta(b) + kappa(x) = kappa(bx) + beta(b)",
        f"scrambled extensions with |B|, |X| <= {max_order}; {samples} samples with |B|, |X| <= {sample_order}",
    )
    rng = np.random.default_rng(seed)

    def check(h: Action, e: SplitExtension):
        e2, sigma = scramble_extension(e, rng)
        res.instances += 1
        try:
            phi, psi, _ = canonical_iso(e2)
            there, back = comparison_morphisms(e2)
            ok = (
                associated_action(e2) == h
                and swap_identity_holds(e2)
                and np.array_equal(psi.values, sigma.values)
                and np.array_equal(phi.values[psi.values], np.arange(e2.a.order))
                and np.array_equal(psi.values[phi.values], np.arange(e2.a.order))
            )
        except (MagmaKitError, InternalDefect) as exc:
            res.fail({"action": h.table.tolist(), "sigma": sigma.values.tolist(), "error": str(exc)})
            return
        if not ok:
            res.fail({"action": h.table.tolist(), "sigma": sigma.values.tolist()})

    for h, e in semidirect_extensions(max_order):
        check(h, e)
    for _ in range(samples):
        b = random_magma(int(rng.integers(1, sample_order + 1)), rng)
        x = random_magma(int(rng.integers(1, sample_order + 1)), rng)
        h = random_action(b, x, rng)
        check(h, semidirect(h).extension)
    return res


# -- redundancy among the defining equalities ------------------------------


@timed
def equation_redundancy(max_a: int, max_bx: int) -> PropertyResult:
    """decomposition, assoc_left, assoc_right imply assoc_mid; recovery
    implies lam kappa = 1 and lam beta = 0.  Over all homomorphisms alpha,
    beta, kappa and all zero-preserving lam."""
    res = PropertyResult(
        "equation_redundancy",
        "assoc_mid follows from decomposition, assoc_left, assoc_right; recovery gives lam kappa = 1, lam beta = 0",
        f"|A| <= {max_a}, |B|, |X| <= {max_bx}, all homs and zero maps",
    )
    premise_count = recovery_count = 0
    for A in magmas_upto(max_a):
        for B in magmas_upto(max_bx):
            for X in magmas_upto(max_bx):
                maps = [_homs(A, B), _homs(B, A), _homs(X, A), _zero_maps(A, X)]
                if any(len(m) == 0 for m in maps):
                    continue
                al, be, ka, la = _grid(*maps)
                k = len(al)
                fl = laws.equation_flags(
                    B.order, X.order, laws.batch(A.table, k), al, be, ka, la,
                    ("decomposition", "assoc_left", "assoc_mid", "assoc_right", "recovery"),
                )
                res.instances += k
                premise = fl["decomposition"] & fl["assoc_left"] & fl["assoc_right"]
                premise_count += int(premise.sum())
                for i in np.flatnonzero(premise & ~fl["assoc_mid"])[:MAX_COUNTEREXAMPLES]:
                    res.fail({"A": A.table.tolist(), "alpha": al[i].tolist(), "beta": be[i].tolist(),
                              "kappa": ka[i].tolist(), "lam": la[i].tolist(), "claim": "assoc_mid"})
                rec = fl["recovery"]
                recovery_count += int(rec.sum())
                lk = (laws.take(la, ka) == np.arange(X.order)).all(axis=1)
                lb = (laws.take(la, be) == 0).all(axis=1)
                for i in np.flatnonzero(rec & ~(lk & lb))[:MAX_COUNTEREXAMPLES]:
                    res.fail({"A": A.table.tolist(), "kappa": ka[i].tolist(), "beta": be[i].tolist(),
                              "lam": la[i].tolist(), "claim": "recovery"})
    res.details = {"premise_instances": premise_count, "recovery_instances": recovery_count}
    return res


@timed
def monoid_specialization(max_order: int) -> PropertyResult:
    """For monoids B, X, A: retraction, zero, decomposition and recovery
    force the three partial associativity laws."""
    res = PropertyResult(
        "monoid_specialization",
        "for monoids the partial associativity laws follow from the other equalities",
        f"all monoids B, X, A of order <= {max_order}, all homs and zero maps",
    )
    premise_count = 0
    mons = [m for n in range(1, max_order + 1) for m in monoids_of(n)]
    for A in mons:
        for B in mons:
            for X in mons:
                maps = [_homs(A, B), _homs(B, A), _homs(X, A), _zero_maps(A, X)]
                if any(len(m) == 0 for m in maps):
                    continue
                al, be, ka, la = _grid(*maps)
                k = len(al)
                fl = laws.equation_flags(B.order, X.order, laws.batch(A.table, k), al, be, ka, la)
                res.instances += k
                premise = fl["retraction"] & fl["zero"] & fl["decomposition"] & fl["recovery"]
                premise_count += int(premise.sum())
                assoc = fl["assoc_left"] & fl["assoc_mid"] & fl["assoc_right"]
                for i in np.flatnonzero(premise & ~assoc)[:MAX_COUNTEREXAMPLES]:
                    res.fail({"A": A.table.tolist(), "B": B.table.tolist(), "X": X.table.tolist(),
                              "alpha": al[i].tolist(), "beta": be[i].tolist(),
                              "kappa": ka[i].tolist(), "lam": la[i].tolist()})
    res.details = {"premise_instances": premise_count, "monoids": len(mons)}
    return res


# -- morphisms -------------------------------------------------------------


@timed
def morphism_sweep(max_order: int, seed: int) -> PropertyResult:
    """Over all pairs of extensions and all homomorphisms (f, u, p):

    * the first two morphism equalities hold iff the last two do;
    * valid morphisms have equivariant (f, u);
    * (f, u) equivariant iff exactly one p completes it, and that p is the
      one ``complete_morphism`` builds;
    * the two functors invert each other up to the comparison maps.
    """
    res = PropertyResult(
        "morphisms",
        "morphism equalities pair up; completions exist uniquely iff equivariant; functors round-trip",
        f"extensions with |B|, |X| <= {max_order} and scrambled copies, all hom triples",
    )
    zoo = extension_zoo(max_order, seed)
    isos = [canonical_iso(e) for e in zoo]
    valid_total = 0
    for si, s in enumerate(zoo):
        hs = associated_action(s)
        for ti, t in enumerate(zoo):
            ht = associated_action(t)
            P = _homs(s.a, t.a)
            for f in _homs(s.b, t.b):
                for u in _homs(s.x, t.x):
                    res.instances += len(P)
                    e1 = (P[:, s.kappa.values] == t.kappa.values[u]).all(axis=1)
                    e2 = (P[:, s.beta.values] == t.beta.values[f]).all(axis=1)
                    e3 = (t.lam.values[P] == u[s.lam.values]).all(axis=1)
                    e4 = (t.alpha.values[P] == f[s.alpha.values]).all(axis=1)
                    where = {"source": si, "target": ti, "f": f.tolist(), "u": u.tolist()}
                    if not np.array_equal(e1 & e2, e3 & e4):
                        res.fail({**where, "claim": "pairing"})
                    good = np.flatnonzero(e1 & e2 & e3 & e4)
                    fh, uh = Hom._trusted(s.b, t.b, f), Hom._trusted(s.x, t.x, u)
                    equivariant = np.array_equal(uh.values[hs.table], ht.table[f[:, None], u[None, :]])
                    if len(good) != (1 if equivariant else 0):
                        res.fail({**where, "claim": "unique completion", "completions": len(good)})
                        continue
                    done = complete_morphism(s, t, fh, uh)
                    if (done is None) == equivariant:
                        res.fail({**where, "claim": "complete_morphism"})
                        continue
                    if done is None:
                        continue
                    valid_total += 1
                    if not np.array_equal(done.p.values, P[good[0]]):
                        res.fail({**where, "claim": "completion differs"})
                        continue
                    am = splext_to_act(done)
                    back = act_to_splext(am)
                    expected = isos[ti].phi.values[done.p.values[isos[si].psi.values]]
                    again = splext_to_act(back)
                    if not (
                        np.array_equal(back.p.values, expected)
                        and again.f == am.f
                        and again.u == am.u
                    ):
                        res.fail({**where, "claim": "functor round trip"})
    res.details = {"extensions": len(zoo), "morphisms": valid_total}
    return res


@timed
def kernel_cokernel(max_order: int, max_c: int, seed: int) -> PropertyResult:
    """The pairing a -> (lam(a), alpha(a)) is bijective, kappa is a kernel
    of alpha, kappa(X) and beta(B) generate A, and every s: A -> C with
    s kappa = 0 factors as (s beta) alpha."""
    res = PropertyResult(
        "kernel_cokernel",
        "pairing bijective; kappa is the kernel of alpha; joint generation; cokernel factorisation",
        f"extensions with |B|, |X| <= {max_order} and scrambled copies; C of order <= {max_c}",
    )
    factorisations = 0
    for i, e in enumerate(extension_zoo(max_order, seed)):
        res.instances += 1
        flags = {"pairing": pairing_is_bijective(e), "kernel": kernel_matches(e), "generate": jointly_generate(e)}
        for name, ok in flags.items():
            if not ok:
                res.fail({"extension": i, "claim": name})
        for c in magmas_upto(max_c):
            for s in _homs(e.a, c):
                if (s[e.kappa.values] != 0).any():
                    continue
                factorisations += 1
                t = s[e.beta.values]
                if not np.array_equal(t[e.alpha.values], s) or additivity_witness(e.b, c, t) is not None:
                    res.fail({"extension": i, "claim": "cokernel", "C": c.table.tolist(), "s": s.tolist()})
    res.details = {"factorisations": factorisations}
    return res


# -- composition -----------------------------------------------------------


@timed
def composition_sweep(max_order: int, seed: int) -> PropertyResult:
    """The candidate composite satisfies every equality but assoc_left, the
    three composability criteria agree, and on semidirect normal forms the
    verdict matches (y, 0)((0, d)x) = (y, d)x."""
    res = PropertyResult(
        "composition_criteria",
        "candidate composite only fails assoc_left; three criteria agree; normal-form criterion agrees",
        f"middle-compatible pairs with |D|, |Y|, |X| <= {max_order}, scrambled variants included",
    )
    composable = 0
    for i, (f, e) in enumerate(middle_compatible_pairs(max_order, seed)):
        res.instances += 1
        try:
            c = is_composable(f, e)
        except InternalDefect as exc:
            res.fail({"pair": i, "error": str(exc)})
            continue
        composable += c.composable
        if (normal_form_witness(f, e) is None) != c.composable:
            res.fail({"pair": i, "claim": "normal form"})
    res.details = {"composable": composable, "not_composable": res.instances - composable}
    return res


SPECIFIC_WITNESS = [[0, 1], [0, 1], [0, 1], [0, 0]]


def specific_noncomposable_pair() -> tuple[SplitExtension, SplitExtension]:
    """X = Y = D = Z2, F the trivial action, and B = Y x D acting on X by
    (0,1)1 = 1, (1,0)1 = 1, (1,1)1 = 0 (pair index y * 2 + d)."""
    z2 = cyclic_group(2)
    f = semidirect(trivial_action(z2, z2)).extension
    e = semidirect(Action(f.a, z2, SPECIFIC_WITNESS)).extension
    return f, e


@timed
def noncomposable_witness(max_order: int) -> PropertyResult:
    res = PropertyResult(
        "noncomposable_witness",
        "composability can fail; it cannot fail for firm inner extensions",
        f"lexicographic search with component orders <= {max_order}",
    )
    found = search_noncomposable_pair(SearchBudget(max_order=max_order))
    firm = search_noncomposable_pair(SearchBudget(max_order=max_order), firm_only=True)
    f, e = specific_noncomposable_pair()
    c = is_composable(f, e)
    res.instances = 2 + (found.candidates if found else 0)
    res.details = {
        "search_witness": None if found is None else {
            "outer_action": associated_action(found.outer).table.tolist(),
            "inner_action": associated_action(found.inner).table.tolist(),
            "y_d_x": list(found.result.witness),
            "candidates": found.candidates,
        },
        "firm_only_witness": firm is not None,
        "specific_witness": None if c.witness is None else list(c.witness),
    }
    if max_order >= 2 and found is None:
        res.fail({"claim": "search finds a non-composable pair"})
    if max_order < 2 and found is not None:
        res.fail({"claim": "nothing below order 2"})
    if firm is not None:
        res.fail({"claim": "firm inner extensions compose"})
    if c.composable or c.witness != (1, 1, 1):
        res.fail({"claim": "specific pair fails at (1, 1, 1)"})
    return res


def _closure_checks(res: PropertyResult, f: SplitExtension, e: SplitExtension, where: dict, counts: dict):
    try:
        rep = check_firm_closure(f, e)
    except InternalDefect as exc:
        res.fail({**where, "error": str(exc)})
        return
    counts["firm_inner"] += rep.inner_firm
    counts["firm_both"] += rep.inner_firm and rep.outer_firm
    if class_of_extension(f) == SplitEpiClass.E_DOUBLE_PRIME and class_of_extension(e) == SplitEpiClass.E_DOUBLE_PRIME:
        counts["distributive_both"] += 1
        try:
            check_distributive_closure(f, e)
        except (InternalDefect, NotComposable) as exc:
            res.fail({**where, "claim": "distributive closure", "error": str(exc)})


@timed
def firm_closure_exhaustive(max_order: int, seed: int) -> PropertyResult:
    res = PropertyResult(
        "firm_closure_exhaustive",
        "firm inner composes; firm with firm composes to firm; firm distributive pairs stay so",
        f"middle-compatible pairs with |D|, |Y|, |X| <= {max_order}, scrambled variants included",
    )
    counts = {"firm_inner": 0, "firm_both": 0, "distributive_both": 0}
    for i, (f, e) in enumerate(middle_compatible_pairs(max_order, seed)):
        res.instances += 1
        _closure_checks(res, f, e, {"pair": i}, counts)
    res.details = counts
    return res


def random_pair(
    order: int, rng: np.random.Generator, outer: dict, inner: dict
) -> tuple[SplitExtension, SplitExtension]:
    """Random scrambled (F, E) with |D| = |Y| = |X| = order; ``outer`` and
    ``inner`` are keyword constraints for :func:`random_action`."""
    d, y, x = (random_magma(order, rng) for _ in range(3))
    f = scramble_extension(semidirect(random_action(d, y, rng, **outer)).extension, rng)[0]
    e = scramble_extension(semidirect(random_action(f.a, x, rng, **inner)).extension, rng)[0]
    return f, e


@timed
def firm_closure_sampled(samples: int, order: int, seed: int) -> PropertyResult:
    """Three seeded families of ``samples`` pairs each: arbitrary outer with
    firm inner, firm with firm, and firm distributive with firm distributive."""
    res = PropertyResult(
        "firm_closure_sampled",
        "firm inner composes; firm with firm composes to firm; firm distributive pairs stay so",
        f"{samples} seeded pairs per family at component order {order}",
    )
    rng = np.random.default_rng(seed)
    families = {
        "firm_inner": ({}, {"firm": True}),
        "firm_both": ({"firm": True}, {"firm": True}),
        "distributive_both": ({"firm": True, "distributive": True}, {"firm": True, "distributive": True}),
    }
    counts = {"firm_inner": 0, "firm_both": 0, "distributive_both": 0}
    nontrivial = {k: 0 for k in families}
    for fam, (outer, inner) in families.items():
        for i in range(samples):
            f, e = random_pair(order, rng, outer, inner)
            res.instances += 1
            h = associated_action(e).table
            nontrivial[fam] += not (h == np.arange(h.shape[1])).all()
            _closure_checks(res, f, e, {"family": fam, "sample": i}, counts)
    res.details = {"counts": counts, "nontrivial_inner_actions": nontrivial, "seed": seed}
    return res


# -- pullbacks and restriction ---------------------------------------------


@timed
def pullback_stability(max_order: int, max_dom: int, seed: int) -> PropertyResult:
    """Pullbacks along every f: B' -> B validate, form set pullbacks, and
    never lower the class."""
    res = PropertyResult(
        "pullback_stability",
        "pullbacks are split extensions, set pullbacks, and keep the class",
        f"extensions with |B|, |X| <= {max_order} and scrambled copies; |B'| <= {max_dom}",
    )
    for i, e in enumerate(extension_zoo(max_order, seed)):
        cls = class_of_extension(e)
        for b2 in magmas_upto(max_dom):
            for fv in _homs(b2, e.b):
                res.instances += 1
                f = Hom._trusted(b2, e.b, fv)
                where = {"extension": i, "B'": b2.table.tolist(), "f": fv.tolist()}
                try:
                    ef, m = pullback(e, f)
                except (MagmaKitError, InternalDefect) as exc:
                    res.fail({**where, "error": str(exc)})
                    continue
                if not is_set_pullback(m):
                    res.fail({**where, "claim": "set pullback"})
                if class_of_extension(ef) < cls:
                    res.fail({**where, "claim": "class"})
    return res


@timed
def restriction_sweep(max_order: int, max_dom: int) -> PropertyResult:
    res = PropertyResult(
        "restriction",
        "restricting an action along a homomorphism keeps firmness and distributivity",
        f"all actions with |B|, |X| <= {max_order}; all f: B' -> B with |B'| <= {max_dom}",
    )
    for b in magmas_upto(max_order):
        for x in magmas_upto(max_order):
            for h in enumerate_actions(b, x):
                firm, dist = is_firm(h), is_distributive(h)
                if not (firm or dist):
                    continue
                for b2 in magmas_upto(max_dom):
                    for fv in _homs(b2, b):
                        res.instances += 1
                        r = restrict_action(h, Hom._trusted(b2, b, fv))
                        if (firm and not is_firm(r)) or (dist and not is_distributive(r)):
                            res.fail({"action": h.table.tolist(), "f": fv.tolist()})
    return res


# -- split short five lemma -------------------------------------------------


def _candidate_pairs(keys: list) -> tuple[np.ndarray, np.ndarray]:
    """All (i, j) with keys[i] == keys[j]; a key of None pairs with everything."""
    groups: dict = {}
    loose = []
    for i, k in enumerate(keys):
        if k is None:
            loose.append(i)
        else:
            groups.setdefault(k, []).append(i)
    pairs = set()
    for members in groups.values():
        pairs.update(itertools.product(members, members))
    for i in loose:
        pairs.update((i, j) for j in range(len(keys)))
        pairs.update((j, i) for j in range(len(keys)))
    if not pairs:
        return np.zeros(0, dtype=np.intp), np.zeros(0, dtype=np.intp)
    top, bot = np.array(sorted(pairs), dtype=np.intp).T
    return top, bot


def _axis_keys(T: np.ndarray, nb: int, nx: int) -> list:
    """Necessary condition for case b.

    A qualifying p fixes the axes, so additivity gives
    p(g(x, b)) = g'(x, b) with g(x, b) = (x, 0) + (0, b), and
    p((0, b) + (x, 0)) = (0, b) +' (x, 0).  When g is bijective the first
    relation determines p, and the second then says the key below agrees
    for top and bottom.  Tables with g not bijective get no key.
    """
    inj1, inj2 = np.arange(nx) * nb, np.arange(nb)
    keys = []
    for t in T:
        g = t[inj1[:, None], inj2[None, :]].ravel()
        if len(np.unique(g)) != len(g):
            keys.append(None)
            continue
        ginv = np.argsort(g)
        keys.append(ginv[t[inj2[:, None], inj1[None, :]]].tobytes())
    return keys


def _short_five_unit(args) -> dict:
    nb, bi, max_x = args
    B = magma_tables(nb, bi, bi + 1)[0]
    out = {"a": 0, "b": 0, "pairs": 0, "fallback": 0, "fail": []}
    for nx in range(1, max_x + 1):
        for xi, X in enumerate(magma_tables(nx)):
            h = all_action_tables(Magma._trusted(B), Magma._trusted(X))
            n = nx * nb
            T = laws.semidirect_tables(B, X, h)
            idx = np.arange(n)
            # case a pins p to the identity, which is additive iff the tables agree
            keys = {"a": [t.tobytes() for t in T], "b": _axis_keys(T, nb, nx)}
            for case in ("a", "b"):
                top, bot = _candidate_pairs(keys[case])
                kk = len(top)
                out["pairs"] += kk
                if kk == 0:
                    continue
                Ttop, Tbot = T[top], T[bot]
                if case == "a":
                    p = laws.batch(idx, kk)
                else:
                    # axes pinned; additivity forces the rest
                    partial = np.full((kk, n), -1, dtype=np.intp)
                    partial[:, np.arange(nx) * nb] = np.arange(nx) * nb
                    partial[:, np.arange(nb)] = np.arange(nb)
                    p = laws.propagate_forced(Ttop, Tbot, partial)
                complete = (p >= 0).all(axis=1)
                safe = np.where(p >= 0, p, 0)
                hom = complete & laws.additivity_ok(Ttop, Tbot, safe)
                sel = np.flatnonzero(hom)
                out[case] += len(sel)
                if len(sel):
                    pv = safe[sel]
                    bij = (np.sort(pv, axis=1) == idx).all(axis=1)
                    inv = np.argsort(pv, axis=1)
                    back = laws.additivity_ok(Tbot[sel], Ttop[sel], inv)
                    for j in np.flatnonzero(~(bij & back))[:MAX_COUNTEREXAMPLES]:
                        i = sel[j]
                        out["fail"].append({"case": case, "B": B.tolist(), "X": X.tolist(),
                                            "top": h[top[i]].tolist(), "bottom": h[bot[i]].tolist(),
                                            "p": pv[j].tolist()})
                # rows the propagation left open: enumerate homs one at a time
                for i in np.flatnonzero(~complete):
                    out["fallback"] += 1
                    tm, bm = Magma._trusted(Ttop[i]), Magma._trusted(Tbot[i])
                    fixed = {int(a): int(v) for a, v in enumerate(p[i]) if v >= 0}
                    for ph in enumerate_homs(tm, bm, fixed):
                        out[case] += 1
                        if not ph.is_bijective() or additivity_witness(bm, tm, np.argsort(ph.values)) is not None:
                            out["fail"].append({"case": case, "B": B.tolist(), "X": X.tolist(),
                                                "p": ph.values.tolist()})
    return out


def short_five_sweep(max_order: int, workers: int = 1) -> PropertyResult:
    """Every pair of semidirect products over the same B, X with
    |B|, |X| <= max_order and every homomorphism p meeting the hypotheses of
    case a or case b: p is an isomorphism.

    Hypotheses pin p on the whole carrier (case a) or on the two axes
    (case b); values forced by additivity are filled in, and any that stay
    open are enumerated.  Pairs of actions that cannot carry such a p are
    skipped by a hash join on a necessary condition.
    """
    t0 = time.perf_counter()
    res = PropertyResult(
        "short_five_ab",
        "under the projection or injection hypotheses p is an isomorphism",
        f"all B, X with |B|, |X| <= {max_order}, all pairs of actions, all qualifying p",
    )
    jobs = [(nb, bi, max_order) for nb in range(1, max_order + 1) for bi in range(len(magmas_of(nb)))]
    counts = {"a": 0, "b": 0, "pairs": 0, "fallback": 0}
    for part in pmap(_short_five_unit, jobs, workers):
        for key in counts:
            counts[key] += part[key]
        for w in part["fail"]:
            res.fail(w)
    res.instances = counts["a"] + counts["b"]
    res.details = {
        "case_a": counts["a"],
        "case_b": counts["b"],
        "pairs_checked": counts["pairs"],
        "enumerated_rows": counts["fallback"],
    }
    # the typed entry point on the simplest instance of each case
    z2 = cyclic_group(2)
    for h in enumerate_actions(z2, z2):
        d = semidirect(h)
        for case in ("a", "b"):
            try:
                short_five_check(case, top=d, bottom=d, p=identity(d.total))
            except (MagmaKitError, InternalDefect) as exc:
                res.fail({"case": case, "error": str(exc)})
    res.seconds = time.perf_counter() - t0
    return res


@timed
def short_five_mixed_case(max_order: int) -> PropertyResult:
    res = PropertyResult(
        "short_five_c",
        "under the mixed hypotheses p need not be injective; over a group it is bijective",
        f"OR and Z2 examples; search over commutative monoids of order <= {max_order}",
    )
    orm, z2 = or_monoid(), cyclic_group(2)
    rep_or = short_five_mixed(orm, orm, identity(orm))
    rep_z2 = short_five_mixed(z2, z2, identity(z2))
    found = search_sfl_c(SearchBudget(max_order=max_order))
    res.instances = 2 + (found.candidates if found else 0)
    pv = rep_or.p.values
    res.details = {
        "OR": rep_or.to_dict(),
        "Z2": rep_z2.to_dict(),
        "search_witness": None if found is None else {
            "X": found.x.table.tolist(), "B": found.b.table.tolist(), "s": found.s.values.tolist(),
            "p": found.report.p.values.tolist(),
        },
    }
    # pair index x * |B| + b: (0, 1) -> 1, (1, 1) -> 3
    if rep_or.injective or pv[1] != pv[3] or not rep_or.is_hom:
        res.fail({"claim": "OR example is a non-injective homomorphism"})
    if not rep_z2.isomorphism:
        res.fail({"claim": "Z2 example is bijective"})
    if max_order >= 2 and found is None:
        res.fail({"claim": "search finds a non-injective p"})
    return res


# -- core-level invariants and counting -------------------------------------


@timed
def core_invariants(max_order: int) -> PropertyResult:
    res = PropertyResult(
        "core_invariants",
        "isomorphism search is reflexive and symmetric; homs compose; inclusions are additive",
        f"all magmas of order <= {max_order}",
    )
    for n in range(1, max_order + 1):
        ms = magmas_of(n)
        for i, m in enumerate(ms):
            res.instances += 1
            if are_isomorphic(m, m) is None:
                res.fail({"claim": "reflexive", "table": m.table.tolist()})
            for j in range(i + 1, len(ms)):
                if (are_isomorphic(m, ms[j]) is None) != (are_isomorphic(ms[j], m) is None):
                    res.fail({"claim": "symmetric", "tables": [m.table.tolist(), ms[j].table.tolist()]})
    for a in magmas_upto(min(max_order, 2)):
        for b in magmas_upto(min(max_order, 2)):
            for c in magmas_upto(min(max_order, 2)):
                for f in _homs(a, b):
                    for g in _homs(b, c):
                        res.instances += 1
                        gf = compose_maps(Hom._trusted(b, c, g), Hom._trusted(a, b, f))
                        if not is_hom(gf):
                            res.fail({"claim": "composition", "f": f.tolist(), "g": g.tolist()})
    for m in magmas_upto(max_order):
        for bits in range(1 << (m.order - 1)):
            subset = [0] + [i + 1 for i in range(m.order - 1) if bits >> i & 1]
            try:
                sub, inc = submagma(m, subset)
            except MagmaKitError:
                continue
            res.instances += 1
            if not is_hom(inc):
                res.fail({"claim": "inclusion", "table": m.table.tolist(), "subset": subset})
    return res


@timed
def enumeration_counts(max_order: int, workers: int = 1) -> PropertyResult:
    res = PropertyResult(
        "enumeration_counts",
        "raw counts are n^((n-1)^2); iso classes partition the magmas",
        f"orders 1..{max_order}",
    )
    raw, monoids, classes = {}, {}, {}
    for n in range(1, max_order + 1):
        c = count_magmas(n, workers=workers)
        raw[str(n)] = c
        monoids[str(n)] = count_magmas(n, associative_only=True, workers=workers)
        res.instances += c
        if c != n ** ((n - 1) ** 2):
            res.fail({"order": n, "count": c})
        if n <= 3:
            ms = list(enumerate_magmas(n))
            cls = iso_classes(ms)
            classes[str(n)] = len(cls)
            if sum(x.size for x in cls) != len(ms) or len(ms) != c:
                res.fail({"order": n, "claim": "class sizes"})
            again = iso_classes([x.representative for x in cls])
            if [x.representative for x in again] != [x.representative for x in cls]:
                res.fail({"order": n, "claim": "re-reduction"})
    if max_order >= 2 and classes.get("2") != 2:
        res.fail({"claim": "two classes at order 2"})
    res.details = {"raw": raw, "monoids": monoids, "iso_classes": classes}
    return res


@timed
def iterated_composition(max_order: int, limit: int) -> PropertyResult:
    """Records whether (H F) E and H (F E) agree when both exist.  Nothing
    is asserted; the outcome is informational."""
    res = PropertyResult(
        "iterated_composition",
        "informational: agreement of the two bracketings of a triple composite",
        f"first {limit} triples of semidirect extensions with component orders <= {max_order}",
    )
    tally = {"both": 0, "left_only": 0, "right_only": 0, "neither": 0, "equal": 0}
    triples = 0
    for d2 in magmas_upto(max_order):
        for d in magmas_upto(max_order):
            for hh in enumerate_actions(d2, d):
                hx = semidirect(hh).extension  # outermost, total D2-by-D
                for y in magmas_upto(max_order):
                    for hf in enumerate_actions(hx.a, y):
                        fx = semidirect(hf).extension
                        for x in magmas_upto(max_order):
                            for he in enumerate_actions(fx.a, x):
                                if triples >= limit:
                                    break
                                triples += 1
                                ex = semidirect(he).extension
                                left = right = None
                                try:
                                    left = compose(compose(hx, fx), ex)
                                except NotComposable:
                                    pass
                                try:
                                    right = compose(hx, compose(fx, ex))
                                except NotComposable:
                                    pass
                                key = {(True, True): "both", (True, False): "left_only",
                                       (False, True): "right_only", (False, False): "neither"}
                                tally[key[(left is not None, right is not None)]] += 1
                                if left is not None and right is not None and left == right:
                                    tally["equal"] += 1
    res.instances = triples
    res.details = tally
    return res
