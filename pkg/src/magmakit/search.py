"""Counterexample searches and seeded random generators of actions.

Searches walk orders lexicographically, then magmas and actions in their
enumeration order, so the first witness found is reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from . import laws
from .actions import Action, enumerate_actions, is_firm, semidirect
from .classes import ShortFiveReport, short_five_mixed
from .composition import Composability, is_composable
from .core import INDEX, Hom, Magma, is_commutative
from .enumeration import SearchBudget, enumerate_homs, enumerate_magmas
from .extensions import SplitExtension


class _Budget:
    def __init__(self, limit: Optional[int]):
        self.limit = limit
        self.used = 0

    def take(self) -> bool:
        if self.limit is not None and self.used >= self.limit:
            return False
        self.used += 1
        return True


def _orders(k: int, max_order: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(1, max_order + 1), repeat=k)


@dataclass(frozen=True, eq=False)
class NoncomposablePair:
    outer: SplitExtension
    inner: SplitExtension
    result: Composability
    candidates: int


def search_noncomposable_pair(budget: SearchBudget, firm_only: bool = False) -> Optional[NoncomposablePair]:
    """First pair of semidirect extensions (F outer, E inner) that does not compose.

    Orders run over (|D|, |Y|, |X|) lexicographically; with ``firm_only``
    only firm inner extensions are tried.
    """
    b = _Budget(budget.max_candidates)
    for nd, ny, nx in _orders(3, budget.max_order):
        for d in enumerate_magmas(nd):
            for y in enumerate_magmas(ny):
                for hf in enumerate_actions(d, y):
                    f = semidirect(hf).extension
                    for x in enumerate_magmas(nx):
                        for he in enumerate_actions(f.a, x):
                            if firm_only and not is_firm(he):
                                continue
                            if not b.take():
                                return None
                            e = semidirect(he).extension
                            c = is_composable(f, e)
                            if not c.composable:
                                return NoncomposablePair(f, e, c, b.used)
    return None


def commutative_monoids(n: int) -> Iterator[Magma]:
    for m in enumerate_magmas(n, associative_only=True):
        if is_commutative(m):
            yield m


@dataclass(frozen=True, eq=False)
class MixedCaseWitness:
    x: Magma
    b: Magma
    s: Hom
    report: ShortFiveReport
    candidates: int


def search_sfl_c(budget: SearchBudget) -> Optional[MixedCaseWitness]:
    """First (X, B, s) whose mixed-case map p(x, b) = (x + s(b), b) is not injective."""
    bud = _Budget(budget.max_candidates)
    for nx, nb in _orders(2, budget.max_order):
        for x in commutative_monoids(nx):
            for b in enumerate_magmas(nb):
                for s in enumerate_homs(b, x):
                    if not bud.take():
                        return None
                    rep = short_five_mixed(x, b, s)
                    if not rep.injective:
                        return MixedCaseWitness(x, b, s, rep, bud.used)
    return None


def all_action_tables(b: Magma, x: Magma) -> np.ndarray:
    """Every action table of b on x, stacked in enumeration order (K, |B|, |X|)."""
    nb, nx = b.order, x.order
    free = (nb - 1) * (nx - 1)
    k = nx ** free
    t = np.empty((k, nb, nx), dtype=INDEX)
    t[:, 0, :] = np.arange(nx)
    t[:, :, 0] = 0
    if free:
        idx = np.arange(k, dtype=np.int64)
        powers = nx ** np.arange(free - 1, -1, -1, dtype=np.int64)
        digits = (idx[:, None] // powers[None, :]) % nx
        t[:, 1:, 1:] = digits.reshape(k, nb - 1, nx - 1)
    return t


@dataclass(frozen=True, eq=False)
class FirmNotDistributive:
    action: Action
    witness: tuple[int, int, int]  # (b, x, x')
    candidates: int


def search_firm_not_distributive(budget: SearchBudget) -> Optional[FirmNotDistributive]:
    """First firm action that does not distribute over addition in X."""
    used = 0
    for nb, nx in _orders(2, budget.max_order):
        for b in enumerate_magmas(nb):
            for x in enumerate_magmas(nx):
                h = all_action_tables(b, x)
                if budget.max_candidates is not None:
                    h = h[: max(0, budget.max_candidates - used)]
                hit = laws.firmness_ok(b.table, h) & ~laws.distributivity_ok(x.table, h)
                if hit.any():
                    i = int(np.argmax(hit))
                    a = Action._trusted(b, x, h[i])
                    w = laws.distributivity_violation(x.table, a.table)
                    return FirmNotDistributive(a, w, used + i + 1)
                used += len(h)
                if budget.max_candidates is not None and used >= budget.max_candidates:
                    return None
    return None


# -- random generators -----------------------------------------------------


def random_magma(n: int, rng: np.random.Generator, associative: bool = False) -> Magma:
    if associative:
        monoids = _monoid_cache(n)
        return monoids[int(rng.integers(len(monoids)))]
    t = np.empty((n, n), dtype=INDEX)
    t[0] = np.arange(n)
    t[:, 0] = np.arange(n)
    t[1:, 1:] = rng.integers(0, n, size=(n - 1, n - 1))
    return Magma._trusted(t)


_MONOIDS: dict[int, list[Magma]] = {}


def _monoid_cache(n: int) -> list[Magma]:
    if n not in _MONOIDS:
        _MONOIDS[n] = list(enumerate_magmas(n, associative_only=True))
    return _MONOIDS[n]


def self_map_monoid(x: Magma, additive_only: bool = False) -> tuple[Magma, np.ndarray]:
    """The 0-fixing self-maps of x (only endomorphisms, if asked) under
    composition, with the identity as element 0.

    Returns the monoid, whose sum i + j is the map "apply j, then i", and
    the stack of maps so that element i is ``maps[i]``.  A firm action of B
    on x is the same thing as a homomorphism from B into this monoid; a firm
    distributive one is a homomorphism into the endomorphism part.
    """
    nx = x.order
    maps = [
        np.array((0, *rest), dtype=INDEX)
        for rest in itertools.product(range(nx), repeat=nx - 1)
    ]
    if additive_only:
        maps = [m for m in maps if np.array_equal(m[x.table], x.table[m[:, None], m[None, :]])]
    ident = np.arange(nx)
    maps.sort(key=lambda m: (not np.array_equal(m, ident), m.tolist()))
    stack = np.array(maps, dtype=INDEX).reshape(len(maps), nx)
    codes = {m.tobytes(): i for i, m in enumerate(stack)}
    table = np.array(
        [[codes[stack[i][stack[j]].tobytes()] for j in range(len(stack))] for i in range(len(stack))],
        dtype=INDEX,
    )
    return Magma._trusted(table), stack


def firm_actions(b: Magma, x: Magma, distributive: bool = False) -> Iterator[Action]:
    """Every firm action of b on x (distributive too, if asked), via
    homomorphisms into :func:`self_map_monoid`."""
    mon, maps = self_map_monoid(x, additive_only=distributive)
    for h in enumerate_homs(b, mon):
        yield Action._trusted(b, x, maps[h.values])


def random_action(
    b: Magma,
    x: Magma,
    rng: np.random.Generator,
    firm: bool = False,
    distributive: bool = False,
) -> Action:
    """A uniformly random action, or a uniformly random firm one.

    ``distributive`` applies only together with ``firm``.
    """
    nb, nx = b.order, x.order
    if firm:
        pool = list(firm_actions(b, x, distributive))
        return pool[int(rng.integers(len(pool)))]
    if distributive:
        raise ValueError("distributive sampling needs firm=True")
    h = np.zeros((nb, nx), dtype=INDEX)
    h[0] = np.arange(nx)
    h[1:, 1:] = rng.integers(0, nx, size=(nb - 1, nx - 1))
    return Action._trusted(b, x, h)
