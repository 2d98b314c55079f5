import numpy as np

from magmakit.actions import is_distributive, is_firm
from magmakit.core import ZeroMap, is_associative, is_hom, or_monoid
from magmakit.enumeration import SearchBudget
from magmakit.search import (
    commutative_monoids,
    random_magma,
    search_firm_not_distributive,
    search_noncomposable_pair,
    search_sfl_c,
    self_map_monoid,
)


def test_sfl_c_search_finds_or_monoid():
    hit = search_sfl_c(SearchBudget(max_order=2))
    assert hit.x == or_monoid() and hit.b == or_monoid()
    assert hit.s.values.tolist() == [0, 1]
    assert not hit.report.injective
    assert search_sfl_c(SearchBudget(max_order=1)) is None


def test_firm_not_distributive_needs_order_three():
    assert search_firm_not_distributive(SearchBudget(max_order=2)) is None
    hit = search_firm_not_distributive(SearchBudget(max_order=3))
    assert (hit.action.b.order, hit.action.x.order) == (2, 3)
    assert is_firm(hit.action) and not is_distributive(hit.action)
    assert search_firm_not_distributive(SearchBudget(max_order=3, max_candidates=hit.candidates - 1)) is None


def test_budget_caps_candidates():
    assert search_noncomposable_pair(SearchBudget(max_order=2, max_candidates=5)) is None
    hit = search_noncomposable_pair(SearchBudget(max_order=2))
    again = search_noncomposable_pair(SearchBudget(max_order=2, max_candidates=hit.candidates))
    assert again is not None and again.result.witness == hit.result.witness


def test_commutative_monoids():
    assert [m.order for m in commutative_monoids(2)] == [2, 2]
    assert all(is_associative(m) for m in commutative_monoids(3))


def test_random_magma_is_seeded():
    a = [random_magma(3, np.random.default_rng(5)).table.tolist() for _ in range(2)]
    assert a[0] == a[1]
    m = random_magma(3, np.random.default_rng(5), associative=True)
    assert is_associative(m)


def test_self_map_monoid(z2, m3):
    mon, maps = self_map_monoid(m3)
    assert mon.order == 9
    assert maps[0].tolist() == [0, 1, 2]
    assert is_associative(mon)
    for i in range(9):
        for j in range(9):
            assert maps[mon.table[i, j]].tolist() == maps[i][maps[j]].tolist()
    mon, maps = self_map_monoid(z2, additive_only=True)
    assert mon.order == 2
    for v in maps:
        assert is_hom(ZeroMap(z2, z2, v))
