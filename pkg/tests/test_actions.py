import numpy as np
import pytest

from magmakit import laws
from magmakit.actions import (
    Action,
    action_count,
    associated_action,
    distributivity_witness,
    enumerate_actions,
    firmness_witness,
    is_distributive,
    is_firm,
    restrict_action,
    semidirect,
    trivial_action,
)
from magmakit.core import Hom, are_isomorphic, direct_product, identity, trivial_magma, zero_map
from magmakit.enumeration import SearchBudget, enumerate_magmas
from magmakit.errors import UnitActsNontrivially, ZeroNotFixed
from magmakit.search import all_action_tables, firm_actions, random_action, search_firm_not_distributive


def test_action_examples(z2):
    assert Action(z2, z2, [[0, 1], [0, 1]]) == trivial_action(z2, z2)
    Action(z2, z2, [[0, 1], [0, 0]])
    with pytest.raises(UnitActsNontrivially) as info:
        Action(z2, z2, [[0, 0], [0, 1]])
    assert info.value.x == 1
    with pytest.raises(ZeroNotFixed):
        Action(z2, z2, [[0, 1], [1, 1]])


def test_semidirect_of_trivial_action_is_product(z2):
    d = semidirect(trivial_action(z2, z2))
    assert d.total == direct_product(z2, z2)


def test_semidirect_twisted_sum(twist):
    d = semidirect(twist)
    assert d.unpair(d.total.table[d.pair(1, 1), d.pair(1, 0)]) == (1, 1)


def test_semidirect_with_trivial_kernel(z2, m3):
    one = trivial_magma()
    for b in (z2, m3):
        d = semidirect(trivial_action(b, one))
        assert are_isomorphic(d.total, b) is not None


def test_semidirect_diagram_maps(twist):
    d = semidirect(twist)
    assert d.inj1.values.tolist() == [d.pair(x, 0) for x in range(2)]
    assert d.inj2.values.tolist() == [d.pair(0, b) for b in range(2)]
    assert d.proj2.values.tolist() == [i % 2 for i in range(4)]
    assert d.proj1.values.tolist() == [i // 2 for i in range(4)]


def test_firmness_examples(z2, m3, twist):
    assert is_firm(trivial_action(m3, z2))
    assert not is_firm(twist)
    assert firmness_witness(twist) == (1, 1, 1)
    one = trivial_magma()
    for h in enumerate_actions(one, m3):
        assert is_firm(h)


def test_distributivity_examples(z2, orm, twist):
    assert is_distributive(trivial_action(z2, orm))
    assert is_distributive(twist)
    assert is_distributive(Action(z2, orm, [[0, 1], [0, 0]]))
    found = search_firm_not_distributive(SearchBudget(max_order=3))
    assert found is not None
    assert found.action.x.order == 3
    assert is_firm(found.action) and not is_distributive(found.action)
    assert distributivity_witness(found.action) == found.witness


def test_restriction_examples(z2, twist, z2z2):
    assert restrict_action(twist, identity(z2)) == twist
    assert restrict_action(twist, zero_map(z2, z2)) == trivial_action(z2, z2)
    h = Action(z2z2, z2, [[0, 1], [0, 0], [0, 1], [0, 0]])
    f = Hom(z2, z2z2, [0, 2])
    r = restrict_action(h, f)
    assert r.table.tolist() == [h.table[0].tolist(), h.table[2].tolist()]


def test_action_counts(z2, m3):
    assert len(list(enumerate_actions(z2, z2))) == 2
    assert len(list(enumerate_actions(z2, m3))) == 9
    assert len(list(enumerate_actions(trivial_magma(), m3))) == 1
    assert action_count(m3, m3) == 81


def test_round_trip_small(z2, m3):
    for b in (z2, m3):
        for x in (z2, m3):
            for h in enumerate_actions(b, x):
                assert associated_action(semidirect(h).extension) == h


def test_all_action_tables_matches_enumeration(z2, m3):
    stacked = all_action_tables(m3, z2)
    listed = [h.table for h in enumerate_actions(m3, z2)]
    assert np.array_equal(stacked, np.array(listed))


@pytest.mark.parametrize("distributive", [False, True])
def test_firm_actions_against_brute_force(distributive):
    for nb in (1, 2, 3):
        for nx in (1, 2, 3):
            for b in enumerate_magmas(nb):
                for x in enumerate_magmas(nx):
                    t = all_action_tables(b, x)
                    ok = laws.firmness_ok(b.table, t)
                    if distributive:
                        ok &= laws.distributivity_ok(x.table, t)
                    expected = sorted(map(tuple, t[ok].reshape(len(t[ok]), -1).tolist()))
                    got = sorted(tuple(h.table.ravel().tolist()) for h in firm_actions(b, x, distributive))
                    assert got == expected


def test_random_action_modes(z2, m3, rng):
    for _ in range(20):
        h = random_action(m3, m3, rng, firm=True)
        assert is_firm(h)
        h = random_action(m3, m3, rng, firm=True, distributive=True)
        assert is_firm(h) and is_distributive(h)
    with pytest.raises(ValueError):
        random_action(z2, z2, rng, distributive=True)
