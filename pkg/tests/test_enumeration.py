import itertools

import numpy as np
import pytest

from magmakit.core import Magma, are_isomorphic, is_associative, permute_magma, trivial_magma
from magmakit.enumeration import (
    SearchBudget,
    associative_mask,
    canonical_table,
    count_magmas,
    enumerate_homs,
    enumerate_magmas,
    iso_classes,
    magma_count,
    magma_tables,
    pmap,
)


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 2), (3, 81)])
def test_magma_counts(n, expected):
    assert len(list(enumerate_magmas(n))) == expected
    assert magma_count(n) == expected
    assert count_magmas(n) == expected


def test_monoid_counts():
    assert [count_magmas(n, associative_only=True) for n in (1, 2, 3)] == [1, 2, 11]


def test_enumeration_is_lexicographic_and_unital():
    tables = [m.table.ravel().tolist() for m in enumerate_magmas(3)]
    assert tables == sorted(tables)
    assert len(set(map(tuple, tables))) == 81
    for t in tables:
        Magma(np.array(t).reshape(3, 3))


def test_associative_mask_matches_scalar_check():
    tables = magma_tables(3)
    mask = associative_mask(tables)
    assert mask.tolist() == [is_associative(Magma(t)) for t in tables]


def test_count_checkpoint_resumes(tmp_path):
    ck = tmp_path / "count.txt"
    assert count_magmas(3, checkpoint=ck, chunk=10) == 81
    assert ck.read_text().split() == ["3", "0", "81", "81"]
    # a stale cursor part-way through continues from there
    ck.write_text("3 0 40 40\n")
    assert count_magmas(3, checkpoint=ck, chunk=10) == 81
    ck.write_text("3 1 0 0\n")
    assert count_magmas(3, associative_only=True, checkpoint=ck, chunk=7) == 11


def test_count_with_workers_matches():
    assert count_magmas(3, workers=2, chunk=8) == 81


def test_hom_examples(z2, orm, m3):
    assert [h.values.tolist() for h in enumerate_homs(z2, z2)] == [[0, 0], [0, 1]]
    assert [h.values.tolist() for h in enumerate_homs(z2, orm)] == [[0, 0]]
    one = trivial_magma()
    for m in (z2, orm, m3):
        assert len(list(enumerate_homs(m, one))) == 1


def test_homs_against_brute_force(m3, orm):
    for m in enumerate_magmas(3):
        for n in (orm, m3, m):
            got = [h.values.tolist() for h in enumerate_homs(m, n)]
            expected = []
            for rest in itertools.product(range(n.order), repeat=m.order - 1):
                v = np.array((0, *rest))
                if np.array_equal(v[m.table], n.table[v[:, None], v[None, :]]):
                    expected.append(v.tolist())
            assert got == expected


def test_homs_with_fixed_values(z2):
    assert [h.values.tolist() for h in enumerate_homs(z2, z2, fixed={1: 1})] == [[0, 1]]
    assert list(enumerate_homs(z2, z2, fixed={0: 1})) == []


def test_iso_classes_small():
    classes = iso_classes(enumerate_magmas(2))
    assert len(classes) == 2
    assert [c.size for c in classes] == [1, 1]
    assert len(iso_classes(enumerate_magmas(1))) == 1


def test_iso_classes_order_three_against_pairwise_oracle():
    ms = list(enumerate_magmas(3))
    reps: list[Magma] = []
    for m in ms:
        if not any(are_isomorphic(m, r) is not None for r in reps):
            reps.append(m)
    classes = iso_classes(ms)
    assert len(classes) == len(reps) == 45
    assert sum(c.size for c in classes) == 81
    assert [c.representative for c in classes] == reps


def test_canonical_table_is_invariant(m3):
    assert np.array_equal(canonical_table(m3), canonical_table(permute_magma(m3, [0, 2, 1])))


def test_pmap_preserves_order():
    assert pmap(abs, [-3, 1, -2], workers=2) == [3, 1, 2]


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(max_order=0)
    with pytest.raises(ValueError):
        SearchBudget(workers=0)
