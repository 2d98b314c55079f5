"""Exhaustive counts of small unitary magmas and a search for a firm action
that does not distribute over addition."""

import time

from magmakit import SearchBudget, count_magmas, enumerate_magmas, iso_classes
from magmakit.search import search_firm_not_distributive

for n in (1, 2, 3, 4):
    t0 = time.perf_counter()
    total = count_magmas(n)
    monoids = count_magmas(n, associative_only=True)
    print(f"order {n}: {total:>7} unitary magmas, {monoids:>4} monoids  ({time.perf_counter() - t0:.2f}s)")

for n in (2, 3):
    classes = iso_classes(enumerate_magmas(n))
    print(f"order {n}: {len(classes)} isomorphism classes, largest of size {max(c.size for c in classes)}")

hit = search_firm_not_distributive(SearchBudget(max_order=3))
print("\nfirst firm, non-distributive action after", hit.candidates, "candidates")
print("  B =", hit.action.b.table.tolist())
print("  X =", hit.action.x.table.tolist())
print("  action =", hit.action.table.tolist())
print("  b(x + x') != bx + bx' at (b, x, x') =", hit.witness)
