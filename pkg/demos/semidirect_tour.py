"""Build a semidirect product, read the action back, and recover it from a
relabelled copy of the middle magma."""

import numpy as np

from magmakit import Action, associated_action, canonical_iso, cyclic_group, scramble_extension, semidirect
from magmakit.actions import is_distributive, is_firm

z2 = cyclic_group(2)
h = Action(z2, z2, [[0, 1], [0, 0]])  # 1 sends 1 to 0
print("action table (rows b, columns x):", h.table.tolist())
print("firm:", is_firm(h), " distributive:", is_distributive(h))

d = semidirect(h)
print("\nX x| B has order", d.total.order, "with pairs (x, b) at index x*|B| + b")
for i in range(d.total.order):
    row = [d.unpair(int(j)) for j in d.total.table[i]]
    print(f"  {d.unpair(i)} + ... = {row}")

e = d.extension
print("\nthe diagram is a split extension; its action is h again:", associated_action(e) == h)

rng = np.random.default_rng(3)
e2, sigma = scramble_extension(e, rng)
print("\nrelabel A by", sigma.values.tolist())
print("scrambled middle table:", e2.a.table.tolist())
phi, psi, _ = canonical_iso(e2)
print("phi: A -> X x| B =", phi.values.tolist())
print("psi: X x| B -> A =", psi.values.tolist())
print("action recovered from the scrambled copy:", associated_action(e2).table.tolist())
