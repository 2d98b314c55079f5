"""Two split extensions that do not compose, and why firmness fixes it."""

from magmakit import Action, cyclic_group, is_composable, semidirect, trivial_action
from magmakit.actions import firmness_witness
from magmakit.composition import compose

z2 = cyclic_group(2)
outer = semidirect(trivial_action(z2, z2)).extension  # B = Y x D = Z2 x Z2
b = outer.a
print("middle magma B = Y x| D, pairs (y, d) at index y*2 + d")

# (0,1) and (1,0) fix 1, their sum (1,1) kills it
h = Action(b, z2, [[0, 1], [0, 1], [0, 1], [0, 0]])
inner = semidirect(h).extension
c = is_composable(outer, inner)
print("\ncomposable:", c.composable)
print("criteria (candidate is an extension, left law, action law):", c.by_extension, c.by_left_assoc, c.by_action)
print("action law fails at (y, d, x) =", c.witness)
print("first failing equation of the candidate:", c.violation[0], c.violation[1])
print("inner action is firm?", firmness_witness(h) is None, "- failing triple", firmness_witness(h))

firm = Action(b, z2, [[0, 1], [0, 1], [0, 1], [0, 1]])
g = compose(outer, semidirect(firm).extension)
print("\nwith the trivial inner action the pair composes:")
print("  G has base of order", g.b.order, "kernel of order", g.x.order, "middle of order", g.a.order)
