"""The split short five lemma in its mixed form: over a group the map
p(x, b) = (x + s(b), b) is bijective, over the OR monoid it is not."""

from magmakit import cyclic_group, identity, or_monoid
from magmakit.classes import short_five_mixed

for name, m in (("Z2", cyclic_group(2)), ("OR", or_monoid())):
    rep = short_five_mixed(m, m, identity(m))
    pairs = [divmod(int(v), 2) for v in rep.p.values]
    print(f"X = B = {name}, s = identity")
    for i, img in enumerate(pairs):
        print(f"  p{divmod(i, 2)} = {img}")
    print(f"  homomorphism: {rep.is_hom}  injective: {rep.injective}  isomorphism: {rep.isomorphism}\n")
