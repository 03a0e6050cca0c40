"""Cores of lower probabilities by exact linear programming."""

from fractions import Fraction

from capergodic import conjugate, core_membership, core_min, exactness_audit
from capergodic.catalog import three_point_lower

doc = three_point_lower()
v = doc.capacities["v"]
space = v.space

for mask in range(1, space.n_events):
    r = core_min(v, mask)
    where = ", ".join(str(p) for p in r.argmin)
    print(f"min P({space.format(mask)}) over the core = {r.optimum}, attained at ({where})")

print("exact:", exactness_audit(v).exact)
print("(1/2, 1/2, 0) in core:", core_membership(v, (Fraction(1, 2), Fraction(1, 2), 0)).member)
print("(1, 0, 0) in core:", core_membership(v, (1, 0, 0)).member)
# the conjugate is the upper probability: V(A) = 1 - v(A^c)
print("V({w1,w2}) =", conjugate(v)(space.event(["w1", "w2"])))
