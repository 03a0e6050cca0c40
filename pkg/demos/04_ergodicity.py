"""Two swaps on four points: every invariant set has capacity 0 or 1,
yet the space splits into two invariant halves of full capacity."""

from capergodic import ergodicity_classify, invariant_structure, orbit_average, quasi_sure_constant
from capergodic.catalog import double_swap, three_point_lower


def show(values):
    return "(" + ", ".join(str(x) for x in values) + ")"


doc = double_swap()
theta = doc.maps["theta"]
space = doc.space
print("invariant sets:", [space.format(b) for b in invariant_structure(theta).sets])

for name, mu in doc.capacities.items():
    r = ergodicity_classify(mu, theta)
    print(f"{name}: values {show(r.values)}, cond_i {r.cond_i}, cond_ii {r.cond_ii}, ergodic {r.ergodic}")

g = orbit_average(theta, doc.rvs["xi"]).as_variable(space)
print("orbit averages of xi:", show(g.values), "constant quasi-surely:", quasi_sure_constant(doc.capacities["mu2"], g).value)

# the reverse separation: no invariant set is doubly non-null, yet v takes the value 1/2
t = three_point_lower()
r = ergodicity_classify(t.capacities["v"], t.maps["theta"])
print("three points:", show(r.values), "cond_i", r.cond_i, "cond_ii", r.cond_ii)
