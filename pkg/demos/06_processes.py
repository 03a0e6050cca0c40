"""Stationarity of finite-horizon processes and the shift on cylinders."""

from capergodic import orbit_process, shift_reduction_audit, stationarity_check
from capergodic.catalog import double_swap, five_point_threshold

five = five_point_threshold()
audit = shift_reduction_audit(five.capacities["mu"], five.process)
print("threshold process stationary:", audit.stationary, "shift invariant:", audit.shift_invariant)
depth, tuples = audit.cylinder_witness
shown = ", ".join("(" + ", ".join(str(x) for x in t) + ")" for t in sorted(tuples))
print(f"failing cylinder: depth {depth}, tuples {{{shown}}}")

doc = double_swap()
proc = orbit_process(doc.maps["theta"], doc.rvs["xi"], 4)
for name, mu in doc.capacities.items():
    print(f"orbit process under {name} stationary:", stationarity_check(mu, proc).stationary)
