"""Sample means of the ambiguous urn, then a theorem audit and a witness search."""

from fractions import Fraction

from capergodic import SimulationConfig, slln_monte_carlo
from capergodic.harness import run_audit, search_counterexample

report = slln_monte_carlo(SimulationConfig(Fraction(2, 5), 100_000, seed=7, report_points=(10, 100, 1000, 10_000)))
for n, _, mean in report.series:
    print(f"n={n:>6}  mean={float(mean):.4f}")
print(f"bounds [{report.lower}, {report.upper}], inside: {report.inside_bounds}")

outcome = run_audit("birkhoff", n=5, count=200, seed=7)
print("\n".join(outcome.lines()))

w = search_counterexample("weak-ergodic-not-ergodic", budget=1000, seed=0)
print(f"\nfresh witness at instance {w.index}:\n{w.text}")
