"""Build capacities three ways and read off their shape."""

from fractions import Fraction

from capergodic import PriorSet, SampleSpace, classify, conjugate, from_priors, symmetric

space = SampleSpace(("red", "black", "yellow"))

# a lower probability from two priors
ps = PriorSet(space, ((Fraction(1, 3), Fraction(2, 3), 0), (Fraction(1, 3), 0, Fraction(2, 3))))
v = from_priors(ps, "lower")
V = conjugate(v)
for mask in range(space.n_events):
    print(f"{space.format(mask):24} v={v(mask)!s:5} V={V(mask)}")

report = classify(v)
print("lower:", {k: getattr(report, k) for k in ("concave", "convex", "subadditive", "superadditive", "additive")})

# a 0-1 valued threshold capacity: mu(A) = 1 iff A has at least two points
mu = symmetric(space, [0, 0, 1, 1])
report = classify(mu)
print("threshold superadditive:", report.superadditive, "concave:", report.concave)
print("first concavity witness:", [space.format(a) for a in report.witnesses["concave"]])
