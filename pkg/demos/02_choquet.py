"""Choquet integrals as layered sums, and the upper expectation they give."""

from fractions import Fraction

from capergodic import PriorSet, RandomVariable, SampleSpace, choquet_integral, ellsberg_priors, from_priors, upper_expectation_check

ps = ellsberg_priors(Fraction(3, 10), Fraction(7, 10))
V = from_priors(ps, "upper")
bet = RandomVariable(ps.space, (1, 0))  # pays 1 on red

result = choquet_integral(V, bet)
print("upper expectation of the red bet:", result.value)
print(f"  base {result.base}")
for layer in result.layers:
    print(f"  + {layer.weight} x V({ps.space.format(layer.event)}) = {layer.weight} x {V(layer.event)}")

# for a concave envelope the Choquet integral is a maximum over a set of additive
# measures that may be larger than the hull of the given priors
space = SampleSpace.of_size(3)
tilted = PriorSet(space, ((0, 0, 1), (Fraction(1, 2), Fraction(1, 2), 0)))
check = upper_expectation_check(tilted, RandomVariable(space, (1, -1, 0)))
print("choquet:", check.choquet, "best prior:", check.max_expectation, "anticore max:", check.anticore_max)
