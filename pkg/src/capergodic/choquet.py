"""Exact Choquet integration on finite spaces.

For a simple random variable with distinct values ``x_1 > ... > x_m`` and
upper level sets ``L_i = {xi >= x_i}`` the two improper integrals defining
the Choquet integral collapse to the layered sum::

    x_m + sum_{i<m} (x_i - x_{i+1}) * mu(L_i)

since ``t -> mu({xi >= t})`` is a step function equal to ``mu(L_i)`` on
``(x_{i+1}, x_i]``, to 1 below ``x_m`` and to 0 above ``x_1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .capacity import Capacity, PriorSet, SampleSpace, as_fraction, classify, conjugate, from_priors
from .errors import NotConcave, SpaceMismatch


@dataclass(frozen=True)
class RandomVariable:
    """One exact rational value per sample point."""

    space: SampleSpace
    values: tuple

    def __post_init__(self):
        values = tuple(as_fraction(x) for x in self.values)
        if len(values) != self.space.n:
            raise SpaceMismatch(f"random variable has {len(values)} values, space has {self.space.n} points")
        object.__setattr__(self, "values", values)

    @classmethod
    def constant(cls, space: SampleSpace, c) -> "RandomVariable":
        return cls(space, (c,) * space.n)

    @classmethod
    def indicator(cls, space: SampleSpace, event: int) -> "RandomVariable":
        return cls(space, tuple(int(event >> i & 1) for i in range(space.n)))

    def __call__(self, point: int) -> Fraction:
        return self.values[point]

    def _same_space(self, other: "RandomVariable"):
        if self.space != other.space:
            raise SpaceMismatch("random variables live on different spaces")

    def __add__(self, other: "RandomVariable") -> "RandomVariable":
        self._same_space(other)
        return RandomVariable(self.space, tuple(a + b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> "RandomVariable":
        return RandomVariable(self.space, tuple(-a for a in self.values))

    def __sub__(self, other: "RandomVariable") -> "RandomVariable":
        return self + (-other)

    def affine(self, scale, shift=0) -> "RandomVariable":
        a, b = as_fraction(scale), as_fraction(shift)
        return RandomVariable(self.space, tuple(a * x + b for x in self.values))

    def after(self, image: Sequence[int]) -> "RandomVariable":
        """The composition ``omega -> self(image[omega])``."""
        return RandomVariable(self.space, tuple(self.values[j] for j in image))

    def level_set(self, threshold) -> int:
        """Mask of ``{xi >= threshold}``."""
        t = as_fraction(threshold)
        mask = 0
        for i, x in enumerate(self.values):
            if x >= t:
                mask |= 1 << i
        return mask

    def where(self, predicate) -> int:
        mask = 0
        for i, x in enumerate(self.values):
            if predicate(x):
                mask |= 1 << i
        return mask

    def is_constant(self) -> bool:
        return len(set(self.values)) == 1


class Layer(NamedTuple):
    threshold: Fraction
    event: int
    weight: Fraction


class ChoquetResult(NamedTuple):
    """``value = base + sum(weight * mu(event) for each layer)``."""

    value: Fraction
    base: Fraction
    layers: tuple


def _check(mu: Capacity, xi: RandomVariable):
    if mu.space != xi.space:
        raise SpaceMismatch("capacity and random variable live on different spaces")


def choquet_integral(mu: Capacity, xi: RandomVariable) -> ChoquetResult:
    _check(mu, xi)
    order = sorted(set(xi.values), reverse=True)
    layers = []
    value = order[-1]
    level = 0
    for x, nxt in zip(order, order[1:]):
        for i, y in enumerate(xi.values):
            if y == x:
                level |= 1 << i
        weight = x - nxt
        layers.append(Layer(x, level, weight))
        value += weight * mu(level)
    return ChoquetResult(value, order[-1], tuple(layers))


def choquet(mu: Capacity, xi: RandomVariable) -> Fraction:
    """Shorthand for ``choquet_integral(mu, xi).value``."""
    return choquet_integral(mu, xi).value


def comonotone(xi: RandomVariable, eta: RandomVariable) -> bool:
    """True when no two points are ordered oppositely by ``xi`` and ``eta``."""
    xi._same_space(eta)
    a, b = xi.values, eta.values
    n = len(a)
    return all((a[i] - a[j]) * (b[i] - b[j]) >= 0 for i in range(n) for j in range(i + 1, n))


class AsymmetryCheck(NamedTuple):
    holds: bool
    negated: Fraction  # integral of -xi against mu
    dual: Fraction  # minus the integral of xi against the conjugate


def asymmetry_check(mu: Capacity, xi: RandomVariable) -> AsymmetryCheck:
    lhs = choquet(mu, -xi)
    rhs = -choquet(conjugate(mu), xi)
    return AsymmetryCheck(lhs == rhs, lhs, rhs)


class SublinearityCheck(NamedTuple):
    holds: bool
    combined: Fraction
    first: Fraction
    second: Fraction
    concave: bool


def sublinearity_check(
    mu: Capacity, xi1: RandomVariable, xi2: RandomVariable, *, strict: bool = False
) -> SublinearityCheck:
    """Test ``C(xi1 + xi2) <= C(xi1) + C(xi2)``.

    The inequality is only guaranteed for concave ``mu``; with ``strict=True``
    a non-concave capacity raises :class:`NotConcave`, otherwise the check
    runs anyway and reports what it finds.
    """
    concave = classify(mu).concave
    if strict and not concave:
        raise NotConcave("subadditivity of the Choquet integral needs a concave capacity")
    both = choquet(mu, xi1 + xi2)
    a, b = choquet(mu, xi1), choquet(mu, xi2)
    return SublinearityCheck(both <= a + b, both, a, b, concave)


class UpperExpectationCheck(NamedTuple):
    holds: bool
    choquet: Fraction
    max_expectation: Fraction  # best expectation over the given priors
    concave: bool
    anticore_max: Fraction  # best expectation over all additive a <= V
    attained: bool  # the given priors reach the Choquet value


def upper_expectation_check(ps: PriorSet, xi: RandomVariable) -> UpperExpectationCheck:
    """Compare the Choquet integral against the upper probability with expectations.

    ``C_V(xi) >= max_P E_P[xi]`` always holds for the generating priors.  For
    concave ``V`` the integral is the maximum over the anticore
    ``{a additive : a <= V}``, found by exact LP; the anticore can be larger
    than the hull of the given priors, so ``attained`` may be false even then.
    ``holds`` asserts the ``>=`` direction and, when ``V`` is concave, the
    anticore equality.
    """
    from .credal import anticore_max

    if ps.space != xi.space:
        raise SpaceMismatch("prior set and random variable live on different spaces")
    upper = from_priors(ps, "upper")
    value = choquet(upper, xi)
    best = max(ps.expectations(xi.values))
    concave = classify(upper).concave
    anti = anticore_max(upper, xi).optimum
    holds = value >= best and (not concave or value == anti)
    return UpperExpectationCheck(holds, value, best, concave, anti, value == best)
