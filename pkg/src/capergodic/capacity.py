"""Finite sample spaces, exact capacity tables and their classification.

Events are integer bit masks over the points of a :class:`SampleSpace`; bit
``i`` set means point ``i`` belongs to the event.  A :class:`Capacity` stores
one :class:`~fractions.Fraction` per event in a dense table indexed by mask,
so every structural question below is an exhaustive scan of the subset
lattice.

Continuity from below/above, at the empty set and at the whole space hold
trivially for every capacity on a finite space (every monotone sequence of
events is eventually constant), so they are not computed.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import MissingEvent, NotMonotone, NotNormalized, SpaceMismatch, SpaceTooLarge

MAX_POINTS = 24


def as_fraction(x) -> Fraction:
    """Convert ``x`` to an exact rational; floats go through their decimal repr."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def members(mask: int) -> list[int]:
    """Indices of the points in ``mask``, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def submasks(mask: int):
    """Yield every submask of ``mask`` (including 0 and ``mask``), descending."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class SampleSpace:
    """A finite sample space with all subsets as events."""

    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(label) for label in self.labels)
        object.__setattr__(self, "labels", labels)
        if not 1 <= len(labels) <= MAX_POINTS:
            raise SpaceTooLarge(f"sample space must have 1..{MAX_POINTS} points, got {len(labels)}")
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate labels in {labels}")
        for label in labels:
            if not label or any(c in label for c in " ,{}()=#\t") or label == "end":
                raise ValueError(f"invalid point label {label!r}")

    @classmethod
    def of_size(cls, n: int, prefix: str = "w") -> "SampleSpace":
        return cls(tuple(f"{prefix}{i + 1}" for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    @property
    def n_events(self) -> int:
        return 1 << len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown point {label!r}") from None

    def event(self, labels: Iterable[str | int]) -> int:
        """Mask of the event made of the given labels (or point indices)."""
        mask = 0
        for item in labels:
            i = item if isinstance(item, int) else self.index(item)
            if not 0 <= i < self.n:
                raise KeyError(f"point index {i} out of range")
            mask |= 1 << i
        return mask

    def labels_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in members(mask))

    def complement(self, mask: int) -> int:
        return self.full ^ mask

    def format(self, mask: int) -> str:
        return "{" + ",".join(self.labels_of(mask)) + "}"


def _event_probabilities(p: Sequence[Fraction]) -> list[Fraction]:
    table = [Fraction(0)] * (1 << len(p))
    for mask in range(1, len(table)):
        low = mask & -mask
        table[mask] = table[mask ^ low] + p[low.bit_length() - 1]
    return table


class Capacity:
    """An exact capacity: one rational per event, indexed by event mask.

    Construction checks normalization and monotonicity unless ``check=False``
    (used by constructors whose output is valid by design).
    """

    __slots__ = ("space", "values")

    def __init__(self, space: SampleSpace, values: Sequence, *, check: bool = True):
        values = tuple(as_fraction(v) for v in values)
        if len(values) != space.n_events:
            raise ValueError(f"expected {space.n_events} values, got {len(values)}")
        self.space = space
        self.values = values
        if check:
            _check_capacity(space, values)

    @classmethod
    def from_mapping(cls, space: SampleSpace, table: Mapping) -> "Capacity":
        """Build from a mapping keyed by masks or by iterables of labels."""
        values: list[Fraction | None] = [None] * space.n_events
        for key, value in table.items():
            mask = key if isinstance(key, int) else space.event(key)
            if not 0 <= mask <= space.full:
                raise ValueError(f"event mask {mask} out of range")
            values[mask] = as_fraction(value)
        for mask, value in enumerate(values):
            if value is None:
                raise MissingEvent(mask, space.format(mask))
        return cls(space, values)

    @classmethod
    def from_function(cls, space: SampleSpace, f, *, check: bool = True) -> "Capacity":
        return cls(space, [f(mask) for mask in range(space.n_events)], check=check)

    def __call__(self, event: int) -> Fraction:
        return self.values[event]

    def __eq__(self, other):
        if not isinstance(other, Capacity):
            return NotImplemented
        return self.space == other.space and self.values == other.values

    def __hash__(self):
        return hash((self.space, self.values))

    def __repr__(self):
        return f"Capacity(n={self.space.n})"

    def conjugate(self) -> "Capacity":
        return conjugate(self)

    def classify(self) -> "ClassificationReport":
        return classify(self)

    def range(self) -> list[Fraction]:
        return sorted(set(self.values))


def _check_capacity(space: SampleSpace, values: Sequence[Fraction]) -> None:
    # monotonicity first: an order violation is the more specific diagnosis
    for mask in range(space.n_events):
        here = values[mask]
        rest = space.full ^ mask
        while rest:
            bit = rest & -rest
            rest ^= bit
            if here > values[mask | bit]:
                raise NotMonotone(
                    mask,
                    mask | bit,
                    f"mu({space.format(mask)})={here} > mu({space.format(mask | bit)})={values[mask | bit]}",
                )
    if values[0] != 0 or values[space.full] != 1:
        raise NotNormalized(
            f"capacity must satisfy mu(empty)=0 and mu(Omega)=1, got {values[0]} and {values[space.full]}"
        )


def additive(space: SampleSpace, p: Sequence) -> Capacity:
    """The probability measure with point masses ``p`` as a capacity table."""
    p = _probability_vector(space, p)
    return Capacity(space, _event_probabilities(p), check=False)


def symmetric(space: SampleSpace, by_size: Sequence) -> Capacity:
    """Capacity depending only on event size: ``mu(A) = by_size[|A|]``."""
    if len(by_size) != space.n + 1:
        raise ValueError(f"need {space.n + 1} values, one per event size")
    by_size = [as_fraction(v) for v in by_size]
    return Capacity.from_function(space, lambda mask: by_size[mask.bit_count()])


def unanimity(space: SampleSpace, event: int) -> Capacity:
    """``u_B(A) = 1`` iff ``A`` contains ``B``."""
    if event == 0:
        raise ValueError("unanimity game needs a nonempty event")
    return Capacity.from_function(space, lambda mask: int(mask & event == event), check=False)


def mixture(mu: Capacity, nu: Capacity, weight) -> Capacity:
    """Pointwise ``weight*mu + (1-weight)*nu``."""
    if mu.space != nu.space:
        raise SpaceMismatch("capacities live on different spaces")
    w = as_fraction(weight)
    if not 0 <= w <= 1:
        raise ValueError("mixture weight must lie in [0, 1]")
    return Capacity(mu.space, [w * a + (1 - w) * b for a, b in zip(mu.values, nu.values)], check=False)


def conjugate(mu: Capacity) -> Capacity:
    """The dual capacity ``A -> 1 - mu(A^c)``."""
    full = mu.space.full
    vals = mu.values
    return Capacity(mu.space, [1 - vals[full ^ mask] for mask in range(len(vals))], check=False)


@dataclass
class ClassificationReport:
    """Which structural properties a capacity has.

    ``witnesses[name]`` is an event pair ``(A, B)`` violating property
    ``name`` when its flag is false, else ``None``.
    """

    is_capacity: bool
    concave: bool
    convex: bool
    subadditive: bool
    superadditive: bool
    additive: bool
    witnesses: dict = field(default_factory=dict)

    FLAGS = ("is_capacity", "concave", "convex", "subadditive", "superadditive", "additive")

    @property
    def continuous(self) -> bool:
        # every capacity on a finite space is continuous
        return True

    def flags(self) -> dict[str, bool]:
        return {name: getattr(self, name) for name in self.FLAGS}


def classify(mu: Capacity) -> ClassificationReport:
    """Decide concavity, convexity, sub-/superadditivity and additivity.

    Concavity and convexity use the local form (decreasing/increasing
    marginal gains, ``O(n^2 2^n)``); the witness ``(A+i, A+j)`` is a pair
    violating the global inequality.  Sub-/superadditivity scan all disjoint
    pairs (``O(3^n)``).
    """
    space = mu.space
    v = mu.values
    full = space.full
    n = space.n
    concave_w = convex_w = None
    for mask in range(space.n_events):
        if concave_w and convex_w:
            break
        free = [i for i in range(n) if not mask >> i & 1]
        base = v[mask]
        for a in range(len(free)):
            bi = 1 << free[a]
            for b in range(a + 1, len(free)):
                bj = 1 << free[b]
                lhs = v[mask | bi | bj] + base
                rhs = v[mask | bi] + v[mask | bj]
                if concave_w is None and lhs > rhs:
                    concave_w = (mask | bi, mask | bj)
                if convex_w is None and lhs < rhs:
                    convex_w = (mask | bi, mask | bj)

    sub_w = super_w = None
    for union in range(1, full + 1):
        if sub_w and super_w:
            break
        low = union & -union
        total = v[union]
        # enumerate splits union = A + B with A holding the lowest point
        rest = union ^ low
        for extra in submasks(rest):
            a = low | extra
            b = union ^ a
            if b == 0:
                continue
            s = v[a] + v[b]
            if sub_w is None and total > s:
                sub_w = (a, b)
            if super_w is None and total < s:
                super_w = (a, b)

    add_w = None
    for mask in range(1, space.n_events):
        low = mask & -mask
        if v[mask] != v[mask ^ low] + v[low]:
            add_w = (mask ^ low, low)
            break

    witnesses = {
        "concave": concave_w,
        "convex": convex_w,
        "subadditive": sub_w,
        "superadditive": super_w,
        "additive": add_w,
    }
    return ClassificationReport(
        is_capacity=True,
        concave=concave_w is None,
        convex=convex_w is None,
        subadditive=sub_w is None,
        superadditive=super_w is None,
        additive=add_w is None,
        witnesses=witnesses,
    )


def validate(space: SampleSpace, table: Mapping) -> ClassificationReport:
    """Check a raw event -> value mapping and classify it.

    Raises :class:`MissingEvent`, :class:`NotNormalized` or
    :class:`NotMonotone` (carrying the offending pair) on invalid input.
    """
    return classify(Capacity.from_mapping(space, table))


def _probability_vector(space: SampleSpace, p: Sequence) -> tuple[Fraction, ...]:
    p = tuple(as_fraction(x) for x in p)
    if len(p) != space.n:
        raise SpaceMismatch(f"probability vector has {len(p)} entries, space has {space.n} points")
    if any(x < 0 for x in p) or sum(p) != 1:
        raise ValueError(f"not a probability vector: {[str(x) for x in p]}")
    return p


@dataclass(frozen=True)
class PriorSet:
    """A finite nonempty family of probability vectors on one space."""

    space: SampleSpace
    priors: tuple

    def __post_init__(self):
        priors = tuple(_probability_vector(self.space, p) for p in self.priors)
        if not priors:
            raise ValueError("a prior set must be nonempty")
        object.__setattr__(self, "priors", priors)

    def __len__(self):
        return len(self.priors)

    def __iter__(self):
        return iter(self.priors)

    def expectations(self, values: Sequence) -> list[Fraction]:
        values = [as_fraction(x) for x in values]
        return [sum((pi * x for pi, x in zip(p, values)), Fraction(0)) for p in self.priors]


def from_priors(ps: PriorSet, side: str = "upper") -> Capacity:
    """Upper (pointwise max) or lower (pointwise min) probability of ``ps``."""
    if side not in ("upper", "lower"):
        raise ValueError(f"side must be 'upper' or 'lower', got {side!r}")
    pick = max if side == "upper" else min
    tables = [_event_probabilities(p) for p in ps.priors]
    return Capacity(ps.space, [pick(col) for col in zip(*tables)], check=False)


@dataclass(frozen=True)
class Distortion:
    """Nondecreasing piecewise-linear ``f: [0,1] -> [0,1]`` with ``f(0)=0, f(1)=1``."""

    breakpoints: tuple

    def __post_init__(self):
        pts = tuple((as_fraction(x), as_fraction(y)) for x, y in self.breakpoints)
        if len(pts) < 2:
            raise ValueError("a distortion needs at least two breakpoints")
        xs = [x for x, _ in pts]
        ys = [y for _, y in pts]
        if xs[0] != 0 or xs[-1] != 1 or any(a >= b for a, b in zip(xs, xs[1:])):
            raise ValueError("breakpoint abscissae must increase strictly from 0 to 1")
        if ys[0] != 0 or ys[-1] != 1 or any(a > b for a, b in zip(ys, ys[1:])):
            raise ValueError("distortion must be nondecreasing with f(0)=0 and f(1)=1")
        object.__setattr__(self, "breakpoints", pts)

    @classmethod
    def identity(cls) -> "Distortion":
        return cls(((0, 0), (1, 1)))

    def __call__(self, x) -> Fraction:
        x = as_fraction(x)
        xs = [bx for bx, _ in self.breakpoints]
        if not 0 <= x <= 1:
            raise ValueError(f"distortion argument {x} outside [0, 1]")
        k = bisect.bisect_left(xs, x)
        if xs[k] == x:
            return self.breakpoints[k][1]
        (x0, y0), (x1, y1) = self.breakpoints[k - 1], self.breakpoints[k]
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)


def from_distortion(p: Sequence, f: Distortion, space: SampleSpace | None = None) -> Capacity:
    """The distorted probability ``A -> f(P(A))``."""
    space = space or SampleSpace.of_size(len(p))
    p = _probability_vector(space, p)
    return Capacity(space, [f(x) for x in _event_probabilities(p)], check=False)
