"""Independence of events, classes and random variables under a capacity.

A finite sigma-algebra is represented by its atoms (a :class:`Partition`);
its full list of events is only materialised inside the product-rule scans.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .capacity import Capacity, SampleSpace
from .choquet import RandomVariable
from .errors import BadSplit, LengthMismatch, SpaceMismatch, SpaceTooLarge

MAX_CLASS_EVENTS = 1 << 16


@dataclass(frozen=True)
class Partition:
    """Disjoint nonempty blocks covering the space, ordered by smallest member."""

    space: SampleSpace
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(sorted((int(b) for b in self.blocks), key=lambda b: b & -b))
        covered = 0
        for b in blocks:
            if b == 0 or covered & b:
                raise ValueError("partition blocks must be nonempty and pairwise disjoint")
            covered |= b
        if covered != self.space.full:
            raise ValueError("partition blocks do not cover the space")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def trivial(cls, space: SampleSpace) -> "Partition":
        return cls(space, (space.full,))

    def events(self) -> list[int]:
        """Every union of blocks: the generated sigma-algebra, ascending by block choice."""
        k = len(self.blocks)
        if 1 << k > MAX_CLASS_EVENTS:
            raise SpaceTooLarge(f"sigma-algebra with {k} atoms has too many events to enumerate")
        out = []
        for choice in range(1 << k):
            mask = 0
            for a in range(k):
                if choice >> a & 1:
                    mask |= self.blocks[a]
            out.append(mask)
        return out


def sigma_of(rvs: Sequence[RandomVariable]) -> Partition:
    """Atoms of the sigma-algebra generated by the listed random variables."""
    if not rvs:
        raise ValueError("need at least one random variable")
    space = rvs[0].space
    if any(y.space != space for y in rvs):
        raise SpaceMismatch("random variables live on different spaces")
    groups = {}
    for i in range(space.n):
        key = tuple(y(i) for y in rvs)
        groups[key] = groups.get(key, 0) | 1 << i
    return Partition(space, tuple(groups.values()))


class IndependenceVerdict(NamedTuple):
    independent: bool
    witness: tuple | None  # one event per class in ``classes`` (the violating subfamily)
    classes: tuple | None  # indices of the classes in the violating subfamily
    joint: Fraction | None  # mu of the intersection
    product: Fraction | None  # product of the individual capacities


def events_independent(mu: Capacity, a: int, b: int) -> IndependenceVerdict:
    for e in (a, b):
        if not 0 <= e <= mu.space.full:
            raise SpaceMismatch(f"event mask {e} outside the space")
    joint, prod = mu(a & b), mu(a) * mu(b)
    if joint == prod:
        return IndependenceVerdict(True, None, None, None, None)
    return IndependenceVerdict(False, (a, b), (0, 1), joint, prod)


def classes_independent(mu: Capacity, classes: Sequence[Sequence[int]]) -> IndependenceVerdict:
    """Product rule over every subfamily of at least two classes and every event selection.

    Subfamilies are scanned by size, then lexicographically; selections in
    the order the events are listed.  The first violation is returned.
    """
    classes = [list(c) for c in classes]
    for size in range(2, len(classes) + 1):
        for idx in itertools.combinations(range(len(classes)), size):
            for pick in itertools.product(*(classes[t] for t in idx)):
                joint = mu.space.full
                prod = Fraction(1)
                for e in pick:
                    joint &= e
                    prod *= mu(e)
                if mu(joint) != prod:
                    return IndependenceVerdict(False, tuple(pick), idx, mu(joint), prod)
    return IndependenceVerdict(True, None, None, None, None)


def rvs_independent(mu: Capacity, rvs: Sequence[RandomVariable]) -> IndependenceVerdict:
    return classes_independent(mu, [sigma_of([y]).events() for y in rvs])


def block_independent(mu: Capacity, rvs: Sequence[RandomVariable], split: int) -> IndependenceVerdict:
    """Independence of ``sigma(Y_1..Y_split)`` and ``sigma(Y_{split+1}..)``."""
    if not 1 <= split < len(rvs):
        raise BadSplit(f"split index must lie in 1..{len(rvs) - 1}, got {split}")
    return classes_independent(mu, [sigma_of(rvs[:split]).events(), sigma_of(rvs[split:]).events()])


def attained_tuples(*groups: Sequence[RandomVariable]) -> list[tuple]:
    """Value tuples attained by each group, in order of first appearance, group by group."""
    seen = {}
    for rvs in groups:
        space = rvs[0].space
        for i in range(space.n):
            seen.setdefault(tuple(y(i) for y in rvs), None)
    return list(seen)


def tuple_preimage(rvs: Sequence[RandomVariable], tuples) -> int:
    wanted = set(tuples)
    space = rvs[0].space
    mask = 0
    for i in range(space.n):
        if tuple(y(i) for y in rvs) in wanted:
            mask |= 1 << i
    return mask


class DistributionCheck(NamedTuple):
    identical: bool
    witness: tuple | None  # tuple-set A with different capacities
    first: Fraction | None  # mu(X in A)
    second: Fraction | None  # mu(Y in A)


def identically_distributed(
    mu: Capacity, xs: Sequence[RandomVariable], ys: Sequence[RandomVariable]
) -> DistributionCheck:
    """Compare ``mu(X in A)`` and ``mu(Y in A)`` over all sets of attained tuples."""
    if len(xs) != len(ys) or not xs:
        raise LengthMismatch(f"cannot compare {len(xs)} variables with {len(ys)}")
    for y in list(xs) + list(ys):
        if y.space != mu.space:
            raise SpaceMismatch("random variable and capacity live on different spaces")
    tuples = attained_tuples(xs, ys)
    n = mu.space.n
    x_at = [tuple(y(i) for y in xs) for i in range(n)]
    y_at = [tuple(y(i) for y in ys) for i in range(n)]
    pos = {t: k for k, t in enumerate(tuples)}
    x_bits = [1 << pos[t] for t in x_at]
    y_bits = [1 << pos[t] for t in y_at]
    for choice in range(1 << len(tuples)):
        xm = ym = 0
        for i in range(n):
            if choice & x_bits[i]:
                xm |= 1 << i
            if choice & y_bits[i]:
                ym |= 1 << i
        if mu(xm) != mu(ym):
            chosen = tuple(t for k, t in enumerate(tuples) if choice >> k & 1)
            return DistributionCheck(False, chosen, mu(xm), mu(ym))
    return DistributionCheck(True, None, None, None)


@dataclass
class ZeroOneReport:
    """Outcome of the self-independence pivot of the 0-1 law.

    When the sigma-algebra is independent of itself, every member ``A`` must
    satisfy ``mu(A) in {0, 1}`` and ``mu(A) = 0 or mu(A^c) = 0``.
    """

    self_independent: bool
    hypothesis_witness: tuple | None
    zero_one: bool | None = None  # conclusion (i); None when the hypothesis fails
    complement_null: bool | None = None  # conclusion (ii)
    violations: tuple = ()

    @property
    def holds(self) -> bool:
        return not self.self_independent or (self.zero_one and self.complement_null)


def zero_one_audit(mu: Capacity, partition: Partition) -> ZeroOneReport:
    if partition.space != mu.space:
        raise SpaceMismatch("partition and capacity live on different spaces")
    events = partition.events()
    verdict = classes_independent(mu, [events, events])
    if not verdict.independent:
        return ZeroOneReport(False, verdict.witness)
    full = mu.space.full
    bad = []
    zero_one = complement_null = True
    for a in events:
        if mu(a) not in (0, 1):
            zero_one = False
            bad.append(("zero_one", a))
        if mu(a) != 0 and mu(full ^ a) != 0:
            complement_null = False
            bad.append(("complement_null", a))
    return ZeroOneReport(True, None, zero_one, complement_null, tuple(bad))
