"""Transformations of a finite sample space and their ergodic behaviour.

A :class:`MapTable` need not be a bijection.  Everything here works with
preimages only: invariant sets are the ``B`` with ``theta^{-1}B = B`` and a
capacity is preserved when ``mu(theta^{-1}A) = mu(A)`` for every event.

Every orbit of a map on a finite set is eventually periodic, so Cesàro
averages along orbits converge and their limits are the means over the
terminal cycle; the transient part contributes nothing to the limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, NamedTuple, Sequence

from .capacity import Capacity, SampleSpace, conjugate, members
from .choquet import RandomVariable, choquet
from .errors import NotInvariant, SpaceMismatch


@dataclass(frozen=True)
class MapTable:
    """``theta`` as a function table: ``image[i]`` is the index of ``theta(w_i)``."""

    space: SampleSpace
    image: tuple

    def __post_init__(self):
        image = tuple(int(j) for j in self.image)
        if len(image) != self.space.n:
            raise SpaceMismatch(f"map table has {len(image)} entries, space has {self.space.n} points")
        if any(not 0 <= j < self.space.n for j in image):
            raise ValueError(f"map table {image} points outside the space")
        object.__setattr__(self, "image", image)

    @classmethod
    def from_labels(cls, space: SampleSpace, arrows: Mapping[str, str]) -> "MapTable":
        missing = [label for label in space.labels if label not in arrows]
        if missing:
            raise ValueError(f"map does not define an image for {missing}")
        return cls(space, tuple(space.index(arrows[label]) for label in space.labels))

    @classmethod
    def identity(cls, space: SampleSpace) -> "MapTable":
        return cls(space, tuple(range(space.n)))

    def __call__(self, point: int) -> int:
        return self.image[point]

    def iterate(self, point: int, steps: int) -> int:
        for _ in range(steps):
            point = self.image[point]
        return point

    def preimage(self, event: int) -> int:
        return preimage(self, event)

    def preimage_table(self) -> list[int]:
        """``theta^{-1}A`` for every mask ``A`` (``O(2^n)``)."""
        fibre = [0] * self.space.n
        for i, j in enumerate(self.image):
            fibre[j] |= 1 << i
        table = [0] * self.space.n_events
        for mask in range(1, len(table)):
            low = mask & -mask
            table[mask] = table[mask ^ low] | fibre[low.bit_length() - 1]
        return table


def _same_space(a, b):
    if a.space != b.space:
        raise SpaceMismatch("objects live on different sample spaces")


def preimage(theta: MapTable, event: int) -> int:
    """``{w : theta(w) in event}``."""
    if not 0 <= event <= theta.space.full:
        raise SpaceMismatch(f"event mask {event} outside the space")
    out = 0
    for i, j in enumerate(theta.image):
        if event >> j & 1:
            out |= 1 << i
    return out


@dataclass(frozen=True)
class InvariantStructure:
    """All invariant sets (ascending masks) and the atoms they are built from."""

    space: SampleSpace
    sets: tuple
    atoms: tuple

    def atom_unions(self):
        """Yield every union of atoms; these are exactly the invariant sets."""
        k = len(self.atoms)
        for choice in range(1 << k):
            mask = 0
            for a in range(k):
                if choice >> a & 1:
                    mask |= self.atoms[a]
            yield mask


def invariant_structure(theta: MapTable) -> InvariantStructure:
    """Scan all ``2^n`` events for ``theta^{-1}B = B``, extract atoms, verify the sigma-algebra."""
    space = theta.space
    pre = theta.preimage_table()
    sets = tuple(mask for mask in range(space.n_events) if pre[mask] == mask)
    atom_of = [space.full] * space.n
    for mask in sets:
        for i in members(mask):
            atom_of[i] &= mask
    atoms = tuple(sorted(set(atom_of), key=lambda m: m & -m))
    # atoms disjoint and covering, and the invariant sets are exactly their unions
    covered = 0
    for atom in atoms:
        if covered & atom:
            raise AssertionError("invariant atoms overlap")
        covered |= atom
    if covered != space.full or len(sets) != 1 << len(atoms):
        raise AssertionError("invariant sets do not form the sigma-algebra of their atoms")
    for mask in sets:
        if mask != _union_of_atoms_meeting(atoms, mask):
            raise AssertionError(f"invariant set {space.format(mask)} is not a union of atoms")
    return InvariantStructure(space, sets, atoms)


def _union_of_atoms_meeting(atoms, mask):
    out = 0
    for atom in atoms:
        if atom & mask:
            out |= atom
    return out


class InvarianceCheck(NamedTuple):
    invariant: bool
    witness: int | None  # first event A (ascending) with mu(theta^{-1}A) != mu(A)


def is_invariant_capacity(mu: Capacity, theta: MapTable) -> InvarianceCheck:
    _same_space(mu, theta)
    pre = theta.preimage_table()
    for mask, value in enumerate(mu.values):
        if mu(pre[mask]) != value:
            return InvarianceCheck(False, mask)
    return InvarianceCheck(True, None)


def conjugate_invariance_check(mu: Capacity, theta: MapTable) -> bool:
    """True when ``mu`` and its conjugate are both preserved or both not preserved."""
    return is_invariant_capacity(mu, theta).invariant == is_invariant_capacity(conjugate(mu), theta).invariant


class Orbit(NamedTuple):
    tail_start: int  # number of transient steps before the cycle is entered
    period: int
    cycle: tuple  # cycle points in visiting order, starting where the orbit enters


def orbit(theta: MapTable, start: int) -> Orbit:
    seen = {}
    path = []
    point = start
    while point not in seen:
        seen[point] = len(path)
        path.append(point)
        point = theta.image[point]
    tail = seen[point]
    cycle = tuple(path[tail:])
    return Orbit(tail, len(cycle), cycle)


def cycles(theta: MapTable) -> list[tuple]:
    """Every cycle of ``theta``, each starting at its smallest point, sorted."""
    found = {}
    for i in range(theta.space.n):
        cyc = orbit(theta, i).cycle
        k = cyc.index(min(cyc))
        found[min(cyc)] = cyc[k:] + cyc[:k]
    return [found[key] for key in sorted(found)]


def visit_frequency_capacity(theta: MapTable, start: int) -> Capacity:
    """Long-run visit frequencies of the orbit of ``start``.

    The upper density of visits to ``A`` is an exact limit here, equal to the
    share of the terminal cycle lying in ``A``; the result is therefore an
    additive, ``theta``-invariant probability.
    """
    space = theta.space
    if not 0 <= start < space.n:
        raise ValueError(f"point index {start} outside the space")
    cyc = orbit(theta, start).cycle
    period = len(cyc)
    cyc_mask = space.event(cyc)
    mu = Capacity.from_function(space, lambda mask: Fraction((mask & cyc_mask).bit_count(), period), check=False)
    if not is_invariant_capacity(mu, theta).invariant:
        raise AssertionError("visit-frequency capacity is not invariant")
    return mu


class ChoquetInvarianceCheck(NamedTuple):
    holds: bool
    shifted: Fraction  # integral of xi(theta .)
    original: Fraction


def choquet_invariance_check(mu: Capacity, theta: MapTable, xi: RandomVariable) -> ChoquetInvarianceCheck:
    _same_space(mu, theta)
    _same_space(mu, xi)
    inv = is_invariant_capacity(mu, theta)
    if not inv.invariant:
        raise NotInvariant(f"capacity is not preserved: witness {mu.space.format(inv.witness)}")
    shifted = choquet(mu, xi.after(theta.image))
    original = choquet(mu, xi)
    return ChoquetInvarianceCheck(shifted == original, shifted, original)


@dataclass
class ErgodicityReport:
    """Both ergodicity conditions over the invariant sets.

    ``cond_i``: every invariant ``B`` has ``mu(B)`` in {0, 1}.
    ``cond_ii``: every invariant ``B`` has ``mu(B) = 0`` or ``mu(B^c) = 0``.
    ``ergodic`` needs both; ``weak_ergodic`` is ``cond_i`` alone.
    """

    cond_i: bool
    cond_ii: bool
    witness_i: int | None
    witness_ii: int | None
    values: tuple  # sorted value set mu(G)
    invariant: bool  # whether mu is theta-invariant at all

    @property
    def ergodic(self) -> bool:
        return self.cond_i and self.cond_ii

    @property
    def weak_ergodic(self) -> bool:
        return self.cond_i


def ergodicity_classify(mu: Capacity, theta: MapTable, structure: InvariantStructure | None = None) -> ErgodicityReport:
    _same_space(mu, theta)
    structure = structure or invariant_structure(theta)
    full = mu.space.full
    w1 = w2 = None
    for b in structure.sets:
        if w1 is None and mu(b) not in (0, 1):
            w1 = b
        if w2 is None and mu(b) != 0 and mu(full ^ b) != 0:
            w2 = b
    values = tuple(sorted({mu(b) for b in structure.sets}))
    return ErgodicityReport(w1 is None, w2 is None, w1, w2, values, is_invariant_capacity(mu, theta).invariant)


@dataclass(frozen=True)
class OrbitAverage:
    """Exact Cesàro limits of ``xi`` along the orbit of every point."""

    limits: tuple
    tail_start: tuple
    period: tuple

    def as_variable(self, space: SampleSpace) -> RandomVariable:
        return RandomVariable(space, self.limits)


def orbit_average(theta: MapTable, xi: RandomVariable) -> OrbitAverage:
    _same_space(theta, xi)
    limits, tails, periods = [], [], []
    for i in range(theta.space.n):
        orb = orbit(theta, i)
        limits.append(sum((xi(j) for j in orb.cycle), Fraction(0)) / orb.period)
        tails.append(orb.tail_start)
        periods.append(orb.period)
    return OrbitAverage(tuple(limits), tuple(tails), tuple(periods))


def cesaro_average(theta: MapTable, xi: RandomVariable, point: int, steps: int) -> Fraction:
    """``(1/steps) sum_{k<steps} xi(theta^k point)`` by direct iteration."""
    total = Fraction(0)
    for _ in range(steps):
        total += xi(point)
        point = theta.image[point]
    return total / steps


class QuasiSureConstant(NamedTuple):
    value: Fraction | None  # the constant, or None when g is not constant quasi-surely
    exceptional: int  # {g != c} for the returned c, or for the best candidate when value is None


def quasi_sure_constant(V: Capacity, g: RandomVariable) -> QuasiSureConstant:
    """Find ``c`` with ``V({g != c}) = 0``.

    Only values attained by ``g`` are candidates: for any other ``c`` the
    exceptional set is the whole space, of capacity 1.
    """
    _same_space(V, g)
    best = None
    for c in sorted(set(g.values)):
        off = g.where(lambda x, c=c: x != c)
        if V(off) == 0:
            return QuasiSureConstant(c, off)
        if best is None or V(off) < V(best):
            best = off
    return QuasiSureConstant(None, best)


def invariant_variable(structure: InvariantStructure, atom_values: Sequence) -> RandomVariable:
    """Random variable equal to ``atom_values[k]`` on the ``k``-th invariant atom."""
    if len(atom_values) != len(structure.atoms):
        raise ValueError("need one value per invariant atom")
    values = [None] * structure.space.n
    for atom, value in zip(structure.atoms, atom_values):
        for i in members(atom):
            values[i] = value
    return RandomVariable(structure.space, tuple(values))
