"""Finite-horizon stationary processes, cylinder capacities and the Ellsberg urn.

A process is a list ``Y_1..Y_N`` of random variables on one finite space.
Cylinder events ``{(Y_n, ..., Y_{n+k}) in A}`` are evaluated by pulling them
back to the sample space; no table over tuple space is ever built.

The Monte-Carlo laboratory draws from NumPy's PCG64 generator.  The seed is
expanded with :class:`numpy.random.SeedSequence` and one child stream is
spawned per report segment, so segments are independent of how many workers
run them and reports are byte-identical for a given seed.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .capacity import Capacity, PriorSet, SampleSpace, as_fraction, classify, conjugate, from_priors
from .choquet import RandomVariable, choquet
from .dynamics import MapTable, ergodicity_classify, orbit_average, quasi_sure_constant
from .errors import BadCylinder, BadInterval, SpaceMismatch
from .independence import block_independent, identically_distributed, tuple_preimage, attained_tuples


@dataclass(frozen=True)
class ProcessSpec:
    space: SampleSpace
    variables: tuple

    def __post_init__(self):
        variables = tuple(self.variables)
        if len(variables) < 2:
            raise ValueError("a process needs a horizon of at least 2")
        if any(y.space != self.space for y in variables):
            raise SpaceMismatch("process variables live on different spaces")
        object.__setattr__(self, "variables", variables)

    @property
    def horizon(self) -> int:
        return len(self.variables)

    def window(self, start: int, depth: int) -> tuple:
        """``(Y_start, ..., Y_{start+depth-1})`` with 1-based ``start``."""
        return self.variables[start - 1 : start - 1 + depth]


def orbit_process(theta: MapTable, xi: RandomVariable, horizon: int) -> ProcessSpec:
    """``Y_k = xi(theta^{k-1} .)`` for ``k = 1..horizon``."""
    variables = [xi]
    for _ in range(horizon - 1):
        variables.append(variables[-1].after(theta.image))
    return ProcessSpec(theta.space, tuple(variables))


@dataclass(frozen=True)
class CylinderEvent:
    """``{(Y_start, ..., Y_{start+depth-1}) in tuples}``."""

    start: int
    depth: int
    tuples: frozenset

    def __post_init__(self):
        tuples = frozenset(tuple(as_fraction(x) for x in t) for t in self.tuples)
        object.__setattr__(self, "tuples", tuples)
        if self.start < 1 or self.depth < 1:
            raise BadCylinder("cylinder start and depth must be positive")
        if any(len(t) != self.depth for t in tuples):
            raise BadCylinder(f"every tuple of a depth-{self.depth} cylinder must have {self.depth} entries")


def pushforward(mu: Capacity, proc: ProcessSpec, cylinder: CylinderEvent) -> Fraction:
    """``mu_Y(C) = mu(Y^{-1} C)``."""
    if mu.space != proc.space:
        raise SpaceMismatch("capacity and process live on different spaces")
    if cylinder.start + cylinder.depth - 1 > proc.horizon:
        raise BadCylinder(
            f"cylinder reaches index {cylinder.start + cylinder.depth - 1} beyond horizon {proc.horizon}"
        )
    window = proc.window(cylinder.start, cylinder.depth)
    return mu(tuple_preimage(window, cylinder.tuples))


class StationarityCheck(NamedTuple):
    stationary: bool
    witness: tuple | None  # (n, k, tuple-set A)
    first: Fraction | None  # mu((Y_n..Y_{n+k}) in A)
    second: Fraction | None  # mu((Y_{n+1}..Y_{n+1+k}) in A)


def stationarity_check(mu: Capacity, proc: ProcessSpec) -> StationarityCheck:
    """Compare every window with its one-step shift, ``n >= 1, k >= 0, n+1+k <= N``."""
    if mu.space != proc.space:
        raise SpaceMismatch("capacity and process live on different spaces")
    N = proc.horizon
    for n in range(1, N):
        for k in range(0, N - n):
            res = identically_distributed(mu, proc.window(n, k + 1), proc.window(n + 1, k + 1))
            if not res.identical:
                return StationarityCheck(False, (n, k, res.witness), res.first, res.second)
    return StationarityCheck(True, None, None, None)


@dataclass
class ShiftAudit:
    """Stationarity versus shift-invariance of the pushforward on cylinders.

    ``cylinder_witness`` is ``(m, H)``: depth-``m`` cylinder ``{(x_1..x_m) in H}``
    whose pushforward changes under the shift.  ``translated`` is the cylinder
    built from the stationarity witness ``(n, k, A)`` as
    ``H = {t attained : (t_n..t_{n+k}) in A}`` at depth ``n+k``; ``aligned``
    records that it fails shift-invariance with the same two values.
    """

    stationary: bool
    shift_invariant: bool
    stationarity_witness: tuple | None = None
    cylinder_witness: tuple | None = None
    translated: tuple | None = None
    aligned: bool | None = None
    cylinders_checked: int = 0

    @property
    def agree(self) -> bool:
        return self.stationary == self.shift_invariant


def shift_reduction_audit(mu: Capacity, proc: ProcessSpec) -> ShiftAudit:
    stat = stationarity_check(mu, proc)
    N = proc.horizon
    cyl_witness = None
    checked = 0
    for m in range(1, N):
        res = identically_distributed(mu, proc.window(1, m), proc.window(2, m))
        checked += 1 << len(attained_tuples(proc.window(1, m), proc.window(2, m)))
        if not res.identical:
            cyl_witness = (m, res.witness)
            break
    audit = ShiftAudit(stat.stationary, cyl_witness is None, stat.witness, cyl_witness, cylinders_checked=checked)
    if stat.witness is not None:
        n, k, a = stat.witness
        m = n + k
        first, second = proc.window(1, m), proc.window(2, m)
        wanted = set(a)
        h = tuple(t for t in attained_tuples(first, second) if t[n - 1 :] in wanted)
        base = mu(tuple_preimage(first, h))
        shifted = mu(tuple_preimage(second, h))
        audit.translated = (m, h)
        audit.aligned = base != shifted and base == stat.first and shifted == stat.second
    return audit


def ellsberg_space() -> SampleSpace:
    return SampleSpace(("red", "black"))


def ellsberg_priors(p_low, p_high) -> PriorSet:
    """The two extreme priors of the urn whose share of red lies in ``[p_low, p_high]``."""
    lo, hi = as_fraction(p_low), as_fraction(p_high)
    if not 0 <= lo <= hi <= 1:
        raise BadInterval(f"need 0 <= p_low <= p_high <= 1, got [{lo}, {hi}]")
    return PriorSet(ellsberg_space(), ((lo, 1 - lo), (hi, 1 - hi)))


def ellsberg_bounds(p_low, p_high) -> tuple[Fraction, Fraction]:
    """``(C_v(I_red), C_V(I_red))`` for the lower/upper probabilities of the urn."""
    ps = ellsberg_priors(p_low, p_high)
    red = RandomVariable.indicator(ps.space, 1)
    return choquet(from_priors(ps, "lower"), red), choquet(from_priors(ps, "upper"), red)


@dataclass(frozen=True)
class SimulationConfig:
    true_prior: Fraction
    sample_count: int
    seed: int
    report_points: tuple = ()
    bounds: tuple = (Fraction(3, 10), Fraction(7, 10))

    def __post_init__(self):
        object.__setattr__(self, "true_prior", as_fraction(self.true_prior))
        object.__setattr__(self, "bounds", tuple(as_fraction(b) for b in self.bounds))
        if not 0 <= self.true_prior <= 1:
            raise ValueError("true_prior must lie in [0, 1]")
        if self.sample_count < 1:
            raise ValueError("sample_count must be at least 1")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if any(not 1 <= n for n in self.report_points):
            raise ValueError("report points must be positive")


def default_report_points(sample_count: int) -> tuple:
    points = []
    n = 10
    while n < sample_count:
        points.append(n)
        n *= 10
    return tuple(points)


@dataclass
class SimulationReport:
    config: SimulationConfig
    series: tuple  # (n, number of reds among the first n draws, exact mean)
    lower: Fraction
    upper: Fraction

    @property
    def final_mean(self) -> Fraction:
        return self.series[-1][2]

    @property
    def deviation(self) -> Fraction:
        return abs(self.final_mean - self.config.true_prior)

    @property
    def inside_bounds(self) -> bool:
        return self.lower <= self.final_mean <= self.upper

    def lines(self) -> list[str]:
        cfg = self.config
        out = [
            "generator=numpy.PCG64/SeedSequence.spawn",
            f"seed={cfg.seed}",
            f"true_prior={cfg.true_prior}",
            f"sample_count={cfg.sample_count}",
            f"lower={self.lower}",
            f"upper={self.upper}",
            f"final_mean={self.final_mean}",
            f"final_mean_decimal={float(self.final_mean):.6f}",
            f"deviation={float(self.deviation):.6f}",
            f"inside_bounds={str(self.inside_bounds).lower()}",
            "series:",
            "n,mean",
        ]
        out += [f"{n},{float(mean):.6f}" for n, _, mean in self.series]
        return out

    def to_text(self) -> str:
        return "\n".join(self.lines()) + "\n"


_CHUNK = 1 << 20


def _count_reds(seed_seq: np.random.SeedSequence, draws: int, p: Fraction) -> int:
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    reds = 0
    left = draws
    while left:
        size = min(left, _CHUNK)
        # exact Bernoulli(p): uniform integer below the denominator compared with the numerator
        reds += int(np.count_nonzero(rng.integers(0, p.denominator, size=size) < p.numerator))
        left -= size
    return reds


def slln_monte_carlo(cfg: SimulationConfig, workers: int = 1) -> SimulationReport:
    """Empirical means of i.i.d. red draws at the report points and at the end."""
    points = sorted({n for n in cfg.report_points if n <= cfg.sample_count} | {cfg.sample_count})
    sizes = [b - a for a, b in zip([0] + points, points)]
    children = np.random.SeedSequence(cfg.seed).spawn(len(sizes))
    p = cfg.true_prior
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(_count_reds, children, sizes, [p] * len(sizes)))
    else:
        counts = [_count_reds(c, s, p) for c, s in zip(children, sizes)]
    series = []
    total = 0
    for n, c in zip(points, counts):
        total += c
        series.append((n, total, Fraction(total, n)))
    lower, upper = ellsberg_bounds(*cfg.bounds)
    return SimulationReport(cfg, tuple(series), lower, upper)


@dataclass
class OrbitSLLN:
    """Cycle-exact Birkhoff limit of an orbit process and its Choquet interval."""

    ergodic: bool
    constant: Fraction | None
    lower: Fraction  # integral of Y_1 against the conjugate (lower) capacity
    upper: Fraction  # integral of Y_1 against V
    concave: bool

    @property
    def inside(self) -> bool | None:
        if self.constant is None:
            return None
        return self.lower <= self.constant <= self.upper


def orbit_slln(V: Capacity, theta: MapTable, xi: RandomVariable) -> OrbitSLLN:
    """Limit of ``(1/n) sum_{k<n} Y_k`` for ``Y_k = xi o theta^k`` against ``V``."""
    report = ergodicity_classify(V, theta)
    g = orbit_average(theta, xi).as_variable(V.space)
    const = quasi_sure_constant(V, g).value
    return OrbitSLLN(report.ergodic, const, choquet(conjugate(V), xi), choquet(V, xi), classify(V).concave)


@dataclass
class BlockSLLNAudit:
    """Finite-horizon reading of the stationary + block-independent SLLN.

    Hypotheses are checked on the orbit process ``Y_k = xi o theta^{k-1}``
    up to ``horizon``; the conclusion is the cycle-exact orbit limit.
    """

    stationary: bool
    blocks_independent: bool
    failing_split: int | None
    result: OrbitSLLN

    @property
    def hypotheses(self) -> bool:
        return self.stationary and self.blocks_independent


def block_slln_audit(V: Capacity, theta: MapTable, xi: RandomVariable, horizon: int) -> BlockSLLNAudit:
    proc = orbit_process(theta, xi, horizon)
    stationary = stationarity_check(V, proc).stationary
    failing = None
    for split in range(1, horizon):
        if not block_independent(V, proc.variables, split).independent:
            failing = split
            break
    return BlockSLLNAudit(stationary, failing is None, failing, orbit_slln(V, theta, xi))
