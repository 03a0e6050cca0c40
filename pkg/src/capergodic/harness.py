"""Random instance generators, theorem audits and the counterexample searcher.

Every instance is drawn from its own ``random.Random`` seeded by the text
``"{seed}:{mode}:{n}:{index}"``, so any single instance can be rebuilt from
the audit configuration and its index alone, independently of the others.

Invariant instances are built structure first: draw a map, find its cycles,
then put priors on the cycles.  Two recipes are mixed:

* cycle-uniform priors and mixtures of them, each prior itself invariant;
* the orbit ``{P, P o theta^-1, P o theta^-2, ...}`` of one prior on the
  cycles.  The upper envelope of the orbit is invariant although its members
  are not, which keeps the audits from relying on strong invariance.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .capacity import (
    Capacity,
    Distortion,
    PriorSet,
    SampleSpace,
    classify,
    conjugate,
    from_distortion,
    from_priors,
)
from .catalog import double_swap, five_point_threshold, three_point_lower
from .choquet import RandomVariable, choquet
from .credal import exactness_audit
from .dynamics import (
    MapTable,
    cycles,
    ergodicity_classify,
    invariant_structure,
    invariant_variable,
    is_invariant_capacity,
    orbit_average,
    quasi_sure_constant,
)
from .independence import block_independent, rvs_independent
from .processes import ProcessSpec
from .specfile import SpecDocument, dump

MODES = ("random-priors", "random-distortion", "monotone-repair", "invariant")
THEOREMS = ("zero-one-bounds", "recurrence", "invariant-constant", "birkhoff")
TARGETS = (
    "weak-ergodic-not-ergodic",
    "cond-ii-not-cond-i",
    "independent-vars-dependent-blocks",
    "superadditive-conjugate-not-subadditive",
    "recurrence-separation",
)

GRID = (Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(-2), Fraction(1, 2))
EXHAUSTIVE_ATOMS = 4
SAMPLED_VARIABLES = 64
AUDIT_MAX_POINTS = 12
DENOMINATOR = 6


@dataclass(frozen=True)
class GeneratorConfig:
    n: int
    mode: str = "random-priors"
    k: int = 2
    seed: int = 0
    count: int = 100

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown generation mode {self.mode!r}; choose from {', '.join(MODES)}")
        if not 1 <= self.n <= AUDIT_MAX_POINTS:
            raise ValueError(f"space size must lie in 1..{AUDIT_MAX_POINTS}")
        if self.k < 1 or self.count < 0:
            raise ValueError("need k >= 1 priors and a nonnegative count")

    def rng(self, index: int) -> random.Random:
        return random.Random(f"{self.seed}:{self.mode}:{self.n}:{index}")


@dataclass
class Instance:
    """One generated instance: a capacity with a map and a variable on the same space.

    ``priors`` is set when the capacity is the upper envelope of those priors;
    ``lower`` then holds the matching lower probability.
    """

    index: int
    capacity: Capacity
    theta: MapTable
    xi: RandomVariable
    priors: PriorSet | None = None
    lower: Capacity | None = None

    @property
    def space(self) -> SampleSpace:
        return self.capacity.space

    def document(self) -> SpecDocument:
        doc = SpecDocument(self.space, capacities={"mu": self.capacity}, maps={"theta": self.theta}, rvs={"xi": self.xi})
        if self.priors is not None:
            doc.priors["mu"] = self.priors
        return doc


def random_prior(rng: random.Random, n: int, support=None) -> tuple:
    """Rational probability vector with small integer weights on ``support``."""
    support = list(range(n)) if support is None else list(support)
    weights = [0] * n
    for i in support:
        weights[i] = rng.randint(0, 4)
    if not any(weights):
        weights[rng.choice(support)] = 1
    total = sum(weights)
    return tuple(Fraction(w, total) for w in weights)


def random_map(rng: random.Random, space: SampleSpace) -> MapTable:
    return MapTable(space, tuple(rng.randrange(space.n) for _ in range(space.n)))


def random_variable(rng: random.Random, space: SampleSpace) -> RandomVariable:
    return RandomVariable(space, tuple(rng.choice(GRID) for _ in range(space.n)))


def random_distortion(rng: random.Random) -> Distortion:
    d = DENOMINATOR
    xs = sorted(rng.sample(range(1, d), rng.randint(0, d - 1)))
    ys = sorted(rng.randint(0, d) for _ in xs)
    points = [(0, 0)] + [(Fraction(x, d), Fraction(y, d)) for x, y in zip(xs, ys)] + [(1, 1)]
    return Distortion(tuple(points))


def monotone_repair(rng: random.Random, space: SampleSpace) -> Capacity:
    """Random table, closed upward by ``v(A) = max(v(A), v(A - {i}))``, then rescaled to ``v(full) = 1``."""
    d = DENOMINATOR
    values = [Fraction(rng.randint(0, d), d) for _ in range(space.n_events)]
    values[0] = Fraction(0)
    for mask in range(1, space.n_events):
        m = mask
        while m:
            low = m & -m
            if values[mask ^ low] > values[mask]:
                values[mask] = values[mask ^ low]
            m ^= low
    top = values[space.full]
    if top == 0:
        values[space.full] = Fraction(1)
    else:
        values = [v / top for v in values]
    return Capacity(space, values)


def invariant_priors(rng: random.Random, theta: MapTable) -> PriorSet:
    """Priors on the cycles of ``theta`` whose upper envelope is invariant.

    Half of the draws confine every prior to a single cycle so that ergodic
    instances are common.
    """
    space = theta.space
    cyc = cycles(theta)
    if rng.random() < 0.5:
        cyc = [rng.choice(cyc)]
    if rng.random() < 0.5:
        uniform = []
        for c in cyc:
            uniform.append([Fraction(1, len(c)) if i in c else Fraction(0) for i in range(space.n)])
        priors = set()
        for _ in range(rng.randint(1, 3)):
            weights = random_prior(rng, len(uniform))
            priors.add(tuple(sum((w * u[i] for w, u in zip(weights, uniform)), Fraction(0)) for i in range(space.n)))
        return PriorSet(space, tuple(sorted(priors)))
    p = random_prior(rng, space.n, support=[i for c in cyc for i in c])
    orbit = []
    while p not in orbit:
        orbit.append(p)
        pushed = [Fraction(0)] * space.n
        for i, mass in enumerate(p):
            pushed[theta.image[i]] += mass
        p = tuple(pushed)
    return PriorSet(space, tuple(orbit))


def _instance(cfg: GeneratorConfig, index: int, n: int | None = None) -> Instance:
    rng = cfg.rng(index)
    n = cfg.n if n is None else n
    space = SampleSpace.of_size(n)
    if cfg.mode == "invariant":
        theta = random_map(rng, space)
        ps = invariant_priors(rng, theta)
        upper = from_priors(ps, "upper")
        return Instance(index, upper, theta, random_variable(rng, space), ps, conjugate(upper))
    if cfg.mode == "random-priors":
        ps = PriorSet(space, tuple(random_prior(rng, n) for _ in range(cfg.k)))
        upper = from_priors(ps, "upper")
        capacity, lower = upper, conjugate(upper)
    elif cfg.mode == "random-distortion":
        ps, lower = None, None
        capacity = from_distortion(random_prior(rng, n), random_distortion(rng), space)
    else:
        ps, lower = None, None
        capacity = monotone_repair(rng, space)
    return Instance(index, capacity, random_map(rng, space), random_variable(rng, space), ps, lower)


def generate(cfg: GeneratorConfig) -> Iterator[Instance]:
    """``cfg.count`` instances on exactly ``cfg.n`` points, deterministic per seed."""
    for index in range(cfg.count):
        yield _instance(cfg, index)


def generate_invariant(seed: int, n: int, count: int) -> Iterator[Instance]:
    """Invariant upper probabilities on 1..n points (sizes drawn per instance)."""
    cfg = GeneratorConfig(n, "invariant", seed=seed, count=count)
    for index in range(count):
        size = random.Random(f"{seed}:size:{n}:{index}").randint(1, n)
        yield _instance(cfg, index, size)


# --- audits -----------------------------------------------------------------


@dataclass
class Failure:
    index: int | None
    message: str
    witness: str  # the instance as spec-file text


@dataclass
class AuditOutcome:
    theorem: str
    instances: int = 0
    passes: int = 0
    skips: int = 0
    failures: list = field(default_factory=list)
    notes: Counter = field(default_factory=Counter)
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: "AuditOutcome") -> None:
        self.instances += other.instances
        self.passes += other.passes
        self.skips += other.skips
        self.failures.extend(other.failures)
        self.notes.update(other.notes)

    def lines(self) -> list[str]:
        out = [
            f"theorem={self.theorem}",
            f"seed={self.seed}",
            f"instances={self.instances}",
            f"passes={self.passes}",
            f"skips={self.skips}",
            f"failures={len(self.failures)}",
        ]
        out += [f"note.{key}={self.notes[key]}" for key in sorted(self.notes)]
        out += [f"failure.{f.index}={f.message}" for f in self.failures]
        return out


def _outcome(theorem, *, passed=None, skipped=None, message="", doc=None, notes=None, index=None) -> AuditOutcome:
    out = AuditOutcome(theorem, instances=1)
    if notes:
        out.notes.update(notes)
    if skipped:
        out.skips = 1
        out.notes[f"skip:{skipped}"] += 1
    elif passed:
        out.passes = 1
    else:
        out.failures.append(Failure(index, message, dump(doc) if doc is not None else ""))
    return out


def _doc(mu, theta, xi=None, priors=None) -> SpecDocument:
    doc = SpecDocument(mu.space, capacities={"mu": mu}, maps={"theta": theta})
    if xi is not None:
        doc.rvs["xi"] = xi
    if priors is not None:
        doc.priors["mu"] = priors
    return doc


def _measurable_variables(structure, rng: random.Random | None) -> list[RandomVariable]:
    """Invariant variables: the whole grid for few atoms, else indicators plus a grid sample."""
    k = len(structure.atoms)
    if k <= EXHAUSTIVE_ATOMS:
        return [invariant_variable(structure, vals) for vals in itertools.product(GRID, repeat=k)]
    space = structure.space
    out = [RandomVariable.indicator(space, b) for b in structure.sets]
    rng = rng or random.Random(0)
    for _ in range(SAMPLED_VARIABLES):
        out.append(invariant_variable(structure, [rng.choice(GRID) for _ in range(k)]))
    return out


def _require_upper(V: Capacity, priors: PriorSet | None) -> str | None:
    """Reason the upper-probability hypothesis fails, or None."""
    if priors is not None:
        return None if from_priors(priors, "upper") == V else "capacity is not the upper envelope of its priors"
    # an upper probability is exactly a capacity whose conjugate is exact
    return None if exactness_audit(conjugate(V)).exact else "capacity is not an upper probability"


def _require_invariant_upper(V, theta, priors):
    reason = _require_upper(V, priors)
    if reason:
        return reason
    if not is_invariant_capacity(V, theta).invariant:
        return "capacity is not invariant"
    return None


def audit_zero_one_bounds(mu: Capacity, theta: MapTable, *, rng=None, index=None) -> AuditOutcome:
    """Quasi-sure bounds by the integrals when ``mu`` is 0-1 valued on invariant sets.

    For invariant ``xi`` (built from invariant atoms):
    ``mu(xi >= C_mu(xi)) = 1`` and ``mu(xi <= C_conj(xi)) = 1``; when ``mu`` is
    closed under intersection of full sets on the invariant sets, also
    ``mu(C_mu(xi) <= xi <= C_conj(xi)) = 1``.  For general ``xi`` the orbit
    limit (liminf = limsup on a finite space) is tested the same way.
    """
    name = "zero-one-bounds"
    structure = invariant_structure(theta)
    if any(mu(b) not in (0, 1) for b in structure.sets):
        return _outcome(name, skipped="mu(G) not in {0,1}")
    full = [b for b in structure.sets if mu(b) == 1]
    closed = all(mu(a & b) == 1 for a in full for b in full)
    bar = conjugate(mu)
    rng = rng or random.Random(0)
    tested = _measurable_variables(structure, rng)
    tested += [orbit_average(theta, random_variable(rng, mu.space)).as_variable(mu.space) for _ in range(8)]
    notes = Counter(variables=len(tested), two_sided=len(tested) if closed else 0)
    for xi in tested:
        lo, hi = choquet(mu, xi), choquet(bar, xi)
        problems = []
        if mu(xi.where(lambda x: x >= lo)) != 1:
            problems.append(f"mu(xi >= {lo}) != 1")
        if mu(xi.where(lambda x: x <= hi)) != 1:
            problems.append(f"mu(xi <= {hi}) != 1")
        if closed and mu(xi.where(lambda x: lo <= x <= hi)) != 1:
            problems.append(f"mu({lo} <= xi <= {hi}) != 1")
        if problems:
            return _outcome(name, message="; ".join(problems), doc=_doc(mu, theta, xi), notes=notes, index=index)
    return _outcome(name, passed=True, notes=notes)


@dataclass
class RecurrenceStatements:
    """The four equivalent statements, each with its first counterexample set(s)."""

    ergodic: bool  # (i)
    quasi_invariant_trivial: bool  # (ii) V(theta^-1 B ^ B) = 0 implies V(B) = 0 or V(B^c) = 0
    sweeping: bool  # (iii) V(A) > 0 implies the union of theta^-n A, n >= 1, has null complement
    recurrent: bool  # (iv) V(A), V(B) > 0 implies V(theta^-n A & B) > 0 for some n >= 1
    witness_i: int | None = None
    witness_ii: int | None = None
    witness_iii: int | None = None
    witness_iv: tuple | None = None

    def values(self) -> tuple:
        return (self.ergodic, self.quasi_invariant_trivial, self.sweeping, self.recurrent)

    @property
    def equivalent(self) -> bool:
        return len(set(self.values())) == 1


def recurrence_statements(V: Capacity, theta: MapTable) -> RecurrenceStatements:
    """Evaluate all four statements by exhaustive scans."""
    space = V.space
    full = space.full
    pre = theta.preimage_table()
    report = ergodicity_classify(V, theta)
    w_i = report.witness_i if report.witness_i is not None else report.witness_ii

    w_ii = None
    for b in range(space.n_events):
        if V(pre[b] ^ b) == 0 and V(b) != 0 and V(full ^ b) != 0:
            w_ii = b
            break

    positive = [a for a in range(1, space.n_events) if V(a) > 0]
    w_iii = w_iv = None
    for a in positive:
        # theta^-n A for n >= 1 until the sequence repeats (at most 2^n distinct sets)
        seen = []
        s = pre[a]
        while s not in seen:
            seen.append(s)
            s = pre[s]
        union = 0
        for s in seen:
            union |= s
        if w_iii is None and V(full ^ union) != 0:
            w_iii = a
        if w_iv is None:
            for b in positive:
                if all(V(s & b) == 0 for s in seen):
                    w_iv = (a, b)
                    break
        if w_iii is not None and w_iv is not None:
            break
    return RecurrenceStatements(report.ergodic, w_ii is None, w_iii is None, w_iv is None, w_i, w_ii, w_iii, w_iv)


def audit_recurrence_equivalences(V: Capacity, theta: MapTable, priors: PriorSet | None = None, *, index=None) -> AuditOutcome:
    name = "recurrence"
    reason = _require_invariant_upper(V, theta, priors)
    if reason:
        return _outcome(name, skipped=reason)
    st = recurrence_statements(V, theta)
    notes = Counter({"all_true" if st.ergodic else "all_false": int(st.equivalent)})
    if st.equivalent:
        return _outcome(name, passed=True, notes=notes)
    message = "statements (i)-(iv) disagree: " + " ".join(str(v).lower() for v in st.values())
    return _outcome(name, message=message, doc=_doc(V, theta, priors=priors), index=index)


def audit_invariant_constant(V: Capacity, theta: MapTable, priors: PriorSet | None = None, *, rng=None, index=None) -> AuditOutcome:
    """Ergodic exactly when every invariant variable is constant quasi-surely."""
    name = "invariant-constant"
    reason = _require_invariant_upper(V, theta, priors)
    if reason:
        return _outcome(name, skipped=reason)
    structure = invariant_structure(theta)
    ergodic = ergodicity_classify(V, theta, structure).ergodic
    bad = None
    for xi in _measurable_variables(structure, rng):
        if quasi_sure_constant(V, xi).value is None:
            bad = xi
            break
    if ergodic and bad is not None:
        return _outcome(name, message="ergodic but an invariant variable is not constant quasi-surely",
                        doc=_doc(V, theta, bad, priors), index=index)
    if not ergodic and bad is None:
        return _outcome(name, message="not ergodic yet every tested invariant variable is constant quasi-surely",
                        doc=_doc(V, theta, None, priors), index=index)
    return _outcome(name, passed=True, notes=Counter(ergodic=int(ergodic)))


def audit_birkhoff(V: Capacity, theta: MapTable, xi: RandomVariable, priors: PriorSet | None = None, *, rng=None, index=None) -> AuditOutcome:
    """Ergodic exactly when Cesàro limits are constant quasi-surely; interval clause for concave ``V``.

    Tested variables: ``xi`` itself, indicators of invariant sets and a few
    random grid variables.  The interval clause uses concavity only.
    """
    name = "birkhoff"
    reason = _require_invariant_upper(V, theta, priors)
    if reason:
        return _outcome(name, skipped=reason)
    space = V.space
    structure = invariant_structure(theta)
    ergodic = ergodicity_classify(V, theta, structure).ergodic
    concave = classify(V).concave
    lower = conjugate(V)
    rng = rng or random.Random(0)
    tested = [xi] + [RandomVariable.indicator(space, b) for b in structure.sets]
    tested += [random_variable(rng, space) for _ in range(4)]
    notes = Counter()
    all_constant = True
    for eta in tested:
        g = orbit_average(theta, eta).as_variable(space)
        c = quasi_sure_constant(V, g).value
        if c is None:
            all_constant = False
            if ergodic:
                return _outcome(name, message="ergodic but the orbit limit is not constant quasi-surely",
                                doc=_doc(V, theta, eta, priors), index=index)
            continue
        if ergodic and concave:
            lo, hi = choquet(lower, eta), choquet(V, eta)
            notes["interval_checked"] += 1
            if not lo <= c <= hi:
                return _outcome(name, message=f"orbit constant {c} outside [{lo}, {hi}]",
                                doc=_doc(V, theta, eta, priors), index=index)
        elif ergodic:
            notes["interval_skipped_not_concave"] += 1
    if not ergodic and all_constant:
        return _outcome(name, message="not ergodic yet every tested orbit limit is constant quasi-surely",
                        doc=_doc(V, theta, xi, priors), index=index)
    notes["ergodic"] += int(ergodic)
    notes["concave_ergodic"] += int(ergodic and concave)
    return _outcome(name, passed=True, notes=notes)


def _audit_instance(theorem: str, inst: Instance, rng: random.Random) -> AuditOutcome:
    if theorem == "zero-one-bounds":
        # alternate between the upper envelope and its conjugate
        mu = inst.capacity if inst.index % 2 == 0 else inst.lower
        return audit_zero_one_bounds(mu, inst.theta, rng=rng, index=inst.index)
    if theorem == "recurrence":
        return audit_recurrence_equivalences(inst.capacity, inst.theta, inst.priors, index=inst.index)
    if theorem == "invariant-constant":
        return audit_invariant_constant(inst.capacity, inst.theta, inst.priors, rng=rng, index=inst.index)
    if theorem == "birkhoff":
        return audit_birkhoff(inst.capacity, inst.theta, inst.xi, inst.priors, rng=rng, index=inst.index)
    raise ValueError(f"unknown theorem {theorem!r}; choose from {', '.join(THEOREMS)}")


def run_audit(theorem: str, n: int = 6, count: int = 1000, seed: int = 0) -> AuditOutcome:
    """Audit ``theorem`` on ``count`` invariant instances with 1..n points."""
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r}; choose from {', '.join(THEOREMS)}")
    total = AuditOutcome(theorem, seed=seed)
    for inst in generate_invariant(seed, n, count):
        rng = random.Random(f"{seed}:{theorem}:{inst.index}")
        total.merge(_audit_instance(theorem, inst, rng))
    return total


# --- counterexample search --------------------------------------------------


def _first(doc: SpecDocument, registry: str, name: str | None):
    table = getattr(doc, registry)
    if name is not None:
        return table[name]
    if not table:
        raise KeyError(f"document has no {registry}")
    return next(iter(table.values()))


def accepts(target: str, doc: SpecDocument, capacity: str | None = None, map_name: str | None = None) -> bool:
    """Evaluate a search target's predicate on a document."""
    mu = _first(doc, "capacities", capacity)
    if target in ("weak-ergodic-not-ergodic", "cond-ii-not-cond-i"):
        theta = _first(doc, "maps", map_name)
        if not is_invariant_capacity(mu, theta).invariant:
            return False
        r = ergodicity_classify(mu, theta)
        if target == "weak-ergodic-not-ergodic":
            return r.cond_i and not r.cond_ii
        return r.cond_ii and not r.cond_i
    if target == "independent-vars-dependent-blocks":
        if doc.process is None or doc.process.horizon < 2:
            return False
        ys = doc.process.variables
        if not rvs_independent(mu, ys).independent:
            return False
        return any(not block_independent(mu, ys, s).independent for s in range(1, len(ys)))
    if target == "superadditive-conjugate-not-subadditive":
        return classify(mu).superadditive and not classify(conjugate(mu)).subadditive
    if target == "recurrence-separation":
        theta = _first(doc, "maps", map_name)
        if _require_invariant_upper(mu, theta, doc.priors.get(capacity) if capacity else None):
            return False
        return not recurrence_statements(mu, theta).equivalent
    raise ValueError(f"unknown target {target!r}; choose from {', '.join(TARGETS)}")


def pinned_witness(target: str) -> tuple | None:
    """``(document, capacity name)`` of the hand-built witness for ``target``, if any."""
    if target == "weak-ergodic-not-ergodic":
        return double_swap(), "mu2"
    if target == "cond-ii-not-cond-i":
        return three_point_lower(), "v"
    if target in ("independent-vars-dependent-blocks", "superadditive-conjugate-not-subadditive"):
        return five_point_threshold(), "mu"
    if target == "recurrence-separation":
        return None
    raise ValueError(f"unknown target {target!r}; choose from {', '.join(TARGETS)}")


@dataclass
class Witness:
    target: str
    index: int
    document: SpecDocument

    @property
    def text(self) -> str:
        return dump(self.document)


def _binary_variables(rng: random.Random, space: SampleSpace, count: int) -> tuple:
    out = []
    while len(out) < count:
        bits = tuple(rng.randint(0, 1) for _ in range(space.n))
        if 0 < sum(bits) < space.n:
            out.append(RandomVariable(space, bits))
    return tuple(out)


def _candidate(target: str, rng: random.Random) -> SpecDocument:
    if target == "independent-vars-dependent-blocks":
        space = SampleSpace.of_size(rng.randint(3, 5))
        if rng.random() < 0.5:
            mu = from_distortion(random_prior(rng, space.n), random_distortion(rng), space)
        else:
            mu = monotone_repair(rng, space)
        ys = _binary_variables(rng, space, rng.randint(2, 4))
        doc = SpecDocument(space, capacities={"mu": mu})
        doc.process = ProcessSpec(space, ys)
        return doc
    if target == "superadditive-conjugate-not-subadditive":
        space = SampleSpace.of_size(rng.randint(2, 5))
        mode = rng.randrange(3)
        if mode == 0:
            mu = monotone_repair(rng, space)
        elif mode == 1:
            mu = from_distortion(random_prior(rng, space.n), random_distortion(rng), space)
        else:
            ps = PriorSet(space, tuple(random_prior(rng, space.n) for _ in range(rng.randint(1, 4))))
            mu = from_priors(ps, "lower")
        return SpecDocument(space, capacities={"mu": mu})
    # dynamical targets: invariant prior envelopes, upper or lower
    space = SampleSpace.of_size(rng.randint(2, 5))
    theta = random_map(rng, space)
    ps = invariant_priors(rng, theta)
    side = "upper" if target == "recurrence-separation" or rng.random() < 0.5 else "lower"
    doc = SpecDocument(space, capacities={"mu": from_priors(ps, side)}, maps={"theta": theta})
    doc.priors["mu"] = ps
    return doc


def search_counterexample(target: str, budget: int = 10_000, seed: int = 0) -> Witness | None:
    """First generated instance accepted by ``target`` that differs from the pinned witness."""
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}; choose from {', '.join(TARGETS)}")
    pinned = pinned_witness(target)
    for index in range(budget):
        rng = random.Random(f"{seed}:{target}:{index}")
        doc = _candidate(target, rng)
        if target == "recurrence-separation":
            ok = accepts(target, doc, "mu")
        else:
            ok = accepts(target, doc)
        if not ok:
            continue
        if pinned is not None and _same_instance(doc, pinned[0], pinned[1]):
            continue
        return Witness(target, index, doc)
    return None


def _same_instance(doc: SpecDocument, pinned: SpecDocument, name: str) -> bool:
    if doc.space != pinned.space:
        return False
    if next(iter(doc.capacities.values())) != pinned.capacities[name]:
        return False
    if doc.maps and pinned.maps:
        return next(iter(doc.maps.values())) == next(iter(pinned.maps.values()))
    return doc.process == pinned.process
