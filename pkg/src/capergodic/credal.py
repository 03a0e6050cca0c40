"""The core of a lower probability and exact linear programming over it.

``core(v) = {P probability : P(A) >= v(A) for every event A}``.  Minimising a
linear functional over the core is solved exactly through the dual program

    maximise   sum_A v(A) y_A + t
    subject to sum_{A ∋ i} y_A + t <= w_i   (one row per point i)
               y >= 0, t free

which has one row per sample point and a feasible all-slack start once the
objective ``w`` is shifted to be nonnegative.  An unbounded dual means the
core is empty.  The primal minimiser is read off as the simplex multipliers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .capacity import Capacity, as_fraction, classify, conjugate
from .choquet import RandomVariable
from .errors import NotConvex, SpaceMismatch, SpaceTooLarge

MAX_VERTEX_POINTS = 8


class SimplexResult(NamedTuple):
    status: str  # "optimal" or "unbounded"
    value: Fraction | None
    x: tuple | None
    duals: tuple | None
    pivots: int


def simplex_max(c: Sequence, A: Sequence[Sequence], b: Sequence) -> SimplexResult:
    """Maximise ``c.x`` subject to ``A x <= b``, ``x >= 0`` with ``b >= 0``.

    Dense exact tableau with Bland's rule (smallest-index entering variable,
    smallest-index leaving variable among ratio ties), so it terminates
    without any tolerance.
    """
    c = [as_fraction(x) for x in c]
    b = [as_fraction(x) for x in b]
    m, nv = len(b), len(c)
    if any(x < 0 for x in b):
        raise ValueError("simplex_max needs a nonnegative right-hand side")
    width = nv + m
    rows = []
    for i in range(m):
        row = [as_fraction(x) for x in A[i]]
        if len(row) != nv:
            raise ValueError("constraint row length does not match objective")
        row += [Fraction(int(i == j)) for j in range(m)]
        row.append(b[i])
        rows.append(row)
    basis = [nv + i for i in range(m)]
    reduced = c + [Fraction(0)] * m
    pivots = 0
    while True:
        enter = next((j for j in range(width) if reduced[j] > 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                ratio = rows[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return SimplexResult("unbounded", None, None, None, pivots)
        prow = rows[leave]
        piv = prow[enter]
        if piv != 1:
            prow = [x / piv for x in prow]
            rows[leave] = prow
        for i in range(m):
            if i != leave:
                f = rows[i][enter]
                if f:
                    rows[i] = [x - f * y for x, y in zip(rows[i], prow)]
        f = reduced[enter]
        reduced = [x - f * y for x, y in zip(reduced, prow[:width])]
        basis[leave] = enter
        pivots += 1
    x = [Fraction(0)] * width
    for i, j in enumerate(basis):
        x[j] = rows[i][-1]
    value = sum((c[j] * x[j] for j in range(nv)), Fraction(0))
    duals = tuple(-reduced[nv + i] for i in range(m))
    return SimplexResult("optimal", value, tuple(x[:nv]), duals, pivots)


@dataclass(frozen=True)
class CorePolytope:
    """``{P : P(A) >= v(A) for nonempty proper A, sum P = 1, P >= 0}``."""

    lower: Capacity

    def inequalities(self) -> list[tuple[int, Fraction]]:
        full = self.lower.space.full
        return [(mask, self.lower(mask)) for mask in range(1, full)]

    @property
    def constraint_count(self) -> int:
        # 2^n - 2 inequalities plus the simplex equality
        return self.lower.space.n_events - 1


class LPResult(NamedTuple):
    optimum: Fraction | None
    argmin: tuple | None  # optimal probability vector (the maximiser for anticore_max)
    status: str  # "optimal" or "infeasible"


class Membership(NamedTuple):
    member: bool
    violated: int | None  # first event A (ascending mask) with P(A) < v(A)


def _vector(v: Capacity, p) -> tuple:
    p = tuple(as_fraction(x) for x in p)
    if len(p) != v.space.n:
        raise SpaceMismatch(f"vector has {len(p)} entries, space has {v.space.n} points")
    return p


def core_membership(v: Capacity, p: Sequence) -> Membership:
    p = _vector(v, p)
    if any(x < 0 for x in p) or sum(p) != 1:
        raise ValueError("not a probability vector")
    prob = Fraction(0)
    table = [Fraction(0)] * v.space.n_events
    for mask in range(1, v.space.n_events):
        low = mask & -mask
        table[mask] = prob = table[mask ^ low] + p[low.bit_length() - 1]
        if prob < v(mask):
            return Membership(False, mask)
    return Membership(True, None)


def core_optimize(v: Capacity, weights: Sequence, sense: str = "min") -> LPResult:
    """Minimise (or maximise) ``sum_i weights[i] P_i`` over ``core(v)``."""
    w = list(_vector(v, weights))
    if sense == "max":
        res = core_optimize(v, [-x for x in w], "min")
        if res.status != "optimal":
            return res
        return LPResult(-res.optimum, res.argmin, res.status)
    if sense != "min":
        raise ValueError("sense must be 'min' or 'max'")
    n = v.space.n
    shift = min(w)
    rhs = [x - shift for x in w]
    # constraints with v(A) <= 0 are implied by P >= 0; their dual columns never enter
    events = [mask for mask in range(1, v.space.full) if v(mask) > 0]
    cost = [v(mask) for mask in events] + [Fraction(1), Fraction(-1)]
    rows = []
    for i in range(n):
        bit = 1 << i
        rows.append([Fraction(int(bool(mask & bit))) for mask in events] + [Fraction(1), Fraction(-1)])
    res = simplex_max(cost, rows, rhs)
    if res.status != "optimal":
        return LPResult(None, None, "infeasible")
    p = res.duals
    optimum = res.value + shift
    assert sum(p) == 1 and all(x >= 0 for x in p), "simplex multipliers are not a probability"
    assert sum(x * y for x, y in zip(w, p)) == optimum, "duality gap in exact simplex"
    return LPResult(optimum, p, "optimal")


def core_min(v: Capacity, event: int) -> LPResult:
    """Exact ``min_{P in core(v)} P(event)``; status ``infeasible`` iff the core is empty."""
    n = v.space.n
    return core_optimize(v, [int(event >> i & 1) for i in range(n)], "min")


def anticore_max(mu: Capacity, xi: RandomVariable) -> LPResult:
    """``max E_a[xi]`` over additive ``a <= mu``; that set is the core of the conjugate."""
    if mu.space != xi.space:
        raise SpaceMismatch("capacity and random variable live on different spaces")
    return core_optimize(conjugate(mu), xi.values, "max")


def core_vertices_convex(v: Capacity) -> list[tuple]:
    """Marginal vectors of a convex ``v`` over all point orderings, deduplicated.

    For convex ``v`` these are exactly the extreme points of ``core(v)``.
    """
    n = v.space.n
    if n > MAX_VERTEX_POINTS:
        raise SpaceTooLarge(f"vertex enumeration is limited to {MAX_VERTEX_POINTS} points")
    if not classify(v).convex:
        raise NotConvex("marginal vectors only describe the core of a convex capacity")
    seen = {}
    for order in itertools.permutations(range(n)):
        p = [Fraction(0)] * n
        prefix = 0
        for i in order:
            p[i] = v(prefix | 1 << i) - v(prefix)
            prefix |= 1 << i
        seen.setdefault(tuple(p), None)
    return list(seen)


class ExactnessReport(NamedTuple):
    exact: bool
    nonempty: bool
    violations: tuple  # (event, v(event), core minimum) triples


def exactness_audit(v: Capacity) -> ExactnessReport:
    """Compare ``core_min(v, A)`` with ``v(A)`` on every event.

    Exactness is only guaranteed for lower probabilities generated by priors;
    for other set functions this reports what it finds.
    """
    violations = []
    for mask in range(v.space.n_events):
        res = core_min(v, mask)
        if res.status != "optimal":
            return ExactnessReport(False, False, ())
        if res.optimum != v(mask):
            violations.append((mask, v(mask), res.optimum))
    return ExactnessReport(not violations, True, tuple(violations))
