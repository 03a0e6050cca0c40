import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from capergodic import (
    Partition,
    RandomVariable,
    SampleSpace,
    additive,
    block_independent,
    classes_independent,
    events_independent,
    identically_distributed,
    rvs_independent,
    sigma_of,
    unanimity,
    zero_one_audit,
)
from capergodic.catalog import double_swap, five_point_threshold, three_point_lower
from capergodic.errors import BadSplit, LengthMismatch, SpaceMismatch

from strategies import capacities, random_variables, spaces

half = Fraction(1, 2)


@pytest.fixture(scope="module")
def five():
    doc = five_point_threshold()
    return doc.capacities["mu"], doc.process.variables


def all_sigma_events(partition):
    """Brute-force oracle: every union of blocks, via itertools."""
    out = set()
    for r in range(len(partition.blocks) + 1):
        for combo in itertools.combinations(partition.blocks, r):
            mask = 0
            for b in combo:
                mask |= b
            out.add(mask)
    return out


# --- generated sigma-algebras -------------------------------------------------------


def test_sigma_of_examples(five):
    _, ys = five
    assert sigma_of([ys[0]]).blocks == (0b00011, 0b11100)
    assert sigma_of(ys[:2]).blocks == (0b00001, 0b00010, 0b00100, 0b11000)
    space = ys[0].space
    assert sigma_of([RandomVariable.constant(space, 3)]).blocks == (space.full,)


def test_sigma_of_rejects_mixed_spaces():
    a = RandomVariable(SampleSpace.of_size(2), (0, 1))
    b = RandomVariable(SampleSpace.of_size(3), (0, 1, 1))
    with pytest.raises(SpaceMismatch):
        sigma_of([a, b])


def test_partition_validation():
    space = SampleSpace.of_size(3)
    with pytest.raises(ValueError):
        Partition(space, (0b011, 0b110))
    with pytest.raises(ValueError):
        Partition(space, (0b011,))


@given(spaces(1, 6).flatmap(lambda s: st.lists(random_variables(s), min_size=1, max_size=3)))
def test_sigma_of_measurability(rvs):
    p = sigma_of(rvs)
    # every variable is constant on each block, and distinct blocks differ in some variable
    for b in p.blocks:
        pts = [i for i in range(p.space.n) if b >> i & 1]
        assert all(len({y(i) for i in pts}) == 1 for y in rvs)
    keys = [tuple(y(next(i for i in range(p.space.n) if b >> i & 1)) for y in rvs) for b in p.blocks]
    assert len(set(keys)) == len(keys)
    assert set(p.events()) == all_sigma_events(p)


# --- events and classes ---------------------------------------------------------------


def test_events_independent_examples(five):
    mu, ys = five
    full = mu.space.full
    a = ys[0].where(lambda v: v == 0) | ys[1].where(lambda v: v == 0)
    b = ys[2].where(lambda v: v == 0) | ys[3].where(lambda v: v == 1)
    assert a & b == mu.space.event(["w2", "w4", "w5"])
    v = events_independent(mu, a, b)
    assert not v.independent and v.joint == 0 and v.product == 1
    assert events_independent(mu, full, b).independent
    assert events_independent(mu, 0, b).independent


@given(spaces(1, 4).flatmap(lambda s: st.tuples(capacities(s), st.integers(0, s.full), st.integers(0, s.full))))
def test_events_independent_symmetric(arg):
    mu, a, b = arg
    assert events_independent(mu, a, b).independent == events_independent(mu, b, a).independent


def test_threshold_variables_independent(five):
    mu, ys = five
    assert rvs_independent(mu, ys).independent
    classes = [sigma_of([y]).events() for y in ys]
    assert classes_independent(mu, classes).independent


def test_blocks_dependent(five):
    mu, ys = five
    v = block_independent(mu, ys, 2)
    assert not v.independent and v.joint == 0 and v.product == 1
    first, second = v.witness
    assert first in sigma_of(ys[:2]).events() and second in sigma_of(ys[2:]).events()
    classes = [sigma_of(ys[:2]).events(), sigma_of(ys[2:]).events()]
    assert not classes_independent(mu, classes).independent


def test_trivial_class_is_independent(five):
    mu, ys = five
    assert classes_independent(mu, [[mu.space.full], sigma_of(ys).events()]).independent


def test_split_bounds(five):
    mu, ys = five
    for bad in (0, 4):
        with pytest.raises(BadSplit):
            block_independent(mu, ys, bad)


def test_product_measure_blocks_independent():
    # points (a, b) of {0,1}^2, ordered 00, 01, 10, 11; independent coins with 1/3 and 1/4
    space = SampleSpace.of_size(4)
    p, q = Fraction(1, 3), Fraction(1, 4)
    mu = additive(space, ((1 - p) * (1 - q), (1 - p) * q, p * (1 - q), p * q))
    x = RandomVariable(space, (0, 0, 1, 1))
    y = RandomVariable(space, (0, 1, 0, 1))
    assert rvs_independent(mu, [x, y]).independent
    assert block_independent(mu, [x, y], 1).independent
    assert block_independent(mu, [x, x + x, y], 2).independent


@given(spaces(1, 5).flatmap(lambda s: st.tuples(st.integers(1, s.full), st.lists(random_variables(s), min_size=2, max_size=3))))
def test_unanimity_makes_everything_independent(arg):
    # u_S(A) = 1 iff S is inside A, so u_S(A & B) = u_S(A) u_S(B) for all events
    s_mask, rvs = arg
    mu = unanimity(rvs[0].space, s_mask)
    assert rvs_independent(mu, rvs).independent
    assert block_independent(mu, rvs, 1).independent


@given(spaces(1, 4).flatmap(lambda s: st.tuples(capacities(s), st.lists(random_variables(s, st.sampled_from((0, 1))), min_size=3, max_size=3))))
def test_independence_passes_to_sublists(arg):
    mu, rvs = arg
    if rvs_independent(mu, rvs).independent:
        for sub in itertools.combinations(rvs, 2):
            assert rvs_independent(mu, list(sub)).independent


@given(spaces(1, 4).flatmap(lambda s: st.tuples(capacities(s), st.lists(random_variables(s, st.sampled_from((0, 1))), min_size=2, max_size=3))))
def test_classes_independent_against_brute_force(arg):
    mu, rvs = arg
    classes = [sorted(all_sigma_events(sigma_of([y]))) for y in rvs]
    expected = all(
        mu(a & b & c) == mu(a) * mu(b) * mu(c)
        for sub in itertools.chain.from_iterable(
            itertools.combinations(range(len(classes)), k) for k in range(2, len(classes) + 1)
        )
        for picks in itertools.product(*(classes[t] for t in sub))
        for a, b, c in [tuple(picks) + (mu.space.full,) * (3 - len(picks))]
    )
    verdict = classes_independent(mu, classes)
    assert verdict.independent == expected
    if not expected:
        joint = mu.space.full
        for e in verdict.witness:
            joint &= e
        assert mu(joint) == verdict.joint != verdict.product


# --- identical distribution ---------------------------------------------------------


def test_identically_distributed_examples(five):
    mu, ys = five
    r = identically_distributed(mu, ys[:2], ys[2:])
    assert not r.identical
    assert set(r.witness) == {(0, 0), (0, 1), (1, 1)} and (r.first, r.second) == (0, 1)
    assert identically_distributed(mu, ys[:2], ys[:2]).identical
    for i, j in itertools.combinations(range(4), 2):
        assert identically_distributed(mu, [ys[i]], [ys[j]]).identical


def test_identically_distributed_length_mismatch(five):
    mu, ys = five
    with pytest.raises(LengthMismatch):
        identically_distributed(mu, ys[:2], ys[:1])


@given(spaces(1, 4).flatmap(lambda s: st.tuples(capacities(s), random_variables(s), random_variables(s))))
def test_identically_distributed_against_brute_force(arg):
    mu, x, y = arg
    values = sorted(set(x.values) | set(y.values))
    expected = all(
        mu(x.where(lambda v, a=a: v in a)) == mu(y.where(lambda v, a=a: v in a))
        for r in range(len(values) + 1)
        for a in map(set, itertools.combinations(values, r))
    )
    assert identically_distributed(mu, [x], [y]).identical == expected


# --- the 0-1 pivot --------------------------------------------------------------------


def test_zero_one_examples(five):
    mu, ys = five
    r = zero_one_audit(mu, Partition.trivial(mu.space))
    assert r.self_independent and r.holds
    r = zero_one_audit(mu, sigma_of([ys[0]]))
    assert mu(0b00011) == 0 and mu(0b11100) == 0
    assert r.self_independent and r.zero_one and r.complement_null and r.holds
    space = SampleSpace.of_size(2)
    r = zero_one_audit(additive(space, (half, half)), Partition(space, (1, 2)))
    assert not r.self_independent and r.zero_one is None and r.holds


def test_zero_one_conclusions_are_separate():
    doc = double_swap()
    halves = Partition(doc.space, (0b0011, 0b1100))
    # mu1 takes only 0-1 values, but the two halves both have capacity 1
    mu1 = doc.capacities["mu1"]
    assert all(mu1(a) in (0, 1) for a in halves.events())
    assert any(mu1(a) and mu1(doc.space.full ^ a) for a in halves.events())
    v = three_point_lower().capacities["v"]
    assert v(0b011) == half and v(0b100) == 0


@given(spaces(1, 5).flatmap(lambda s: st.tuples(capacities(s), st.randoms(use_true_random=False))))
def test_self_independence_forces_zero_one(arg):
    mu, rnd = arg
    n = mu.space.n
    labels = [rnd.randrange(n) for _ in range(n)]
    groups = {}
    for i, g in enumerate(labels):
        groups[g] = groups.get(g, 0) | 1 << i
    report = zero_one_audit(mu, Partition(mu.space, tuple(groups.values())))
    assert report.holds
    if report.self_independent:
        assert report.violations == ()


def test_self_independent_partition_exists_for_unanimity():
    space = SampleSpace.of_size(5)
    mu = unanimity(space, 0b00110)
    r = zero_one_audit(mu, Partition(space, (0b00011, 0b11100)))
    assert r.self_independent and r.holds
