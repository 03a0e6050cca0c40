from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from capergodic import (
    MapTable,
    PriorSet,
    RandomVariable,
    SampleSpace,
    additive,
    cesaro_average,
    choquet_invariance_check,
    classify,
    conjugate_invariance_check,
    cycles,
    ergodicity_classify,
    from_priors,
    invariant_structure,
    invariant_variable,
    is_invariant_capacity,
    mixture,
    orbit,
    orbit_average,
    preimage,
    quasi_sure_constant,
    visit_frequency_capacity,
)
from capergodic.catalog import double_swap, three_point_lower
from capergodic.errors import NotInvariant, SpaceMismatch
from capergodic.harness import invariant_priors

from strategies import capacities, maps, random_variables, spaces

half = Fraction(1, 2)


def components(theta):
    """Invariant atoms via undirected connectivity of the functional graph."""
    n = theta.space.n
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in enumerate(theta.image):
        parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups[find(i)] = groups.get(find(i), 0) | 1 << i
    return sorted(groups.values())


@st.composite
def invariant_instances(draw, max_n=4):
    space = draw(spaces(1, max_n))
    theta = draw(maps(space))
    import random

    ps = invariant_priors(random.Random(draw(st.integers(0, 10 ** 6))), theta)
    return from_priors(ps, draw(st.sampled_from(["upper", "lower"]))), theta


# --- preimages and invariant sets ------------------------------------------------


def test_preimage_examples():
    theta = double_swap().maps["theta"]
    assert preimage(theta, 0b0001) == 0b0010
    assert preimage(theta, 0b1111) == 0b1111
    const = MapTable(SampleSpace.of_size(3), (0, 0, 0))
    assert preimage(const, 0b001) == 0b111
    with pytest.raises(SpaceMismatch):
        preimage(const, 0b1000)


@given(spaces(1, 5).flatmap(maps))
def test_preimage_table_matches_definition(theta):
    table = theta.preimage_table()
    for a in range(theta.space.n_events):
        assert table[a] == preimage(theta, a)


def test_invariant_sets_of_examples():
    s = invariant_structure(double_swap().maps["theta"])
    assert s.sets == (0, 0b0011, 0b1100, 0b1111)
    s3 = invariant_structure(three_point_lower().maps["theta"])
    assert set(s3.sets) == {0, 0b011, 0b100, 0b111}


def test_identity_all_sets_invariant():
    s = invariant_structure(MapTable.identity(SampleSpace.of_size(4)))
    assert len(s.sets) == 16 and len(s.atoms) == 4


@given(spaces(1, 6).flatmap(maps))
def test_invariant_structure_against_components(theta):
    s = invariant_structure(theta)
    assert sorted(s.atoms) == components(theta)
    full = theta.space.full
    sets = set(s.sets)
    assert all(full ^ b in sets for b in sets)
    assert all(a | b in sets for a in sets for b in sets)
    assert sorted(s.atom_unions()) == sorted(sets)


# --- invariance of capacities -------------------------------------------------------


def test_examples_are_invariant():
    doc = double_swap()
    for name in ("mu1", "mu2"):
        assert is_invariant_capacity(doc.capacities[name], doc.maps["theta"]).invariant
    t = three_point_lower()
    assert is_invariant_capacity(t.capacities["v"], t.maps["theta"]).invariant


def test_point_mass_moves():
    space = SampleSpace.of_size(2)
    r = is_invariant_capacity(additive(space, (1, 0)), MapTable(space, (1, 0)))
    assert not r.invariant and r.witness == 0b01


def test_conjugate_invariance_examples():
    doc = double_swap()
    for mu in doc.capacities.values():
        assert conjugate_invariance_check(mu, doc.maps["theta"])


@given(spaces(1, 4).flatmap(lambda s: st.tuples(capacities(s), maps(s))))
def test_conjugate_invariance_random(pair):
    mu, theta = pair
    assert conjugate_invariance_check(mu, theta)


@given(invariant_instances())
def test_generated_instances_are_invariant(pair):
    mu, theta = pair
    assert is_invariant_capacity(mu, theta).invariant
    assert conjugate_invariance_check(mu, theta)


@given(invariant_instances(), st.fractions(0, 1))
def test_invariant_family_is_convex(pair, w):
    mu, theta = pair
    other = visit_frequency_capacity(theta, 0)
    assert is_invariant_capacity(mixture(mu, other, w), theta).invariant


# --- visit frequencies --------------------------------------------------------------


def test_visit_frequency_examples():
    space = SampleSpace.of_size(3)
    third = Fraction(1, 3)
    assert visit_frequency_capacity(MapTable(space, (1, 2, 0)), 0) == additive(space, (third, third, third))
    two = SampleSpace.of_size(2)
    assert visit_frequency_capacity(MapTable(two, (1, 1)), 0) == additive(two, (0, 1))
    assert visit_frequency_capacity(MapTable.identity(space), 2) == additive(space, (0, 0, 1))


@given(spaces(1, 6).flatmap(lambda s: st.tuples(maps(s), st.integers(0, s.n - 1))))
def test_visit_frequency_against_simulation(pair):
    theta, start = pair
    mu = visit_frequency_capacity(theta, start)
    assert classify(mu).additive and is_invariant_capacity(mu, theta).invariant
    # long simulation window that starts after the transient
    n = theta.space.n
    steps = 720  # multiple of every possible period up to 6
    point = theta.iterate(start, n)
    counts = [0] * n
    for _ in range(steps):
        counts[point] += 1
        point = theta(point)
    assert [mu(1 << i) for i in range(n)] == [Fraction(c, steps) for c in counts]


# --- Choquet invariance ---------------------------------------------------------------


def test_choquet_invariance_example():
    doc = double_swap()
    xi = RandomVariable(doc.space, (1, 2, 3, 4))
    r = choquet_invariance_check(doc.capacities["mu2"], doc.maps["theta"], xi)
    assert r.holds and r.shifted == r.original


def test_choquet_invariance_needs_invariance():
    space = SampleSpace.of_size(2)
    with pytest.raises(NotInvariant):
        choquet_invariance_check(additive(space, (1, 0)), MapTable(space, (1, 0)), RandomVariable(space, (1, 2)))


@given(invariant_instances().flatmap(lambda p: st.tuples(st.just(p), random_variables(p[0].space))))
def test_choquet_invariance_property(arg):
    (mu, theta), xi = arg
    assert choquet_invariance_check(mu, theta, xi).holds


# --- ergodicity ------------------------------------------------------------------------


def test_double_swap_classification():
    doc = double_swap()
    for name in ("mu1", "mu2"):
        r = ergodicity_classify(doc.capacities[name], doc.maps["theta"])
        assert r.cond_i and not r.cond_ii and r.weak_ergodic and not r.ergodic
        assert r.witness_ii == 0b0011 and r.invariant


def test_three_point_classification():
    doc = three_point_lower()
    r = ergodicity_classify(doc.capacities["v"], doc.maps["theta"])
    assert r.cond_ii and not r.cond_i and r.values == (0, half, 1)


def test_one_point_is_ergodic():
    space = SampleSpace.of_size(1)
    assert ergodicity_classify(additive(space, (1,)), MapTable.identity(space)).ergodic


@given(invariant_instances())
def test_ergodic_implies_weak(pair):
    r = ergodicity_classify(*pair)
    assert r.weak_ergodic or not r.ergodic


@given(invariant_instances())
def test_upper_probability_ergodicity_is_condition_ii(pair):
    mu, theta = pair
    full = mu.space.full
    # only upper envelopes qualify: V(A) + V(A^c) >= 1 everywhere
    if all(mu(a) + mu(full ^ a) >= 1 for a in range(mu.space.n_events)):
        r = ergodicity_classify(mu, theta)
        assert r.ergodic == r.cond_ii


# --- orbit averages ---------------------------------------------------------------------


def test_orbit_average_examples():
    space = SampleSpace.of_size(3)
    avg = orbit_average(MapTable(space, (1, 2, 0)), RandomVariable(space, (0, 3, 6)))
    assert avg.limits == (3, 3, 3)
    xi = RandomVariable(space, (5, -1, half))
    assert orbit_average(MapTable.identity(space), xi).limits == xi.values
    doc = double_swap()
    got = orbit_average(doc.maps["theta"], doc.rvs["xi"])
    assert got.limits == (Fraction(3, 2), Fraction(3, 2), 6, 6) and got.period == (2, 2, 2, 2)


@given(spaces(1, 6).flatmap(lambda s: st.tuples(maps(s), random_variables(s))))
def test_orbit_average_against_direct_iteration(pair):
    theta, xi = pair
    avg = orbit_average(theta, xi)
    g = avg.as_variable(theta.space)
    for i in range(theta.space.n):
        tail, period = avg.tail_start[i], avg.period[i]
        start = theta.iterate(i, tail)
        assert cesaro_average(theta, xi, start, period * 7) == avg.limits[i]
        # shift consistency: g(theta w) = g(w)
        assert g(theta(i)) == g(i)
        # the average over N steps from i approaches the limit at rate tail/N
        n_steps = 60 * period
        drift = abs(cesaro_average(theta, xi, i, n_steps) - avg.limits[i])
        bound = Fraction(2 * tail * max(abs(v) for v in xi.values) if tail else 0, n_steps)
        assert drift <= bound


def test_orbit_and_cycles():
    theta = MapTable(SampleSpace.of_size(5), (1, 2, 1, 4, 3))
    o = orbit(theta, 0)
    assert o.tail_start == 1 and o.period == 2 and set(o.cycle) == {1, 2}
    assert cycles(theta) == [(1, 2), (3, 4)]


# --- quasi-sure constants ------------------------------------------------------------------


def test_quasi_sure_constant_examples():
    doc = double_swap()
    mu2 = doc.capacities["mu2"]
    assert quasi_sure_constant(mu2, RandomVariable.constant(doc.space, 7)) == (7, 0)
    assert quasi_sure_constant(mu2, RandomVariable(doc.space, (1, 1, 2, 2))).value is None
    space = SampleSpace.of_size(3)
    V = from_priors(PriorSet(space, ((0, 1, 0),)), "upper")
    assert quasi_sure_constant(V, RandomVariable(space, (4, 9, -1))).value == 9


def test_invariant_variable_builder():
    s = invariant_structure(double_swap().maps["theta"])
    assert invariant_variable(s, (1, 2)).values == (1, 1, 2, 2)
    with pytest.raises(ValueError):
        invariant_variable(s, (1,))
