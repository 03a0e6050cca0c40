import itertools
from fractions import Fraction

import pytest

from capergodic import (
    MapTable,
    PriorSet,
    RandomVariable,
    SampleSpace,
    choquet,
    classify,
    conjugate,
    dump,
    ergodicity_classify,
    from_priors,
    is_invariant_capacity,
    orbit_average,
    parse,
    quasi_sure_constant,
    validate,
)
from capergodic.catalog import double_swap
from capergodic.harness import (
    TARGETS,
    THEOREMS,
    GeneratorConfig,
    accepts,
    audit_birkhoff,
    audit_invariant_constant,
    audit_recurrence_equivalences,
    audit_zero_one_bounds,
    generate,
    generate_invariant,
    pinned_witness,
    recurrence_statements,
    run_audit,
    search_counterexample,
)

half = Fraction(1, 2)


# --- generators ---------------------------------------------------------------------


def test_random_priors_give_valid_lower_probabilities():
    for inst in generate(GeneratorConfig(3, "random-priors", k=2, seed=11, count=50)):
        validate(inst.space, dict(enumerate(inst.lower.values)))
        assert inst.lower == from_priors(inst.priors, "lower")


def test_single_prior_is_additive():
    for inst in generate(GeneratorConfig(4, "random-priors", k=1, seed=2, count=50)):
        assert classify(inst.capacity).additive


def test_monotone_repair_always_valid():
    for seed in range(10_000):
        inst = next(generate(GeneratorConfig(3, "monotone-repair", seed=seed, count=1)))
        validate(inst.space, dict(enumerate(inst.capacity.values)))


def test_distortions_are_valid():
    for inst in generate(GeneratorConfig(5, "random-distortion", seed=4, count=200)):
        validate(inst.space, dict(enumerate(inst.capacity.values)))


def test_generation_is_deterministic():
    cfg = GeneratorConfig(4, "random-priors", k=3, seed=9, count=20)
    first = [inst.document() for inst in generate(cfg)]
    assert [dump(d) for d in first] == [dump(inst.document()) for inst in generate(cfg)]
    other = [dump(inst.document()) for inst in generate(GeneratorConfig(4, "random-priors", k=3, seed=10, count=20))]
    assert other != [dump(d) for d in first]


def test_invariant_generator_contract():
    for inst in generate_invariant(3, 6, 300):
        assert is_invariant_capacity(inst.capacity, inst.theta).invariant
        assert inst.capacity == from_priors(inst.priors, "upper")
        assert inst.lower == conjugate(inst.capacity)


def test_config_validation():
    with pytest.raises(ValueError):
        GeneratorConfig(13)
    with pytest.raises(ValueError):
        GeneratorConfig(3, mode="nonsense")
    with pytest.raises(ValueError):
        GeneratorConfig(3, k=0)


def test_generated_documents_round_trip():
    for inst in generate(GeneratorConfig(4, "random-priors", k=2, seed=1, count=10)):
        doc = inst.document()
        assert parse(dump(doc)) == doc


# --- audits on hand-built instances ----------------------------------------------------


def test_zero_one_bounds_examples():
    doc = double_swap()
    mu2, theta = doc.capacities["mu2"], doc.maps["theta"]
    xi = RandomVariable(doc.space, (1, 1, 2, 2))
    assert choquet(mu2, xi) == 2 and choquet(conjugate(mu2), xi) == 1
    assert mu2(xi.where(lambda x: x >= 2)) == 1 and mu2(xi.where(lambda x: x <= 1)) == 1
    out = audit_zero_one_bounds(mu2, theta)
    assert out.passes == 1 and out.notes["two_sided"] == 0
    # constant variable only: identity on one point
    one = SampleSpace.of_size(1)
    assert audit_zero_one_bounds(from_priors(PriorSet(one, ((1,),)), "upper"), MapTable.identity(one)).ok


def test_zero_one_bounds_skips_without_hypothesis():
    space = SampleSpace.of_size(2)
    mu = from_priors(PriorSet(space, ((half, half),)), "upper")
    out = audit_zero_one_bounds(mu, MapTable.identity(space))
    assert out.skips == 1 and out.passes == 0 and out.ok


def test_recurrence_statements_examples():
    doc = double_swap()
    st = recurrence_statements(doc.capacities["mu2"], doc.maps["theta"])
    assert st.values() == (False, False, False, False)
    assert st.witness_ii is not None and st.witness_iii is not None and st.witness_iv is not None
    one = SampleSpace.of_size(1)
    V = from_priors(PriorSet(one, ((1,),)), "upper")
    assert recurrence_statements(V, MapTable.identity(one)).values() == (True,) * 4
    assert audit_recurrence_equivalences(doc.capacities["mu2"], doc.maps["theta"], doc.priors["mu2"]).passes == 1


def test_recurrence_skips_non_upper_probability():
    doc = double_swap()
    v = conjugate(doc.capacities["mu2"])
    out = audit_recurrence_equivalences(v, doc.maps["theta"])
    assert out.skips == 1


def test_invariant_constant_examples():
    space = SampleSpace.of_size(2)
    V = from_priors(PriorSet(space, ((1, 0), (0, 1))), "upper")
    identity = MapTable.identity(space)
    assert quasi_sure_constant(V, RandomVariable(space, (0, 1))).value is None
    assert not ergodicity_classify(V, identity).ergodic
    assert audit_invariant_constant(V, identity).passes == 1
    cyc = SampleSpace.of_size(3)
    U = from_priors(PriorSet(cyc, ((Fraction(1, 3),) * 3,)), "upper")
    out = audit_invariant_constant(U, MapTable(cyc, (1, 2, 0)))
    assert out.passes == 1 and out.notes["ergodic"] == 1


def test_birkhoff_examples():
    space = SampleSpace.of_size(4)
    theta = MapTable(space, (1, 2, 3, 0))
    # every prior with two masses of 1/2: the envelope min(1, |A|/2) is concave and symmetric
    pairs = [tuple(half if i in pair else 0 for i in range(4)) for pair in itertools.combinations(range(4), 2)]
    V = from_priors(PriorSet(space, tuple(pairs)), "upper")
    assert classify(V).concave and V(0b0111) == 1 and V(0b0001) == half
    xi = RandomVariable(space, (0, 1, 2, 3))
    assert orbit_average(theta, xi).limits == (Fraction(3, 2),) * 4
    assert choquet(conjugate(V), xi) <= Fraction(3, 2) <= choquet(V, xi)
    out = audit_birkhoff(V, theta, xi)
    assert out.passes == 1 and out.notes["interval_checked"] > 0

    doc = double_swap()
    xi2 = RandomVariable(doc.space, (1, 1, 5, 5))
    g = orbit_average(doc.maps["theta"], xi2)
    assert g.limits == (1, 1, 5, 5)
    assert quasi_sure_constant(doc.capacities["mu2"], g.as_variable(doc.space)).value is None
    assert audit_birkhoff(doc.capacities["mu2"], doc.maps["theta"], xi2, doc.priors["mu2"]).passes == 1

    const = RandomVariable.constant(space, 7)
    assert audit_birkhoff(V, theta, const).passes == 1


def test_birkhoff_interval_uses_concavity_only():
    # the orbit recipe gives an invariant envelope whose priors are not invariant
    space = SampleSpace.of_size(2)
    theta = MapTable(space, (1, 0))
    ps = PriorSet(space, ((1, 0), (0, 1)))
    V = from_priors(ps, "upper")
    assert is_invariant_capacity(V, theta).invariant
    assert audit_birkhoff(V, theta, RandomVariable(space, (0, 4)), ps).passes == 1


# --- sweeps ---------------------------------------------------------------------------


@pytest.mark.parametrize("theorem", THEOREMS)
def test_small_sweeps_pass(theorem):
    out = run_audit(theorem, n=5, count=150, seed=1)
    assert out.ok, out.lines()
    assert out.instances == 150 and out.passes + out.skips == 150


def test_audits_are_reproducible():
    a = run_audit("birkhoff", n=5, count=60, seed=3)
    b = run_audit("birkhoff", n=5, count=60, seed=3)
    assert a.lines() == b.lines()


def test_unknown_theorem():
    with pytest.raises(ValueError):
        run_audit("nonsense")


# --- searches -------------------------------------------------------------------------


@pytest.mark.parametrize("target", [t for t in TARGETS if t != "recurrence-separation"])
def test_pinned_witnesses_are_accepted(target):
    doc, name = pinned_witness(target)
    assert accepts(target, doc, name)


@pytest.mark.parametrize(
    "target", ["weak-ergodic-not-ergodic", "cond-ii-not-cond-i", "independent-vars-dependent-blocks"]
)
def test_search_finds_fresh_witness(target):
    w = search_counterexample(target, budget=2000, seed=0)
    assert w is not None
    assert accepts(target, w.document)
    assert accepts(target, parse(w.text))
    pinned, name = pinned_witness(target)
    assert w.document.capacities["mu"] != pinned.capacities[name] or w.document.space != pinned.space


def test_search_is_deterministic():
    a = search_counterexample("cond-ii-not-cond-i", budget=2000, seed=4)
    b = search_counterexample("cond-ii-not-cond-i", budget=2000, seed=4)
    assert a.index == b.index and a.text == b.text


def test_recurrence_separation_stays_null():
    assert pinned_witness("recurrence-separation") is None
    assert search_counterexample("recurrence-separation", budget=300, seed=0) is None


def test_unknown_target():
    with pytest.raises(ValueError):
        search_counterexample("nonsense", budget=1)
