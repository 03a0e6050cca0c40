"""Exact computations with capacities (non-additive probabilities) on finite spaces.

Capacities are stored as full tables of ``Fraction`` values indexed by event
bitmasks; every numerical answer is exact.
"""

from .capacity import (
    Capacity,
    ClassificationReport,
    Distortion,
    PriorSet,
    SampleSpace,
    additive,
    classify,
    conjugate,
    from_distortion,
    from_priors,
    mixture,
    symmetric,
    unanimity,
    validate,
)
from .choquet import (
    RandomVariable,
    asymmetry_check,
    choquet,
    choquet_integral,
    comonotone,
    sublinearity_check,
    upper_expectation_check,
)
from .credal import (
    CorePolytope,
    anticore_max,
    core_membership,
    core_min,
    core_optimize,
    core_vertices_convex,
    exactness_audit,
)
from .dynamics import (
    MapTable,
    cesaro_average,
    choquet_invariance_check,
    conjugate_invariance_check,
    cycles,
    ergodicity_classify,
    invariant_structure,
    invariant_variable,
    is_invariant_capacity,
    orbit,
    orbit_average,
    preimage,
    quasi_sure_constant,
    visit_frequency_capacity,
)
from .errors import *  # noqa: F401,F403
from .independence import (
    Partition,
    block_independent,
    classes_independent,
    events_independent,
    identically_distributed,
    rvs_independent,
    sigma_of,
    zero_one_audit,
)
from .processes import (
    CylinderEvent,
    ProcessSpec,
    SimulationConfig,
    block_slln_audit,
    ellsberg_bounds,
    ellsberg_priors,
    orbit_process,
    orbit_slln,
    pushforward,
    shift_reduction_audit,
    slln_monte_carlo,
    stationarity_check,
)
from .specfile import ParseError, SpecDocument, ValidationError, dump, load, parse

__version__ = "0.1.0"
