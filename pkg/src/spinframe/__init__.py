"""Singlet spin correlations from SU(2) spin frames, exactly and by Monte Carlo."""

from .correlation import (
    ConditionalTable,
    CorrelationValue,
    InequalityReport,
    JointTable,
    bell_original,
    conditional_distribution,
    expected_correlation,
    joint_distribution,
    quantum_correlation,
    wigner_from_probabilities,
    wigner_inequality,
)
from .rng import GENERATOR_ID, RngStream
from .samplers import (
    CorrelationEstimate,
    Counts,
    LhvStrategy,
    MeasurementSettings,
    TrialOutcome,
    bell_experiment,
    enumerate_lhv_strategies,
    envelope_demo,
    estimate_correlation,
    estimate_lhv_correlation,
    sample_lhv_vector_model,
    sample_singlet_pair,
    sweep_theta,
)
from .su2_core import (
    DOWN,
    UP,
    Direction,
    DomainError,
    Spinor,
    UnitaryOp,
    decompose,
    inner_product,
    ray_equivalent,
    rotation,
    spin_state,
    transition_probability,
)

__version__ = "0.1.0"
