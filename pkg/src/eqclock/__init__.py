"""Exact simulator and numerical certifier for the entangled-clock
phase-estimation readout of proper-time differences."""

__version__ = "0.1.0"

from .baseline import (
    BaselineRun,
    baseline_estimate,
    psi_plus_probability,
    run_baseline,
)
from .effective_state import (
    AmplitudeVector,
    Basis,
    ClockScenario,
    PhaseFraction,
    RegisterConfig,
    fourier_basis_state,
    outcome_amplitude,
    outcome_amplitudes,
    prepare_final_state,
)
from .estimation import (
    EstimationReport,
    OutcomeDistribution,
    ToleranceSpec,
    amplitude_bound,
    distribution,
    estimate,
    gamma_for_confidence,
    sample,
    tail_probability_bound,
    tail_probability_exact,
    wrapped_index_distance,
)
from .physical_oracle import (
    LeakageError,
    PhysicalState,
    evolve_physical,
    prepare_physical,
    project_to_tilde,
    reduction_deviation,
)
from .qft import (
    DenseUnitary,
    GateCircuit,
    Method,
    build_inverse_qft_circuit,
    build_qft_circuit,
    inverse_qft_apply,
    qft_apply,
    qft_dense,
)

__all__ = [
    "__version__",
    "AmplitudeVector",
    "Basis",
    "BaselineRun",
    "ClockScenario",
    "DenseUnitary",
    "EstimationReport",
    "GateCircuit",
    "LeakageError",
    "Method",
    "OutcomeDistribution",
    "PhaseFraction",
    "PhysicalState",
    "RegisterConfig",
    "ToleranceSpec",
    "amplitude_bound",
    "baseline_estimate",
    "build_inverse_qft_circuit",
    "build_qft_circuit",
    "distribution",
    "estimate",
    "evolve_physical",
    "fourier_basis_state",
    "gamma_for_confidence",
    "inverse_qft_apply",
    "outcome_amplitude",
    "outcome_amplitudes",
    "prepare_final_state",
    "prepare_physical",
    "project_to_tilde",
    "psi_plus_probability",
    "qft_apply",
    "qft_dense",
    "reduction_deviation",
    "run_baseline",
    "sample",
    "tail_probability_bound",
    "tail_probability_exact",
    "wrapped_index_distance",
]
