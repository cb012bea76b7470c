"""Classical and quantum statistical complexity of the 1D Ising chain."""

from ._core import (
    CSV_HEADER,
    CheckResult,
    DomainError,
    FutureDistribution,
    InvalidInput,
    IsingParams,
    QuantumModel,
    SizeError,
    SweepRow,
    TmaxResult,
    TransitionMatrix,
    build_quantum_model,
    classical_fidelity,
    compute_row,
    exact_output_distribution,
    find_tmax,
    future_distribution,
    quantum_statistical_complexity,
    ring_conditional,
    simulate_classical,
    simulate_quantum,
    statistical_complexity,
    sweep,
    temperature_grid,
    transition_matrix,
    two_state_mixture_entropy,
    uniform_transition_matrix,
    verify,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
