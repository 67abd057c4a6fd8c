"""simfiber - Channel diagonalization with meta-fiber-connected and multi-layer SIMs."""

__version__ = "0.1.0"

from .baselines import svd_ideal_transceivers, zf_gain
from .channel import (
    LinkBudget,
    MultiLayerTopology,
    TwoLayerTopology,
    build_diffraction_matrix,
    build_rx_fiber_matrices,
    build_tx_fiber_matrices,
    sample_rayleigh_channel,
)
from .core import (
    ConfigurationError,
    ExperimentConfig,
    ExperimentKind,
    SimFiberError,
    load_config,
    load_config_file,
)
from .harness import ResultRecord, emit_results, read_results, run_experiment
from .metrics import ber_qpsk, capacity_exact, capacity_upper_bound, nmse
from .optimizer import (
    FitProblem,
    FitResult,
    PhaseState,
    SolverConfig,
    equivalent_channel,
    run_ao_2layer,
    run_ao_multilayer,
)

__all__ = [
    "ExperimentConfig",
    "ExperimentKind",
    "load_config",
    "load_config_file",
    "SimFiberError",
    "ConfigurationError",
    "TwoLayerTopology",
    "MultiLayerTopology",
    "LinkBudget",
    "build_tx_fiber_matrices",
    "build_rx_fiber_matrices",
    "build_diffraction_matrix",
    "sample_rayleigh_channel",
    "FitProblem",
    "FitResult",
    "PhaseState",
    "SolverConfig",
    "equivalent_channel",
    "run_ao_2layer",
    "run_ao_multilayer",
    "nmse",
    "capacity_exact",
    "capacity_upper_bound",
    "ber_qpsk",
    "svd_ideal_transceivers",
    "zf_gain",
    "run_experiment",
    "emit_results",
    "read_results",
    "ResultRecord",
]
