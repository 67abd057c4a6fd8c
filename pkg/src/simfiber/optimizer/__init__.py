"""Channel-fitting solver for simfiber.

This subpackage contains the alternating-optimization solver:
- PhaseState, FitProblem, FitResult and SolverConfig
- Chain assembly (precoder, combiner, objective) and cascade factorization
- Closed-form phase and gain updates
- AO loops for the 2-layer and the multi-layer SIM
"""

from .ao import run_ao, run_ao_2layer, run_ao_multilayer
from .chain import (
    assemble_combiner,
    assemble_precoder,
    cascades,
    cascades_2layer,
    cascades_multilayer,
    chain_product,
    equivalent_channel,
    objective,
)
from .state import FitProblem, FitResult, PhaseState, SolverConfig, wrap_phase
from .updates import (
    alpha_update,
    best_phase,
    layer_objective_coefficients,
    phase_update_closed_form,
)

__all__ = [
    "PhaseState",
    "FitProblem",
    "FitResult",
    "SolverConfig",
    "wrap_phase",
    "chain_product",
    "equivalent_channel",
    "assemble_precoder",
    "assemble_combiner",
    "objective",
    "cascades",
    "cascades_2layer",
    "cascades_multilayer",
    "best_phase",
    "layer_objective_coefficients",
    "phase_update_closed_form",
    "alpha_update",
    "run_ao",
    "run_ao_2layer",
    "run_ao_multilayer",
]
