"""System model for simfiber.

This subpackage builds every deterministic matrix of the link and samples
the stochastic channel:
- Topology and link-budget parameter models
- Meta-fiber coefficient matrices and single sub-area synthesis
- Rayleigh-Sommerfeld diffraction matrices for conventional stacks
- Path gain and Rayleigh channel sampling
"""

from .diffraction import (
    atom_grid,
    build_diffraction_matrix,
    build_diffraction_stack,
    diffraction_coefficients,
    port_positions,
)
from .fibers import (
    SubareaPhases,
    build_rx_fiber_matrices,
    build_tx_fiber_matrices,
    max_subarea_amplitude,
    subarea_output,
    synthesize_subarea_phases,
)
from .propagation import (
    dbm_to_watts,
    path_gain,
    reference_gain,
    sample_rayleigh_channel,
    watts_to_dbm,
)
from .topology import (
    LinkBudget,
    MetaAtomCount,
    MultiLayerTopology,
    TwoLayerTopology,
    count_meta_atoms,
)

__all__ = [
    "TwoLayerTopology",
    "MultiLayerTopology",
    "LinkBudget",
    "MetaAtomCount",
    "count_meta_atoms",
    "SubareaPhases",
    "max_subarea_amplitude",
    "synthesize_subarea_phases",
    "subarea_output",
    "build_tx_fiber_matrices",
    "build_rx_fiber_matrices",
    "atom_grid",
    "port_positions",
    "diffraction_coefficients",
    "build_diffraction_matrix",
    "build_diffraction_stack",
    "dbm_to_watts",
    "watts_to_dbm",
    "reference_gain",
    "path_gain",
    "sample_rayleigh_channel",
]
