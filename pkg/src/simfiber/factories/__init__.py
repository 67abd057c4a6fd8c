"""Factory functions for simfiber.

This subpackage turns an ExperimentConfig into ready-to-solve objects:
- Topologies and link budgets with per-point overrides
- FitProblems with a freshly drawn channel and optional attenuation
- SolverConfig from the configured AO settings
"""

from .problems import (
    attenuate_problem,
    build_multi_layer_problem,
    build_two_layer_problem,
    link_budget,
    multi_layer_topology,
    solver_config,
    two_layer_topology,
)

__all__ = [
    "two_layer_topology",
    "multi_layer_topology",
    "link_budget",
    "solver_config",
    "attenuate_problem",
    "build_two_layer_problem",
    "build_multi_layer_problem",
]
