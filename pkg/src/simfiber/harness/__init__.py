"""Experiment harness for simfiber.

This subpackage assembles the library into reproducible experiments:
- Seeded Monte Carlo runners for every experiment kind
- Result records with CSV / JSON-lines persistence
- The ``simfiber`` command line
"""

from .experiments import (
    DEFAULT_SWEEPS,
    Fit,
    fit_problem,
    link_metrics,
    resolve_sweep_values,
    run_experiment,
)
from .records import (
    CSV_HEADER,
    ResultRecord,
    canonical_order,
    emit_results,
    read_results,
    write_results,
)

__all__ = [
    "run_experiment",
    "resolve_sweep_values",
    "fit_problem",
    "link_metrics",
    "Fit",
    "DEFAULT_SWEEPS",
    "ResultRecord",
    "CSV_HEADER",
    "canonical_order",
    "emit_results",
    "write_results",
    "read_results",
]
