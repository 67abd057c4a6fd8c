"""Core modules for simfiber.

This subpackage contains the pieces every other subpackage builds on:
- Experiment configuration loading and validation
- Exception hierarchy
- Array aliases and enumerations
"""

from .config import ExperimentConfig, load_config, load_config_file
from .exceptions import (
    AmplitudeRangeError,
    ConfigurationError,
    DegenerateGeometryError,
    DimensionError,
    LayerIndexError,
    RankDeficiencyError,
    ResultsIOError,
    SimFiberError,
    SingularChannelError,
    SingularMatrixError,
    ZeroGainError,
)
from .types import (
    Architecture,
    CapacityFormula,
    ComplexMatrix,
    ExperimentKind,
    OutputFormat,
    PathGainConvention,
    RealVector,
    Side,
)

__all__ = [
    "ExperimentConfig",
    "load_config",
    "load_config_file",
    "SimFiberError",
    "ConfigurationError",
    "DimensionError",
    "LayerIndexError",
    "AmplitudeRangeError",
    "DegenerateGeometryError",
    "RankDeficiencyError",
    "SingularChannelError",
    "SingularMatrixError",
    "ZeroGainError",
    "ResultsIOError",
    "ComplexMatrix",
    "RealVector",
    "PathGainConvention",
    "CapacityFormula",
    "Side",
    "Architecture",
    "ExperimentKind",
    "OutputFormat",
]
