"""Experiment configuration for simfiber.

Defaults describe the reference link:
P_t = 20 dBm, N_0 = -110 dBm, S = 4, f_0 = 28 GHz, lambda = 10.7 mm, d = 150 m,
gamma = 3.5, M = N = 25 with ideal meta-fibers, a 7-layer conventional SIM with
W = U = 100 atoms at half-wavelength spacing, identity phase initialization,
alpha = 1 and 20 AO iterations.
"""

import math
import tomllib
from pathlib import Path
from typing import Any, Literal

from pydantic import Field, ValidationError, ValidationInfo, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .exceptions import ConfigurationError
from .types import CapacityFormula, ExperimentKind, OutputFormat, PathGainConvention

ThresholdMode = Literal["normalized", "absolute"]
InitializationPolicy = Literal["identity", "random"]
UpdateOrder = Literal["ascending", "random"]
SweepSide = Literal["both", "tx", "rx"]


class ExperimentConfig(BaseSettings):
    """Declarative description of one experiment.

    Loads from SIMFIBER_* environment variables (e.g. SIMFIBER_SEED,
    SIMFIBER_WORKERS) and can be overridden programmatically via constructor
    kwargs. Unknown keys are rejected.
    """

    kind: ExperimentKind = ExperimentKind.CONVERGENCE
    trials: int = Field(default=10, ge=1)
    seed: int = Field(default=0, ge=0)
    output: Path | None = None
    output_format: OutputFormat | None = None
    workers: int = Field(default=1, ge=1)
    record_timing: bool = False
    path_gain_convention: PathGainConvention = PathGainConvention.FREE_SPACE_GAIN
    capacity_formula: CapacityFormula = CapacityFormula.EQ37_CONSISTENT

    # link budget
    pt_dbm: float = 20.0
    n0_dbm: float = -110.0
    streams: int = Field(default=4, ge=1)
    carrier_hz: float = Field(default=28e9, gt=0)
    wavelength_m: float = Field(default=0.0107, gt=0)
    distance_m: float = Field(default=150.0, gt=0)
    path_loss_exponent: float = Field(default=3.5, gt=0)
    reference_gain: float | None = Field(default=None, gt=0)

    # meta-fiber 2-layer SIM
    m_atoms: int = Field(default=25, ge=1)
    n_atoms: int = Field(default=25, ge=1)
    rho1_mag: float = Field(default=1.0, gt=0)
    rho2_mag: float = Field(default=1.0, gt=0)
    psi1: float = 0.0
    psi2: float = 0.0

    # conventional multi-layer SIM
    tx_layers: int = Field(default=7, ge=1)
    rx_layers: int = Field(default=7, ge=1)
    tx_layer_atoms: int = Field(default=100, ge=1)
    rx_layer_atoms: int = Field(default=100, ge=1)
    atom_spacing_m: float | None = Field(default=None, gt=0)
    layer_spacing_m: float | None = Field(default=None, gt=0)
    atom_area_m2: float | None = Field(default=None, gt=0)

    # solver
    max_iterations: int = Field(default=20, ge=1)
    objective_decrement_threshold: float = Field(default=1e-14, ge=0)
    threshold_mode: ThresholdMode = "normalized"
    initialization: InitializationPolicy = "identity"
    update_order: UpdateOrder = "ascending"

    # per-layer energy attenuation
    attenuation_ratio: float = Field(default=0.0, ge=0, lt=1)

    # experiment grids
    sweep_values: list[float] | None = None
    # which SIM the sweep_atoms grid resizes; the other keeps m_atoms or n_atoms
    sweep_side: SweepSide = "both"
    heatmap_atoms: list[int] = Field(default_factory=lambda: [1, 4])
    ber_symbols: int = Field(default=100_000, ge=1)
    ber_block_size: int = Field(default=8192, ge=1)
    bench_atoms: list[int] = Field(default_factory=lambda: [8, 16, 32, 64])
    bench_streams: int = Field(default=2, ge=1)

    model_config = SettingsConfigDict(
        env_prefix="SIMFIBER_",
        extra="forbid",
        frozen=True,
    )

    @field_validator("tx_layer_atoms", "rx_layer_atoms")
    @classmethod
    def square_grid(cls, v: int, info: ValidationInfo) -> int:
        if math.isqrt(v) ** 2 != v:
            raise ValueError(
                f"{info.field_name} must be a perfect square (square atom grid)"
            )
        return v

    @field_validator("heatmap_atoms", "bench_atoms")
    @classmethod
    def positive_counts(cls, v: list[int], info: ValidationInfo) -> list[int]:
        if not v:
            raise ValueError(f"{info.field_name} cannot be empty")
        if any(count < 1 for count in v):
            raise ValueError(f"{info.field_name} entries must be >= 1")
        return v

    @field_validator("sweep_values")
    @classmethod
    def sweep_values_match_kind(
        cls, v: list[float] | None, info: ValidationInfo
    ) -> list[float] | None:
        if v is None:
            return v
        if not v:
            raise ValueError("sweep_values cannot be empty")
        kind = info.data.get("kind")
        if kind in (ExperimentKind.SWEEP_ATOMS, ExperimentKind.SWEEP_STREAMS):
            if any(x < 1 or x != int(x) for x in v):
                raise ValueError("sweep_values must be integers >= 1 for this kind")
        elif kind == ExperimentKind.SWEEP_ATTENUATION:
            if any(not 0 <= x < 1 for x in v):
                raise ValueError("attenuation ratios must lie in [0, 1)")
        elif kind in (ExperimentKind.SWEEP_DISTANCE, ExperimentKind.CAPACITY_COMPARE):
            if any(x <= 0 for x in v):
                raise ValueError("distances must be positive")
        return v


def load_config(**kwargs: object) -> ExperimentConfig:
    """Load configuration, converting Pydantic errors to ConfigurationError.

    Args:
        **kwargs: Override configuration values programmatically.

    Returns:
        ExperimentConfig instance.

    Raises:
        ConfigurationError: If configuration is invalid.
    """
    try:
        return ExperimentConfig(**kwargs)  # type: ignore[arg-type]
    except ValidationError as e:
        error = e.errors()[0]
        field_name = str(error["loc"][0]) if error["loc"] else "unknown"
        reason = error["msg"]
        raise ConfigurationError(field_name, reason) from e


def load_config_file(path: str | Path, **overrides: object) -> ExperimentConfig:
    """Load a flat TOML experiment description and apply overrides on top.

    Args:
        path: TOML file with one key per ExperimentConfig field.
        **overrides: Values that win over the file (e.g. CLI flags).

    Raises:
        ConfigurationError: If the file cannot be read or any value is invalid.
    """
    try:
        with open(path, "rb") as fh:
            data: dict[str, Any] = tomllib.load(fh)
    except OSError as e:
        raise ConfigurationError("config", f"cannot read {path}: {e}") from e
    except tomllib.TOMLDecodeError as e:
        raise ConfigurationError("config", f"invalid TOML in {path}: {e}") from e

    data.update({k: v for k, v in overrides.items() if v is not None})
    return load_config(**data)
