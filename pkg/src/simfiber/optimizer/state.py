"""Decision variables, problem description and solver settings."""

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..channel.fibers import build_rx_fiber_matrices, build_tx_fiber_matrices
from ..channel.topology import TwoLayerTopology
from ..core.exceptions import DimensionError
from ..core.types import Architecture, ComplexMatrix, RealVector

TWO_PI = 2.0 * math.pi


def wrap_phase(phases: RealVector) -> RealVector:
    """Map angles into [0, 2 pi)."""
    wrapped = np.mod(np.asarray(phases, dtype=np.float64), TWO_PI)
    wrapped[wrapped >= TWO_PI] = 0.0
    return wrapped


@dataclass(frozen=True, eq=False)
class PhaseState:
    """All meta-atom phases, ordered by unified layer index, plus the gain alpha.

    Phases are wrapped to [0, 2 pi) and stored as read-only arrays.
    """

    layer_phases: tuple[RealVector, ...]
    alpha: float = 1.0

    def __post_init__(self) -> None:
        layers = []
        for phases in self.layer_phases:
            arr = np.asarray(phases, dtype=np.float64)
            if arr.ndim != 1:
                raise DimensionError("layer phases must be vectors", shape=arr.shape)
            if not np.all(np.isfinite(arr)):
                raise ValueError("phases must be finite")
            wrapped = wrap_phase(arr)
            wrapped.flags.writeable = False
            layers.append(wrapped)
        if not math.isfinite(self.alpha):
            raise ValueError("alpha must be finite")
        object.__setattr__(self, "layer_phases", tuple(layers))
        object.__setattr__(self, "alpha", float(self.alpha))

    @property
    def layer_sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.layer_phases)

    def coefficients(self) -> list[ComplexMatrix]:
        """Unit-modulus transmission coefficients exp(j theta) per layer."""
        return [np.exp(1j * p) for p in self.layer_phases]

    def with_phase(self, layer: int, atom: int, value: float) -> "PhaseState":
        """Copy with one phase replaced; ``layer`` is 1-based."""
        layers = [p.copy() for p in self.layer_phases]
        layers[layer - 1][atom] = value
        return PhaseState(tuple(layers), self.alpha)

    def with_alpha(self, alpha: float) -> "PhaseState":
        return PhaseState(self.layer_phases, alpha)

    @classmethod
    def identity(cls, sizes: tuple[int, ...], alpha: float = 1.0) -> "PhaseState":
        """All phases zero (identity phase-shift matrices)."""
        return cls(tuple(np.zeros(q) for q in sizes), alpha)

    @classmethod
    def random(
        cls, sizes: tuple[int, ...], rng: np.random.Generator, alpha: float = 1.0
    ) -> "PhaseState":
        return cls(tuple(rng.uniform(0.0, TWO_PI, q) for q in sizes), alpha)


@dataclass(frozen=True, eq=False)
class FitProblem:
    """Matrix chain F_0 ... F_n of one link and the diagonal target.

    The end-to-end channel is F_n Phi_n F_{n-1} ... Phi_1 F_0 where Phi_p is
    the p-th phase layer; the first ``tx_layers`` phase layers belong to the
    transmitter and ``chain[tx_layers]`` is the radio channel G. The target is
    alpha * exp(j target_phase) * I_S.
    """

    chain: tuple[ComplexMatrix, ...]
    tx_layers: int
    architecture: Architecture
    target_phase: float = 0.0
    layer_sizes: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        chain = tuple(np.array(f, dtype=np.complex128) for f in self.chain)
        if len(chain) < 2:
            raise DimensionError("a chain needs at least two matrices")
        if any(f.ndim != 2 for f in chain):
            raise DimensionError("chain entries must be matrices")
        for index in range(1, len(chain)):
            if chain[index].shape[1] != chain[index - 1].shape[0]:
                raise DimensionError(
                    f"chain[{index}] has {chain[index].shape[1]} columns, "
                    f"expected {chain[index - 1].shape[0]}",
                    index=index,
                )
        if chain[-1].shape[0] != chain[0].shape[1]:
            raise DimensionError(
                "end-to-end channel is not square",
                rows=chain[-1].shape[0],
                cols=chain[0].shape[1],
            )
        if not 1 <= self.tx_layers < len(chain):
            raise DimensionError(
                "tx_layers outside the chain", tx_layers=self.tx_layers
            )
        for f in chain:
            f.flags.writeable = False
        object.__setattr__(self, "chain", chain)
        object.__setattr__(
            self, "layer_sizes", tuple(f.shape[0] for f in chain[:-1])
        )

    @property
    def streams(self) -> int:
        return self.chain[0].shape[1]

    @property
    def n_layers(self) -> int:
        return len(self.chain) - 1

    @property
    def rx_layers(self) -> int:
        return self.n_layers - self.tx_layers

    @property
    def channel(self) -> ComplexMatrix:
        return self.chain[self.tx_layers]

    def target(self, alpha: float) -> ComplexMatrix:
        scale = alpha * complex(
            math.cos(self.target_phase), math.sin(self.target_phase)
        )
        return scale * np.eye(self.streams, dtype=np.complex128)

    def check_state(self, state: PhaseState) -> None:
        if state.layer_sizes != self.layer_sizes:
            raise DimensionError(
                f"phase layers {state.layer_sizes} do not match {self.layer_sizes}"
            )

    def with_channel(self, channel: ComplexMatrix) -> "FitProblem":
        chain = list(self.chain)
        chain[self.tx_layers] = channel
        return FitProblem(
            tuple(chain), self.tx_layers, self.architecture, self.target_phase
        )

    @classmethod
    def two_layer(
        cls,
        topology: TwoLayerTopology,
        channel: ComplexMatrix,
        *,
        target_phase: float = 0.0,
    ) -> "FitProblem":
        """Chain W1, W2, G, U2, U1 with G of shape NS x MS."""
        w1, w2 = build_tx_fiber_matrices(topology)
        u2, u1 = build_rx_fiber_matrices(topology)
        return cls((w1, w2, channel, u2, u1), 2, Architecture.TWO_LAYER, target_phase)

    @classmethod
    def multi_layer(
        cls,
        tx_stack: tuple[ComplexMatrix, ...],
        channel: ComplexMatrix,
        rx_stack: tuple[ComplexMatrix, ...],
        *,
        target_phase: float = 0.0,
    ) -> "FitProblem":
        """Chain W^1..W^L, G, U^K..U^1; ``rx_stack`` is given as U^1..U^K."""
        chain = (*tx_stack, channel, *reversed(rx_stack))
        return cls(chain, len(tx_stack), Architecture.MULTI_LAYER, target_phase)


@dataclass(frozen=True)
class FitResult:
    """Solver output. Traces start with the value at the initial state."""

    state: PhaseState
    objective_trace: tuple[float, ...]
    nmse_trace: tuple[float, ...]
    iterations_used: int
    converged: bool

    @property
    def objective(self) -> float:
        return self.objective_trace[-1]

    @property
    def nmse(self) -> float:
        return self.nmse_trace[-1]


class SolverConfig(BaseModel):
    """AO settings.

    threshold_mode ``normalized`` applies the decrement test to J / (alpha^2 S),
    ``absolute`` to J. ``refresh="full"`` recomputes both cascades before every
    atom instead of once per layer.
    """

    model_config = ConfigDict(frozen=True)

    max_iterations: int = Field(default=20, ge=1)
    objective_decrement_threshold: float = Field(default=1e-14, ge=0)
    threshold_mode: Literal["normalized", "absolute"] = "normalized"
    initialization: Literal["identity", "random"] = "identity"
    update_order: Literal["ascending", "random"] = "ascending"
    refresh: Literal["incremental", "full"] = "incremental"
    seed: int = Field(default=0, ge=0)
