"""Shared array aliases and enumerations."""

from enum import StrEnum

import numpy as np
import numpy.typing as npt

ComplexMatrix = npt.NDArray[np.complex128]
"""Dense complex matrix; the carrier for channels, coefficient matrices, cascades."""

RealVector = npt.NDArray[np.float64]


class PathGainConvention(StrEnum):
    """How the reference path gain of the Rayleigh channel is interpreted."""

    PAPER_LITERAL = "paper_literal"
    FREE_SPACE_GAIN = "free_space_gain"


class CapacityFormula(StrEnum):
    """Which capacity expression is evaluated for an imperfectly fitted channel."""

    EQ37_CONSISTENT = "eq37_consistent"
    EQ38_LITERAL = "eq38_literal"


class Side(StrEnum):
    TX = "tx"
    RX = "rx"


class Architecture(StrEnum):
    """Transceiver families that produce records."""

    TWO_LAYER = "two_layer"
    MULTI_LAYER = "multi_layer"
    SVD_IDEAL = "svd_ideal"
    ZERO_FORCING = "zero_forcing"


class ExperimentKind(StrEnum):
    CONVERGENCE = "convergence"
    HEATMAP = "heatmap"
    SWEEP_ATOMS = "sweep_atoms"
    SWEEP_STREAMS = "sweep_streams"
    SWEEP_DISTANCE = "sweep_distance"
    SWEEP_ATTENUATION = "sweep_attenuation"
    CAPACITY_COMPARE = "capacity_compare"
    BER_CURVE = "ber_curve"
    SCALING_BENCH = "scaling_bench"


class OutputFormat(StrEnum):
    CSV = "csv"
    JSON_LINES = "jsonl"
