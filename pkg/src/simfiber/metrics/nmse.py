"""Fitting-quality measures of the equivalent channel."""

import math

import numpy as np

from ..core.exceptions import ZeroGainError
from ..core.types import ComplexMatrix


def nmse(H: ComplexMatrix, alpha: float, streams: int | None = None) -> float:
    """||H - alpha I||_F^2 / (alpha^2 S).

    Raises:
        ZeroGainError: If alpha is zero.
    """
    size = H.shape[0] if streams is None else streams
    if H.shape != (size, size):
        raise ValueError(f"H must be {size} x {size}, got {H.shape}")
    if alpha == 0.0:
        raise ZeroGainError("NMSE is undefined for alpha = 0")
    residual = H - alpha * np.eye(size)
    return float(np.vdot(residual, residual).real / (alpha * alpha * size))


def offdiagonal_energy_ratio(H: ComplexMatrix) -> float:
    """sum_{i != j} |H_ij|^2 / sum_i |H_ii|^2 (inf when the diagonal is zero)."""
    power = np.abs(H) ** 2
    diagonal = float(np.trace(power))
    offdiagonal = float(power.sum()) - diagonal
    if diagonal == 0.0:
        return math.inf if offdiagonal > 0 else 0.0
    return max(offdiagonal, 0.0) / diagonal
