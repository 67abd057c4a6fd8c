"""Capacity of the fitted channel and its perfect-diagonalization bound."""

import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..core.exceptions import SingularMatrixError
from ..core.types import CapacityFormula, ComplexMatrix

_LN2 = math.log(2.0)


class CapacityInputs(BaseModel):
    """Equivalent channel H, fitted gain alpha and per-stream power (watts)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    H: np.ndarray
    alpha: float
    pt: float = Field(gt=0)
    n0: float = Field(gt=0)

    @field_validator("H", mode="before")
    @classmethod
    def square_complex(cls, v: object) -> ComplexMatrix:
        H = np.array(v, dtype=np.complex128)
        if H.ndim != 2 or H.shape[0] != H.shape[1]:
            raise ValueError("H must be a square matrix")
        if not np.all(np.isfinite(H)):
            raise ValueError("H must be finite")
        return H

    @property
    def streams(self) -> int:
        return int(self.H.shape[0])

    @property
    def error(self) -> ComplexMatrix:
        """E = H - alpha I."""
        return self.H - self.alpha * np.eye(self.streams)


def _log2det(matrix: ComplexMatrix) -> float:
    sign, logdet = np.linalg.slogdet(matrix)
    if abs(sign) == 0.0 or not math.isfinite(logdet):
        raise SingularMatrixError("interference-plus-noise matrix is singular")
    return float(logdet) / _LN2


def capacity_exact(
    inputs: CapacityInputs,
    formula: CapacityFormula = CapacityFormula.EQ37_CONSISTENT,
) -> float:
    """log2 det(I + alpha^2 Pt (c E E^H + N0 I)^-1) in bps/Hz.

    c = Pt for ``eq37_consistent`` (source covariance Pt I substituted into the
    general expression) and c = 1 for ``eq38_literal``.

    Raises:
        SingularMatrixError: If c E E^H + N0 I is not invertible.
    """
    E = inputs.error
    weight = inputs.pt if formula == CapacityFormula.EQ37_CONSISTENT else 1.0
    identity = np.eye(inputs.streams)
    interference = weight * (E @ E.conj().T) + inputs.n0 * identity
    signal = inputs.alpha * inputs.alpha * inputs.pt
    value = _log2det(interference + signal * identity) - _log2det(interference)
    return max(value, 0.0)


def capacity_upper_bound(alpha: float, pt: float, n0: float, streams: int) -> float:
    """S log2(1 + alpha^2 Pt / N0)."""
    if pt <= 0 or n0 <= 0:
        raise ValueError("pt and n0 must be positive")
    return streams * math.log1p(alpha * alpha * pt / n0) / _LN2


def zf_capacity(gain: float, n0: float, streams: int) -> float:
    """S log2(1 + c^2 / N0) for a zero-forced channel c I."""
    if n0 <= 0:
        raise ValueError("n0 must be positive")
    return streams * math.log1p(gain * gain / n0) / _LN2
