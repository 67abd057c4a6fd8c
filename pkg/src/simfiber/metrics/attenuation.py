"""Per-layer energy attenuation of metasurface transmission matrices."""

import math
from collections.abc import Sequence

from ..core.types import ComplexMatrix


def _check_ratio(ratio: float) -> None:
    if not 0.0 <= ratio < 1.0:
        raise ValueError(f"attenuation ratio must lie in [0, 1), got {ratio}")


def apply_attenuation(
    matrices: Sequence[ComplexMatrix], ratio: float
) -> tuple[ComplexMatrix, ...]:
    """Scale each layer's matrix amplitude by sqrt(1 - ratio).

    A zero ratio returns the inputs untouched.
    """
    _check_ratio(ratio)
    if ratio == 0.0:
        return tuple(matrices)
    scale = math.sqrt(1.0 - ratio)
    return tuple(scale * m for m in matrices)


def energy_retained(layers: int, ratio: float) -> float:
    """(1 - ratio)^layers."""
    _check_ratio(ratio)
    return (1.0 - ratio) ** layers


def energy_loss(layers: int, ratio: float) -> float:
    return 1.0 - energy_retained(layers, ratio)
