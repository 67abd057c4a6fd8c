"""Distance-dependent Rayleigh fading and power unit conversions."""

import math

import numpy as np

from ..core.exceptions import ZeroGainError
from ..core.types import ComplexMatrix, PathGainConvention
from .topology import LinkBudget


def dbm_to_watts(power_dbm: float) -> float:
    """10 log10 power ratio referenced to 1 mW."""
    return float(10.0 ** ((power_dbm - 30.0) / 10.0))


def watts_to_dbm(power_w: float) -> float:
    if power_w <= 0:
        raise ValueError("power must be positive")
    return 10.0 * math.log10(power_w) + 30.0


def reference_gain(wavelength: float, convention: PathGainConvention) -> float:
    """beta0 at one meter for the given convention."""
    ratio = 4.0 * math.pi / wavelength
    if convention == PathGainConvention.PAPER_LITERAL:
        return ratio**2
    return ratio**-2


def path_gain(
    budget: LinkBudget,
    convention: PathGainConvention = PathGainConvention.FREE_SPACE_GAIN,
) -> float:
    """Per-entry channel variance beta = beta0 * d^-gamma.

    paper_literal uses beta0 = (4 pi / lambda)^2, free_space_gain uses its
    inverse. ``budget.beta0`` overrides either when set.

    Raises:
        ZeroGainError: If beta underflows to zero.
    """
    beta0 = budget.beta0
    if beta0 is None:
        beta0 = reference_gain(budget.wavelength, convention)
    beta = float(beta0 * budget.distance_m ** (-budget.gamma))
    if beta <= 0.0:
        raise ZeroGainError(f"path gain underflows at d = {budget.distance_m:g} m")
    return beta


def sample_rayleigh_channel(
    rows: int, cols: int, beta: float, seed: int | np.random.SeedSequence
) -> ComplexMatrix:
    """i.i.d. CN(0, beta) entries; bit-identical for a fixed seed.

    The unit-variance draw is scaled by sqrt(beta), so two calls that differ
    only in beta differ by an exact entrywise factor.
    """
    if beta <= 0:
        raise ValueError("beta must be positive")
    rng = np.random.default_rng(seed)
    real = rng.standard_normal((rows, cols))
    imag = rng.standard_normal((rows, cols))
    unit = (real + 1j * imag) / math.sqrt(2.0)
    return (math.sqrt(beta) * unit).astype(np.complex128)
