"""Meta-fiber transmission coefficient matrices and single sub-area synthesis."""

import cmath
import math
from typing import NamedTuple

import numpy as np
from scipy.linalg import block_diag

from ..core.exceptions import AmplitudeRangeError
from ..core.types import ComplexMatrix
from .topology import TwoLayerTopology

# relative slack on the synthesizable amplitude bound
_AMPLITUDE_SLACK = 1e-12


class SubareaPhases(NamedTuple):
    """Phases (radians) of one sub-area: two input atoms and their output atom."""

    input_first: float
    input_second: float
    output: float


def max_subarea_amplitude(chi: float, topology: TwoLayerTopology) -> float:
    """Largest output amplitude of a sub-area, 2 * chi * |rho1| * |rho2|."""
    return 2.0 * chi * topology.rho1_mag * topology.rho2_mag


def synthesize_subarea_phases(
    target: complex, chi: float, topology: TwoLayerTopology
) -> SubareaPhases:
    """Phases that make one sub-area emit ``target`` from an input amplitude chi.

    The two input atoms set the amplitude by interfering at +/- arccos(b/2),
    the output atom sets the phase after removing the fiber offsets.

    Raises:
        AmplitudeRangeError: If |target| exceeds 2 * chi * |rho1| * |rho2|.
    """
    if chi <= 0:
        raise ValueError("chi must be positive")
    limit = max_subarea_amplitude(chi, topology)
    amplitude = abs(target)
    if amplitude > limit * (1.0 + _AMPLITUDE_SLACK):
        raise AmplitudeRangeError(amplitude, limit)

    b = amplitude / (chi * topology.rho1_mag * topology.rho2_mag)
    half = min(b / 2.0, 1.0)
    spread = math.acos(half)
    delta = cmath.phase(target) if amplitude > 0 else 0.0
    return SubareaPhases(
        input_first=spread,
        input_second=-spread,
        output=delta - topology.psi1 - topology.psi2,
    )


def subarea_output(
    phases: SubareaPhases, chi: float, topology: TwoLayerTopology
) -> complex:
    """Symbol emitted by one sub-area for the given phases."""
    pair = cmath.exp(1j * phases.input_first) + cmath.exp(1j * phases.input_second)
    return chi * topology.rho1 * topology.rho2 * pair * cmath.exp(1j * phases.output)


def build_tx_fiber_matrices(
    topology: TwoLayerTopology,
) -> tuple[ComplexMatrix, ComplexMatrix]:
    """Port -> input layer (W1, 2MS x S) and input -> output layer (W2, MS x 2MS)."""
    m, s = topology.m_atoms, topology.streams
    w1 = topology.rho1 * block_diag(*([np.ones((2 * m, 1))] * s))
    w2 = topology.rho2 * block_diag(*([np.ones((1, 2))] * (m * s)))
    return w1.astype(np.complex128), w2.astype(np.complex128)


def build_rx_fiber_matrices(
    topology: TwoLayerTopology,
) -> tuple[ComplexMatrix, ComplexMatrix]:
    """Input -> output layer (U2, 2NS x NS) and output layer -> ports (U1, S x 2NS)."""
    n, s = topology.n_atoms, topology.streams
    u2 = topology.rho2 * block_diag(*([np.ones((2, 1))] * (n * s)))
    u1 = topology.rho1 * block_diag(*([np.ones((1, 2 * n))] * s))
    return u2.astype(np.complex128), u1.astype(np.complex128)
