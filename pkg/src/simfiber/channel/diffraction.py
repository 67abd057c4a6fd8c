"""Rayleigh-Sommerfeld coupling between adjacent layers of a conventional SIM.

Layers are coaxial planes one ``layer_spacing`` apart. Atoms sit on centered
square grids; the transmit (receive) ports sit on a centered line one layer
spacing in front of the first TX (behind the last RX) metasurface.

Matrix orientation follows the signal: rows index the receiving plane, columns
the emitting plane. For the TX side W^1 maps ports to layer 1 (W x S) and W^l
maps layer l-1 to layer l (W x W). For the RX side U^k maps layer k to layer
k-1 (U x U) and U^1 maps the outermost layer to the ports (S x U).
"""

import logging
import math

import numpy as np
import numpy.typing as npt

from ..core.exceptions import DegenerateGeometryError, LayerIndexError
from ..core.types import ComplexMatrix, Side
from .topology import MultiLayerTopology

logger = logging.getLogger(__name__)

Coordinates = npt.NDArray[np.float64]


def atom_grid(count: int, spacing: float) -> Coordinates:
    """Lateral (x, y) coordinates of ``count`` atoms on a centered square grid.

    Atoms are enumerated row-major: index = row * side + column.
    """
    side = math.isqrt(count)
    if side * side != count:
        raise ValueError(f"{count} atoms do not fill a square grid")
    offsets = (np.arange(side) - (side - 1) / 2.0) * spacing
    ys, xs = np.meshgrid(offsets, offsets, indexing="ij")
    return np.column_stack([xs.ravel(), ys.ravel()])


def port_positions(streams: int, spacing: float) -> Coordinates:
    """Ports on a centered line along x."""
    xs = (np.arange(streams) - (streams - 1) / 2.0) * spacing
    return np.column_stack([xs, np.zeros(streams)])


def diffraction_coefficients(
    receiving: Coordinates,
    emitting: Coordinates,
    *,
    layer_spacing: float,
    atom_area: float,
    wavelength: float,
) -> ComplexMatrix:
    """Coupling matrix between two parallel planes ``layer_spacing`` apart.

    Entry (n, m) is
    (A_t cos(chi) / r) (1 / (2 pi r) - j / lambda) exp(j 2 pi r / lambda)
    with r the distance between receiving point n and emitting point m and
    cos(chi) = layer_spacing / r.

    Raises:
        DegenerateGeometryError: If any two points coincide.
    """
    lateral = receiving[:, np.newaxis, :] - emitting[np.newaxis, :, :]
    r = np.sqrt(np.sum(lateral**2, axis=-1) + layer_spacing**2)
    if np.any(r == 0.0):
        raise DegenerateGeometryError(
            "coincident atoms on adjacent layers", layer_spacing=layer_spacing
        )
    cos_chi = layer_spacing / r
    coeff = (atom_area * cos_chi / r) * (1.0 / (2.0 * np.pi * r) - 1j / wavelength)
    return (coeff * np.exp(2j * np.pi * r / wavelength)).astype(np.complex128)


def _layer_count(topology: MultiLayerTopology, side: Side) -> int:
    return topology.tx_layers if side == Side.TX else topology.rx_layers


def build_diffraction_matrix(
    topology: MultiLayerTopology, side: Side, layer_index: int
) -> ComplexMatrix:
    """Diffraction matrix W^l (side=tx) or U^k (side=rx), 1-based.

    Raises:
        LayerIndexError: If layer_index is outside 1..L (or 1..K).
        DegenerateGeometryError: If two coupled atoms coincide.
    """
    layers = _layer_count(topology, side)
    if not 1 <= layer_index <= layers:
        raise LayerIndexError(layer_index, 1, layers)

    atoms = topology.tx_atoms if side == Side.TX else topology.rx_atoms
    grid = atom_grid(atoms, topology.atom_spacing)
    kwargs = {
        "layer_spacing": topology.layer_spacing,
        "atom_area": topology.effective_atom_area,
        "wavelength": topology.wavelength,
    }

    if layer_index == 1:
        ports = port_positions(topology.streams, topology.atom_spacing)
        if side == Side.TX:
            return diffraction_coefficients(grid, ports, **kwargs)
        return diffraction_coefficients(ports, grid, **kwargs)
    return diffraction_coefficients(grid, grid, **kwargs)


def build_diffraction_stack(
    topology: MultiLayerTopology, side: Side
) -> tuple[ComplexMatrix, ...]:
    """All L (or K) diffraction matrices of one side, index 1 first."""
    layers = _layer_count(topology, side)
    stack = tuple(
        build_diffraction_matrix(topology, side, index)
        for index in range(1, layers + 1)
    )
    logger.debug(
        "built %d %s diffraction matrices (%d atoms per layer)",
        layers,
        side.value,
        topology.tx_atoms if side == Side.TX else topology.rx_atoms,
    )
    return stack
