"""Topology and link-budget descriptions for both SIM architectures."""

import math

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class TwoLayerTopology(BaseModel):
    """Meta-fiber-connected 2-layer SIM at both ends of the link.

    Each of the S transmit ports feeds a sub-area of 2M input atoms, pairs of
    which are joined onto M output atoms; the receive side mirrors this with N.
    Two meta-fiber types are modelled: port <-> outer layer (rho1, psi1) and
    outer <-> inner layer (rho2, psi2).
    """

    model_config = ConfigDict(frozen=True)

    streams: int = Field(ge=1)
    m_atoms: int = Field(ge=1)
    n_atoms: int = Field(ge=1)
    rho1_mag: float = Field(default=1.0, gt=0)
    psi1: float = 0.0
    rho2_mag: float = Field(default=1.0, gt=0)
    psi2: float = 0.0

    @property
    def rho1(self) -> complex:
        return self.rho1_mag * complex(math.cos(self.psi1), math.sin(self.psi1))

    @property
    def rho2(self) -> complex:
        return self.rho2_mag * complex(math.cos(self.psi2), math.sin(self.psi2))

    @property
    def tx_input_atoms(self) -> int:
        return 2 * self.m_atoms * self.streams

    @property
    def tx_output_atoms(self) -> int:
        return self.m_atoms * self.streams

    @property
    def rx_input_atoms(self) -> int:
        return self.n_atoms * self.streams

    @property
    def rx_output_atoms(self) -> int:
        return 2 * self.n_atoms * self.streams

    @property
    def total_atoms(self) -> int:
        return 3 * (self.m_atoms + self.n_atoms) * self.streams


class MultiLayerTopology(BaseModel):
    """Conventional SIM whose layers couple through free-space diffraction.

    Atoms sit on centered square grids, layers are coaxial and equally spaced.
    atom_area defaults to one half-wavelength cell, (lambda/2)^2.
    """

    model_config = ConfigDict(frozen=True)

    streams: int = Field(ge=1)
    tx_layers: int = Field(ge=1)
    rx_layers: int = Field(ge=1)
    tx_atoms: int = Field(ge=1)
    rx_atoms: int = Field(ge=1)
    wavelength: float = Field(gt=0)
    atom_spacing: float = Field(gt=0)
    layer_spacing: float = Field(gt=0)
    atom_area: float | None = Field(default=None, gt=0)

    @field_validator("tx_atoms", "rx_atoms")
    @classmethod
    def square_grid(cls, v: int) -> int:
        if math.isqrt(v) ** 2 != v:
            raise ValueError("atoms per layer must be a perfect square")
        return v

    @property
    def effective_atom_area(self) -> float:
        if self.atom_area is not None:
            return self.atom_area
        return (self.wavelength / 2) ** 2

    @property
    def tx_grid_shape(self) -> tuple[int, int]:
        side = math.isqrt(self.tx_atoms)
        return side, side

    @property
    def rx_grid_shape(self) -> tuple[int, int]:
        side = math.isqrt(self.rx_atoms)
        return side, side

    @property
    def total_atoms(self) -> int:
        return self.tx_layers * self.tx_atoms + self.rx_layers * self.rx_atoms

    @classmethod
    def half_wavelength(
        cls,
        *,
        streams: int,
        layers: int,
        atoms: int,
        wavelength: float,
    ) -> "MultiLayerTopology":
        """Symmetric TX/RX stack with lambda/2 atom and layer spacing."""
        return cls(
            streams=streams,
            tx_layers=layers,
            rx_layers=layers,
            tx_atoms=atoms,
            rx_atoms=atoms,
            wavelength=wavelength,
            atom_spacing=wavelength / 2,
            layer_spacing=wavelength / 2,
        )


class LinkBudget(BaseModel):
    """Distance-dependent Rayleigh link with its power levels (linear watts).

    beta0 overrides the convention-derived reference gain when set.
    """

    model_config = ConfigDict(frozen=True)

    distance_m: float = Field(gt=0)
    gamma: float = Field(gt=0)
    wavelength: float = Field(gt=0)
    pt: float = Field(gt=0)
    n0: float = Field(gt=0)
    beta0: float | None = Field(default=None, gt=0)


class MetaAtomCount(BaseModel):
    model_config = ConfigDict(frozen=True)

    two_layer_tx: int
    two_layer_rx: int
    multi_layer_tx: int
    multi_layer_rx: int

    @property
    def two_layer_total(self) -> int:
        return self.two_layer_tx + self.two_layer_rx

    @property
    def multi_layer_total(self) -> int:
        return self.multi_layer_tx + self.multi_layer_rx

    @property
    def reduction(self) -> float:
        """Fraction of meta-atoms saved by the 2-layer design."""
        return 1.0 - self.two_layer_total / self.multi_layer_total

    @model_validator(mode="after")
    def nonempty(self) -> "MetaAtomCount":
        if self.multi_layer_tx + self.multi_layer_rx == 0:
            raise ValueError("multi-layer count cannot be zero")
        return self


def count_meta_atoms(
    two_layer: TwoLayerTopology, multi_layer: MultiLayerTopology
) -> MetaAtomCount:
    """Count programmable atoms of both architectures.

    The 2-layer SIM has 3MS atoms at TX (2MS + MS) and 3NS at RX; the
    conventional stack has L*W and K*U.
    """
    return MetaAtomCount(
        two_layer_tx=two_layer.tx_input_atoms + two_layer.tx_output_atoms,
        two_layer_rx=two_layer.rx_input_atoms + two_layer.rx_output_atoms,
        multi_layer_tx=multi_layer.tx_layers * multi_layer.tx_atoms,
        multi_layer_rx=multi_layer.rx_layers * multi_layer.rx_atoms,
    )
