"""Tests for topology descriptions and meta-atom accounting."""

import pytest
from pydantic import ValidationError

from simfiber.channel.topology import (
    LinkBudget,
    MultiLayerTopology,
    TwoLayerTopology,
    count_meta_atoms,
)


class TestTwoLayerTopology:
    """Tests for the meta-fiber SIM dimensions."""

    def test_layer_sizes(self) -> None:
        topology = TwoLayerTopology(streams=4, m_atoms=3, n_atoms=5)

        assert topology.tx_input_atoms == 24
        assert topology.tx_output_atoms == 12
        assert topology.rx_input_atoms == 20
        assert topology.rx_output_atoms == 40

    def test_fiber_gains_combine_magnitude_and_phase(self) -> None:
        topology = TwoLayerTopology(
            streams=1, m_atoms=1, n_atoms=1, rho1_mag=2.0, psi1=0.5
        )

        assert abs(topology.rho1) == pytest.approx(2.0)
        assert topology.rho2 == 1.0

    @pytest.mark.parametrize("field", ["streams", "m_atoms", "n_atoms"])
    def test_counts_must_be_positive(self, field: str) -> None:
        values = {"streams": 1, "m_atoms": 1, "n_atoms": 1, field: 0}

        with pytest.raises(ValidationError):
            TwoLayerTopology(**values)

    def test_nonpositive_fiber_gain_is_rejected(self) -> None:
        with pytest.raises(ValidationError):
            TwoLayerTopology(streams=1, m_atoms=1, n_atoms=1, rho2_mag=0.0)


class TestMultiLayerTopology:
    """Tests for the conventional SIM dimensions."""

    def test_half_wavelength_preset(self) -> None:
        topology = MultiLayerTopology.half_wavelength(
            streams=2, layers=3, atoms=9, wavelength=0.01
        )

        assert topology.atom_spacing == pytest.approx(0.005)
        assert topology.layer_spacing == pytest.approx(0.005)
        assert topology.tx_grid_shape == (3, 3)
        assert topology.effective_atom_area == pytest.approx(0.005**2)

    def test_non_square_grid_is_rejected(self) -> None:
        with pytest.raises(ValidationError):
            MultiLayerTopology.half_wavelength(
                streams=1, layers=1, atoms=10, wavelength=0.01
            )

    def test_explicit_atom_area_wins(self) -> None:
        topology = MultiLayerTopology(
            streams=1,
            tx_layers=1,
            rx_layers=1,
            tx_atoms=4,
            rx_atoms=4,
            wavelength=0.01,
            atom_spacing=0.005,
            layer_spacing=0.005,
            atom_area=1e-6,
        )

        assert topology.effective_atom_area == 1e-6


class TestLinkBudget:
    """Tests for link budget validation."""

    def test_distance_must_be_positive(self) -> None:
        with pytest.raises(ValidationError):
            LinkBudget(distance_m=0.0, gamma=3.5, wavelength=0.01, pt=1.0, n0=1.0)


class TestCountMetaAtoms:
    """Tests for the meta-atom comparison."""

    def test_default_parameters(self) -> None:
        two = TwoLayerTopology(streams=4, m_atoms=25, n_atoms=25)
        multi = MultiLayerTopology.half_wavelength(
            streams=4, layers=7, atoms=100, wavelength=0.0107
        )

        counts = count_meta_atoms(two, multi)

        assert counts.two_layer_total == 600
        assert counts.multi_layer_total == 1400
        assert counts.reduction == pytest.approx(1 - 600 / 1400)

    def test_per_side_counts(self) -> None:
        two = TwoLayerTopology(streams=2, m_atoms=3, n_atoms=1)
        multi = MultiLayerTopology(
            streams=2,
            tx_layers=2,
            rx_layers=3,
            tx_atoms=4,
            rx_atoms=9,
            wavelength=0.01,
            atom_spacing=0.005,
            layer_spacing=0.005,
        )

        counts = count_meta_atoms(two, multi)

        assert counts.two_layer_tx == 18
        assert counts.two_layer_rx == 6
        assert counts.multi_layer_tx == 8
        assert counts.multi_layer_rx == 27
