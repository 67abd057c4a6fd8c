"""Shared pytest fixtures for all tests."""

import os

import numpy as np
import pytest

from simfiber.channel.diffraction import build_diffraction_stack
from simfiber.channel.propagation import sample_rayleigh_channel
from simfiber.channel.topology import MultiLayerTopology, TwoLayerTopology
from simfiber.core.types import Side
from simfiber.optimizer.state import FitProblem

# 28 GHz carrier
WAVELENGTH = 0.0107


@pytest.fixture(autouse=True)
def clean_env(monkeypatch: pytest.MonkeyPatch) -> None:
    """Keep SIMFIBER_* variables of the calling shell out of the tests."""
    for name in list(os.environ):
        if name.startswith("SIMFIBER_"):
            monkeypatch.delenv(name)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def small_topology() -> TwoLayerTopology:
    """S = 2 streams, M = N = 2 atoms per sub-area."""
    return TwoLayerTopology(streams=2, m_atoms=2, n_atoms=2)


@pytest.fixture
def two_layer_problem(small_topology: TwoLayerTopology) -> FitProblem:
    """Unit-variance channel so that objective values are O(1)."""
    channel = sample_rayleigh_channel(
        small_topology.rx_input_atoms, small_topology.tx_output_atoms, 1.0, 7
    )
    return FitProblem.two_layer(small_topology, channel)


@pytest.fixture
def multi_topology() -> MultiLayerTopology:
    """L = K = 2 layers of 4 atoms, half-wavelength spacing."""
    return MultiLayerTopology.half_wavelength(
        streams=2, layers=2, atoms=4, wavelength=WAVELENGTH
    )


@pytest.fixture
def multi_layer_problem(multi_topology: MultiLayerTopology) -> FitProblem:
    channel = sample_rayleigh_channel(
        multi_topology.rx_atoms, multi_topology.tx_atoms, 1.0, 11
    )
    return FitProblem.multi_layer(
        build_diffraction_stack(multi_topology, Side.TX),
        channel,
        build_diffraction_stack(multi_topology, Side.RX),
    )
