"""Tests for SVD-based ideal transceivers."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from simfiber.baselines.svd import svd_decompose, svd_ideal_transceivers
from simfiber.channel.propagation import sample_rayleigh_channel
from simfiber.core.exceptions import RankDeficiencyError


class TestSvdDecompose:
    """Tests for the decomposition triple."""

    def test_reconstructs_channel(self, rng: np.random.Generator) -> None:
        G = rng.standard_normal((4, 6)) + 1j * rng.standard_normal((4, 6))

        triple = svd_decompose(G)

        sigma = np.zeros((4, 6))
        np.fill_diagonal(sigma, triple.sigma)
        assert_allclose(triple.D @ sigma @ triple.V.conj().T, G, atol=1e-12)
        assert np.all(np.diff(triple.sigma) <= 0)
        assert triple.rank == 4

    def test_rank_of_outer_product(self) -> None:
        G = np.outer([1.0, 2.0, 3.0], [1.0, -1.0])

        assert svd_decompose(G).rank == 1

    def test_zero_matrix_has_rank_zero(self) -> None:
        assert svd_decompose(np.zeros((3, 3))).rank == 0


class TestSvdIdealTransceivers:
    """Tests for Q G P = I_S."""

    def test_diagonalizes_random_channels(self) -> None:
        for seed in range(100):
            G = sample_rayleigh_channel(8, 16, 1.0, seed)

            precoder, combiner = svd_ideal_transceivers(G, 4)

            assert precoder.shape == (16, 4)
            assert combiner.shape == (4, 8)
            assert np.linalg.norm(combiner @ G @ precoder - np.eye(4)) < 1e-9

    def test_tiny_path_gain(self) -> None:
        G = sample_rayleigh_channel(4, 4, 1e-14, 0)

        precoder, combiner = svd_ideal_transceivers(G, 2)

        assert_allclose(combiner @ G @ precoder, np.eye(2), atol=1e-9)

    def test_rank_deficient_channel_raises(self) -> None:
        G = np.outer([1.0, 2.0, 3.0], [1.0, 1.0, 1.0]).astype(np.complex128)

        with pytest.raises(RankDeficiencyError) as exc_info:
            svd_ideal_transceivers(G, 2)

        assert exc_info.value.context == {"rank": 1, "streams": 2}

    def test_too_many_streams_raises(self) -> None:
        with pytest.raises(RankDeficiencyError):
            svd_ideal_transceivers(np.eye(2), 3)
