"""Tests for fitting-quality metrics."""

import math

import numpy as np
import pytest

from simfiber.core.exceptions import ZeroGainError
from simfiber.metrics.nmse import nmse, offdiagonal_energy_ratio


class TestNmse:
    """Tests for ||H - alpha I||^2 / (alpha^2 S)."""

    def test_perfect_fit_is_zero(self) -> None:
        assert nmse(0.3 * np.eye(4), 0.3) == 0.0

    def test_known_residual(self) -> None:
        H = np.array([[2.0, 1.0], [0.0, 2.0]])

        assert nmse(H, 2.0) == pytest.approx(1.0 / 8.0)

    def test_scale_invariance(self) -> None:
        H = np.array([[1.0, 0.2j], [0.1, 0.9]])

        assert nmse(1e-7 * H, 1e-7) == pytest.approx(nmse(H, 1.0), rel=1e-12)

    def test_zero_alpha_raises(self) -> None:
        with pytest.raises(ZeroGainError):
            nmse(np.eye(2), 0.0)

    def test_stream_count_must_match(self) -> None:
        with pytest.raises(ValueError):
            nmse(np.eye(2), 1.0, streams=3)


class TestOffdiagonalEnergyRatio:
    """Tests for the heatmap leakage measure."""

    def test_diagonal_matrix(self) -> None:
        assert offdiagonal_energy_ratio(np.diag([1.0, 2.0j])) == 0.0

    def test_known_ratio(self) -> None:
        H = np.array([[1.0, 1.0], [1.0, 1.0]])

        assert offdiagonal_energy_ratio(H) == pytest.approx(1.0)

    def test_zero_diagonal(self) -> None:
        assert math.isinf(offdiagonal_energy_ratio(np.array([[0.0, 1.0], [0.0, 0.0]])))
        assert offdiagonal_energy_ratio(np.zeros((2, 2))) == 0.0
