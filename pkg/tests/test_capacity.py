"""Tests for capacity of the fitted channel and its bound."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from simfiber.core.types import CapacityFormula
from simfiber.metrics.capacity import (
    CapacityInputs,
    capacity_exact,
    capacity_upper_bound,
    zf_capacity,
)


class TestCapacityInputs:
    """Tests for input validation."""

    def test_error_is_residual(self) -> None:
        inputs = CapacityInputs(H=[[2.0, 1.0], [0.0, 2.0]], alpha=2.0, pt=1.0, n0=1.0)

        assert inputs.streams == 2
        np.testing.assert_allclose(inputs.error, [[0.0, 1.0], [0.0, 0.0]])

    def test_non_square_channel_is_rejected(self) -> None:
        with pytest.raises(ValidationError):
            CapacityInputs(H=np.ones((2, 3)), alpha=1.0, pt=1.0, n0=1.0)

    def test_non_finite_channel_is_rejected(self) -> None:
        with pytest.raises(ValidationError):
            CapacityInputs(H=[[np.inf]], alpha=1.0, pt=1.0, n0=1.0)

    def test_power_must_be_positive(self) -> None:
        with pytest.raises(ValidationError):
            CapacityInputs(H=np.eye(2), alpha=1.0, pt=0.0, n0=1.0)


class TestCapacityExact:
    """Tests for log2 det(I + alpha^2 Pt (c E E^H + N0 I)^-1)."""

    @pytest.mark.parametrize("formula", list(CapacityFormula))
    def test_perfect_fit_equals_bound(self, formula: CapacityFormula) -> None:
        inputs = CapacityInputs(H=0.5 * np.eye(3), alpha=0.5, pt=2.0, n0=0.1)

        assert capacity_exact(inputs, formula) == pytest.approx(
            3 * math.log2(1 + 0.25 * 2.0 / 0.1)
        )

    def test_hand_computed_residual(self) -> None:
        inputs = CapacityInputs(H=np.diag([2.0, 1.0]), alpha=1.0, pt=1.0, n0=1.0)

        value = capacity_exact(inputs, CapacityFormula.EQ37_CONSISTENT)

        assert value == pytest.approx(math.log2(1.5) + math.log2(2.0))

    def test_formulas_weight_interference_differently(self) -> None:
        inputs = CapacityInputs(H=np.diag([2.0, 1.0]), alpha=1.0, pt=2.0, n0=1.0)

        assert capacity_exact(
            inputs, CapacityFormula.EQ37_CONSISTENT
        ) == pytest.approx(math.log2(5.0))
        assert capacity_exact(inputs, CapacityFormula.EQ38_LITERAL) == pytest.approx(
            math.log2(6.0)
        )

    def test_never_exceeds_bound(self, rng: np.random.Generator) -> None:
        for _ in range(200):
            streams = int(rng.integers(1, 6))
            alpha = float(rng.uniform(0.01, 2.0))
            H = alpha * np.eye(streams) + rng.uniform(0, 0.5) * (
                rng.standard_normal((streams, streams))
                + 1j * rng.standard_normal((streams, streams))
            )
            inputs = CapacityInputs(H=H, alpha=alpha, pt=1.0, n0=0.05)

            assert capacity_exact(inputs) <= capacity_upper_bound(
                alpha, 1.0, 0.05, streams
            ) + 1e-9

    def test_is_nonnegative(self) -> None:
        inputs = CapacityInputs(H=np.eye(2), alpha=0.0, pt=1.0, n0=1.0)

        assert capacity_exact(inputs) == 0.0


class TestCapacityBound:
    """Tests for S log2(1 + alpha^2 Pt / N0)."""

    def test_default_operating_point(self) -> None:
        assert capacity_upper_bound(1.0, 0.1, 1e-14, 4) == pytest.approx(
            4 * math.log2(1 + 1e13), rel=1e-12
        )

    def test_nonpositive_noise_raises(self) -> None:
        with pytest.raises(ValueError):
            capacity_upper_bound(1.0, 1.0, 0.0, 2)


class TestZfCapacity:
    """Tests for the zero-forcing reference."""

    def test_matches_bound_shape(self) -> None:
        assert zf_capacity(0.5, 0.25, 3) == pytest.approx(3 * math.log2(2.0))

    def test_nonpositive_noise_raises(self) -> None:
        with pytest.raises(ValueError):
            zf_capacity(1.0, 0.0, 2)
