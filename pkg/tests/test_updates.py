"""Tests for closed-form phase and gain updates."""

import math

import numpy as np
import pytest

from simfiber.optimizer.state import TWO_PI
from simfiber.optimizer.updates import (
    alpha_update,
    best_phase,
    layer_objective_coefficients,
    phase_update_closed_form,
)


def _complex(rng: np.random.Generator, *shape: int) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def _layer_objective(
    R: np.ndarray, T: np.ndarray, target: np.ndarray, phases: np.ndarray
) -> float:
    residual = R @ (np.exp(1j * phases)[:, np.newaxis] * T) - target
    return float(np.vdot(residual, residual).real)


class TestPhaseUpdate:
    """Tests for the single-atom minimizer."""

    def test_beats_candidate_angles(self) -> None:
        """Each returned phase is no worse than 64 uniform candidate angles."""
        rng = np.random.default_rng(2024)
        candidates = np.linspace(0.0, TWO_PI, 64, endpoint=False)
        violations = 0

        for _ in range(1000):
            streams = int(rng.integers(1, 5))
            size = int(rng.integers(1, 9))
            R = _complex(rng, streams, size)
            T = _complex(rng, size, streams)
            target = rng.uniform(0.1, 2.0) * np.eye(streams)
            phases = rng.uniform(0.0, TWO_PI, size)
            m = int(rng.integers(size))

            updated = phases.copy()
            updated[m] = phase_update_closed_form(R, T, target, phases, m)
            best = _layer_objective(R, T, target, updated)
            for angle in candidates:
                trial = phases.copy()
                trial[m] = angle
                if best > _layer_objective(R, T, target, trial) + 1e-12 * max(1, best):
                    violations += 1

        assert violations == 0

    def test_result_is_wrapped(self, rng: np.random.Generator) -> None:
        R = _complex(rng, 2, 3)
        T = _complex(rng, 3, 2)

        theta = phase_update_closed_form(R, T, np.eye(2), np.zeros(3), 1)

        assert 0.0 <= theta < TWO_PI

    def test_degenerate_atom_keeps_its_phase(self, rng: np.random.Generator) -> None:
        R = _complex(rng, 2, 3)
        R[:, 2] = 0.0
        T = _complex(rng, 3, 2)
        phases = np.array([0.1, 0.2, 1.234])

        assert phase_update_closed_form(R, T, np.eye(2), phases, 2) == 1.234

    def test_degenerate_threshold_is_relative(self, rng: np.random.Generator) -> None:
        """Tiny path-gain scales still update."""
        R = 1e-8 * _complex(rng, 2, 3)
        T = _complex(rng, 3, 2)
        target = 1e-9 * np.eye(2)
        phases = np.zeros(3)

        theta = phase_update_closed_form(R, T, target, phases, 0)
        updated = phases.copy()
        updated[0] = theta

        assert _layer_objective(R, T, target, updated) <= _layer_objective(
            R, T, target, phases
        )
        assert theta != 0.0

    def test_best_phase_on_scalar_problem(self) -> None:
        # |r + e^{j theta} x|^2 with r = -1, x = j is minimized at theta = -pi / 2
        theta = best_phase(np.array([[1j]]), np.array([[-1.0 + 0j]]), 0.0)

        assert theta == pytest.approx(3 * math.pi / 2)


class TestObjectiveCoefficients:
    """Tests for the sinusoid coefficients against finite differences."""

    def test_derivative_matches_central_difference(self) -> None:
        rng = np.random.default_rng(77)
        step = 1e-6

        for _ in range(50):
            streams, size = 3, 5
            R = _complex(rng, streams, size)
            T = _complex(rng, size, streams)
            target = 0.8 * np.eye(streams)
            phases = rng.uniform(0.0, TWO_PI, size)
            m = int(rng.integers(size))

            a_plus_b, c_minus_d = layer_objective_coefficients(
                R, T, target, phases, m
            )
            theta = phases[m]
            analytic = 2.0 * (a_plus_b * math.cos(theta) - c_minus_d * math.sin(theta))
            plus, minus = phases.copy(), phases.copy()
            plus[m] += step
            minus[m] -= step
            numeric = (
                _layer_objective(R, T, target, plus)
                - _layer_objective(R, T, target, minus)
            ) / (2 * step)

            assert analytic == pytest.approx(numeric, rel=1e-6, abs=1e-6)


class TestAlphaUpdate:
    """Tests for the least-squares gain."""

    def test_real_part_of_mean_diagonal(self) -> None:
        H = np.array([[2.0 + 1j, 5.0], [7.0, 4.0 - 3j]])

        assert alpha_update(H) == pytest.approx(3.0)

    def test_rotated_target(self) -> None:
        H = 3j * np.eye(3)

        assert alpha_update(H, target_phase=math.pi / 2) == pytest.approx(3.0)

    def test_minimizes_residual(self, rng: np.random.Generator) -> None:
        H = _complex(rng, 3, 3)
        alpha = alpha_update(H)

        def residual(a: float) -> float:
            return float(np.linalg.norm(H - a * np.eye(3)) ** 2)

        assert residual(alpha) <= residual(alpha + 1e-3)
        assert residual(alpha) <= residual(alpha - 1e-3)

    def test_non_square_raises(self) -> None:
        with pytest.raises(ValueError):
            alpha_update(np.ones((2, 3)))
