"""Closed-form single-coordinate updates.

With every other phase fixed, the objective as a function of one phase theta
of layer p is a sinusoid plus a constant,

    J(theta) = c + 2 [(C - D) cos(theta) + (A + B) sin(theta)],

where, for X = R[:, m] T[m, :] (the rank-one term the atom scales) and the
residual of every other term r = H - exp(j theta_m) X - target,
A + B = -Im<r, X> and C - D = Re<r, X>. Its two stationary points are
atan2(A + B, C - D) and that angle plus pi; the smaller J wins.
"""

import logging
import math

import numpy as np

from ..core.types import ComplexMatrix, RealVector
from .state import TWO_PI

logger = logging.getLogger(__name__)

# relative to ||X||_F ||r||_F
DEGENERATE_TOLERANCE = 1e-15


def _wrap(theta: float) -> float:
    wrapped = math.fmod(theta, TWO_PI)
    if wrapped < 0:
        wrapped += TWO_PI
    return 0.0 if wrapped >= TWO_PI else wrapped


def _coefficients(rank_one: ComplexMatrix, rest: ComplexMatrix) -> tuple[float, float]:
    inner = complex(np.vdot(rest, rank_one))
    return -inner.imag, inner.real


def _sinusoid(theta: float, a_plus_b: float, c_minus_d: float) -> float:
    return 2.0 * (c_minus_d * math.cos(theta) + a_plus_b * math.sin(theta))


def best_phase(
    rank_one: ComplexMatrix, rest: ComplexMatrix, current: float
) -> float:
    """Minimizer of ||rest + exp(j theta) rank_one||_F^2 over theta.

    Returns ``current`` unchanged when the atom has no influence on J.
    """
    a_plus_b, c_minus_d = _coefficients(rank_one, rest)
    scale = float(np.linalg.norm(rank_one) * np.linalg.norm(rest))
    if math.hypot(a_plus_b, c_minus_d) <= DEGENERATE_TOLERANCE * scale:
        return current
    root = math.atan2(a_plus_b, c_minus_d)
    other = root + math.pi
    if _sinusoid(other, a_plus_b, c_minus_d) <= _sinusoid(root, a_plus_b, c_minus_d):
        return _wrap(other)
    return _wrap(root)


def _split(
    R: ComplexMatrix,
    T: ComplexMatrix,
    target: ComplexMatrix,
    phases: RealVector,
    m: int,
) -> tuple[ComplexMatrix, ComplexMatrix]:
    coefficients = np.exp(1j * np.asarray(phases, dtype=np.float64))
    rank_one = np.outer(R[:, m], T[m, :])
    full = R @ (coefficients[:, np.newaxis] * T)
    return rank_one, full - coefficients[m] * rank_one - target


def layer_objective_coefficients(
    R: ComplexMatrix,
    T: ComplexMatrix,
    target: ComplexMatrix,
    phases: RealVector,
    m: int,
) -> tuple[float, float]:
    """(A + B, C - D) of atom m, so that dJ/dtheta = 2[(A + B) cos - (C - D) sin]."""
    return _coefficients(*_split(R, T, target, phases, m))


def phase_update_closed_form(
    R: ComplexMatrix,
    T: ComplexMatrix,
    target: ComplexMatrix,
    phases: RealVector,
    m: int,
) -> float:
    """J-minimizing phase of atom m of a layer with cascades R, T.

    R is S x Q, T is Q x S and ``phases`` holds the layer's current Q phases.
    The result lies in [0, 2 pi).
    """
    rank_one, rest = _split(R, T, target, phases, m)
    return best_phase(rank_one, rest, float(phases[m]))


def alpha_update(H: ComplexMatrix, target_phase: float = 0.0) -> float:
    """Least-squares gain Re(exp(-j zeta) tr H) / S for the target alpha exp(j zeta) I.

    zeta is 0 unless a phase-rotated target is fitted.
    """
    rows, cols = H.shape
    if rows != cols:
        raise ValueError("H must be square")
    rotation = complex(math.cos(target_phase), -math.sin(target_phase))
    return float((rotation * np.trace(H)).real / rows)
