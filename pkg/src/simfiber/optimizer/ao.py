"""Alternating optimization of all meta-atom phases and the channel gain.

One iteration sweeps the phase layers in ascending unified order, atoms within
a layer one at a time, each set to its closed-form minimizer, then refits
alpha. Suffix cascades R_p are computed once at the start of a sweep (they
only involve layers not yet visited); the prefix T_p is advanced as each layer
completes. Within a layer the per-atom rank-one terms form the tensor
L[k, i, j] = R[k, i] T[i, j], from which the current channel is re-evaluated
before every atom.
"""

import logging
import math

import numpy as np

from ..core.types import Architecture, ComplexMatrix
from ..infrastructure.observers import UpdateObserver
from .chain import chain_product, require_architecture
from .state import FitProblem, FitResult, PhaseState, SolverConfig
from .updates import alpha_update, best_phase

logger = logging.getLogger(__name__)


def _residual_energy(H: ComplexMatrix, target: ComplexMatrix) -> float:
    residual = H - target
    return float(np.vdot(residual, residual).real)


def _normalized(J: float, alpha: float, streams: int) -> float:
    if alpha == 0.0:
        return math.inf
    return J / (alpha * alpha * streams)


def _suffixes(
    chain: tuple[ComplexMatrix, ...], coefficients: list[ComplexMatrix]
) -> list[ComplexMatrix]:
    """R_p for p = 0..n (index 0 unused by the sweep)."""
    n = len(chain) - 1
    suffixes: list[ComplexMatrix] = [chain[n]] * (n + 1)
    for p in range(n - 1, -1, -1):
        suffixes[p] = (suffixes[p + 1] * coefficients[p][np.newaxis, :]) @ chain[p]
    return suffixes


def _initial_state(problem: FitProblem, config: SolverConfig) -> PhaseState:
    if config.initialization == "random":
        rng = np.random.default_rng(config.seed)
        return PhaseState.random(problem.layer_sizes, rng)
    return PhaseState.identity(problem.layer_sizes)


def _sweep_layer(
    p: int,
    suffix: ComplexMatrix,
    prefix: ComplexMatrix,
    phases: list[np.ndarray],
    coefficients: list[ComplexMatrix],
    problem: FitProblem,
    target: ComplexMatrix,
    config: SolverConfig,
    rng: np.random.Generator,
    observer: UpdateObserver | None,
) -> None:
    theta = phases[p - 1]
    coeff = coefficients[p - 1]
    size = len(theta)
    order = rng.permutation(size) if config.update_order == "random" else range(size)
    full = config.refresh == "full"
    rank_ones = suffix[:, :, np.newaxis] * prefix[np.newaxis, :, :]

    for m in order:
        if full:
            R = chain_product(problem.chain, coefficients, p, problem.n_layers)
            T = chain_product(problem.chain, coefficients, 0, p - 1)
            H = R @ (coeff[:, np.newaxis] * T)
            rank_one = np.outer(R[:, m], T[m, :])
        else:
            H = np.tensordot(rank_ones, coeff, axes=([1], [0]))
            rank_one = rank_ones[:, m, :]
        rest = H - coeff[m] * rank_one - target
        updated = best_phase(rank_one, rest, float(theta[m]))
        if observer is not None:
            after = rest + np.exp(1j * updated) * rank_one
            observer.on_phase_update(
                p,
                int(m),
                _residual_energy(H, target),
                float(np.vdot(after, after).real),
            )
        theta[m] = updated
        coeff[m] = np.exp(1j * updated)


def run_ao(
    problem: FitProblem,
    config: SolverConfig | None = None,
    *,
    observer: UpdateObserver | None = None,
    initial: PhaseState | None = None,
) -> FitResult:
    """Minimize ||QGP - alpha exp(j zeta) I||_F^2 over all phases and alpha.

    Args:
        problem: Chain and target of the link.
        config: Solver settings; defaults to SolverConfig().
        observer: Notified after every single phase and alpha update.
        initial: Start from this state instead of the configured initialization.

    Returns:
        FitResult whose traces hold the initial value followed by one value per
        completed sweep.
    """
    if config is None:
        config = SolverConfig()
    state = initial if initial is not None else _initial_state(problem, config)
    problem.check_state(state)

    rng = np.random.default_rng(config.seed)
    phases = [np.array(p, dtype=np.float64) for p in state.layer_phases]
    coefficients = [np.exp(1j * p) for p in phases]
    alpha = state.alpha
    chain = problem.chain
    n = problem.n_layers
    streams = problem.streams

    H = chain_product(chain, coefficients, 0, n)
    J = _residual_energy(H, problem.target(alpha))
    objective_trace = [J]
    nmse_trace = [_normalized(J, alpha, streams)]
    converged = False
    iterations = 0

    for iteration in range(1, config.max_iterations + 1):
        suffixes = _suffixes(chain, coefficients)
        target = problem.target(alpha)
        prefix = chain[0]
        for p in range(1, n + 1):
            _sweep_layer(
                p,
                suffixes[p],
                prefix,
                phases,
                coefficients,
                problem,
                target,
                config,
                rng,
                observer,
            )
            prefix = chain[p] @ (coefficients[p - 1][:, np.newaxis] * prefix)

        H = prefix
        before = _residual_energy(H, target)
        alpha = alpha_update(H, problem.target_phase)
        previous = objective_trace[-1]
        J = _residual_energy(H, problem.target(alpha))
        if observer is not None:
            observer.on_alpha_update(before, J)

        objective_trace.append(J)
        nmse_trace.append(_normalized(J, alpha, streams))
        iterations = iteration
        logger.debug(
            "sweep %d: J=%.6e nmse=%.6e alpha=%.6e",
            iteration,
            J,
            nmse_trace[-1],
            alpha,
        )

        decrement = previous - J
        if config.threshold_mode == "normalized" and alpha != 0.0:
            decrement /= alpha * alpha * streams
        if decrement < config.objective_decrement_threshold:
            converged = True
            break

    logger.debug(
        "%s AO finished after %d sweeps (converged=%s, nmse=%.3e)",
        problem.architecture.value,
        iterations,
        converged,
        nmse_trace[-1],
    )
    return FitResult(
        state=PhaseState(tuple(phases), alpha),
        objective_trace=tuple(objective_trace),
        nmse_trace=tuple(nmse_trace),
        iterations_used=iterations,
        converged=converged,
    )


def run_ao_2layer(
    problem: FitProblem,
    config: SolverConfig | None = None,
    *,
    observer: UpdateObserver | None = None,
    initial: PhaseState | None = None,
) -> FitResult:
    """AO for the meta-fiber-connected 2-layer SIM (layers Phi1, Phi2, Psi2, Psi1)."""
    require_architecture(problem, Architecture.TWO_LAYER)
    return run_ao(problem, config, observer=observer, initial=initial)


def run_ao_multilayer(
    problem: FitProblem,
    config: SolverConfig | None = None,
    *,
    observer: UpdateObserver | None = None,
    initial: PhaseState | None = None,
) -> FitResult:
    """AO for the conventional diffraction SIM, sweeping p = 1..L+K."""
    require_architecture(problem, Architecture.MULTI_LAYER)
    return run_ao(problem, config, observer=observer, initial=initial)
