"""End-to-end products of the layer chain and their cascade factorizations."""

from collections.abc import Sequence

import numpy as np

from ..core.exceptions import ConfigurationError, LayerIndexError
from ..core.types import Architecture, ComplexMatrix
from .state import FitProblem, PhaseState


def chain_product(
    chain: Sequence[ComplexMatrix],
    coefficients: Sequence[ComplexMatrix],
    first: int,
    last: int,
) -> ComplexMatrix:
    """F_last Phi_last ... Phi_{first+1} F_first for 0 <= first <= last.

    ``coefficients[p - 1]`` holds the diagonal of Phi_p.
    """
    product = chain[first]
    for index in range(first + 1, last + 1):
        product = chain[index] @ (coefficients[index - 1][:, np.newaxis] * product)
    return product


def equivalent_channel(state: PhaseState, problem: FitProblem) -> ComplexMatrix:
    """H = Q G P, the S x S end-to-end channel."""
    problem.check_state(state)
    return chain_product(problem.chain, state.coefficients(), 0, problem.n_layers)


def assemble_precoder(state: PhaseState, problem: FitProblem) -> ComplexMatrix:
    """P = Phi^L W^L ... Phi^1 W^1 (2-layer: Phi2 W2 Phi1 W1)."""
    problem.check_state(state)
    coefficients = state.coefficients()
    last = problem.tx_layers
    inner = chain_product(problem.chain, coefficients, 0, last - 1)
    return coefficients[last - 1][:, np.newaxis] * inner


def assemble_combiner(state: PhaseState, problem: FitProblem) -> ComplexMatrix:
    """Q = U^1 Psi^1 ... U^K Psi^K (2-layer: U1 Psi1 U2 Psi2)."""
    problem.check_state(state)
    coefficients = state.coefficients()
    first = problem.tx_layers + 1
    outer = chain_product(problem.chain, coefficients, first, problem.n_layers)
    return outer * coefficients[first - 1][np.newaxis, :]


def objective(state: PhaseState, problem: FitProblem) -> float:
    """J = ||QGP - alpha exp(j zeta) I||_F^2."""
    residual = equivalent_channel(state, problem) - problem.target(state.alpha)
    return float(np.vdot(residual, residual).real)


def cascades(
    p: int, state: PhaseState, problem: FitProblem
) -> tuple[ComplexMatrix, ComplexMatrix]:
    """Factor the chain around phase layer p so that R @ diag(Phi_p) @ T = QGP.

    R (S x Q_p) spans from layer p to the receive ports, T (Q_p x S) from the
    transmit ports to layer p.

    Raises:
        LayerIndexError: If p is outside 1..n.
    """
    if not 1 <= p <= problem.n_layers:
        raise LayerIndexError(p, 1, problem.n_layers)
    problem.check_state(state)
    coefficients = state.coefficients()
    suffix = chain_product(problem.chain, coefficients, p, problem.n_layers)
    prefix = chain_product(problem.chain, coefficients, 0, p - 1)
    return suffix, prefix


def require_architecture(problem: FitProblem, architecture: Architecture) -> None:
    if problem.architecture != architecture:
        raise ConfigurationError(
            "architecture",
            f"expected a {architecture.value} problem, "
            f"got {problem.architecture.value}",
        )


def cascades_2layer(
    q: int, state: PhaseState, problem: FitProblem
) -> tuple[ComplexMatrix, ComplexMatrix]:
    """Cascades of the meta-fiber SIM.

    q = 1, 2 are Phi1, Phi2 and q = 3, 4 are Psi2, Psi1.
    """
    require_architecture(problem, Architecture.TWO_LAYER)
    if not 1 <= q <= 4:
        raise LayerIndexError(q, 1, 4)
    return cascades(q, state, problem)


def cascades_multilayer(
    p: int, state: PhaseState, problem: FitProblem
) -> tuple[ComplexMatrix, ComplexMatrix]:
    """Cascades of the diffraction SIM; p > L addresses Psi^(L+K-p+1)."""
    require_architecture(problem, Architecture.MULTI_LAYER)
    return cascades(p, state, problem)
