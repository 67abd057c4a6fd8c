"""Factory functions that turn an experiment configuration into solver inputs."""

from ..channel.diffraction import build_diffraction_stack
from ..channel.propagation import dbm_to_watts, path_gain, sample_rayleigh_channel
from ..channel.topology import LinkBudget, MultiLayerTopology, TwoLayerTopology
from ..core.config import ExperimentConfig, load_config
from ..core.types import PathGainConvention, Side
from ..metrics.attenuation import apply_attenuation
from ..optimizer.state import FitProblem, SolverConfig


def two_layer_topology(
    config: ExperimentConfig | None = None,
    *,
    streams: int | None = None,
    m_atoms: int | None = None,
    n_atoms: int | None = None,
) -> TwoLayerTopology:
    """Meta-fiber SIM dimensions from ``config`` with optional per-point overrides."""
    if config is None:
        config = load_config()
    return TwoLayerTopology(
        streams=streams if streams is not None else config.streams,
        m_atoms=m_atoms if m_atoms is not None else config.m_atoms,
        n_atoms=n_atoms if n_atoms is not None else config.n_atoms,
        rho1_mag=config.rho1_mag,
        psi1=config.psi1,
        rho2_mag=config.rho2_mag,
        psi2=config.psi2,
    )


def multi_layer_topology(
    config: ExperimentConfig | None = None,
    *,
    streams: int | None = None,
) -> MultiLayerTopology:
    """Conventional SIM dimensions; spacings default to half a wavelength."""
    if config is None:
        config = load_config()
    half = config.wavelength_m / 2
    return MultiLayerTopology(
        streams=streams if streams is not None else config.streams,
        tx_layers=config.tx_layers,
        rx_layers=config.rx_layers,
        tx_atoms=config.tx_layer_atoms,
        rx_atoms=config.rx_layer_atoms,
        wavelength=config.wavelength_m,
        atom_spacing=config.atom_spacing_m or half,
        layer_spacing=config.layer_spacing_m or half,
        atom_area=config.atom_area_m2,
    )


def link_budget(
    config: ExperimentConfig | None = None,
    *,
    distance_m: float | None = None,
    pt_dbm: float | None = None,
) -> LinkBudget:
    """Link budget with powers converted from dBm to watts."""
    if config is None:
        config = load_config()
    return LinkBudget(
        distance_m=distance_m if distance_m is not None else config.distance_m,
        gamma=config.path_loss_exponent,
        wavelength=config.wavelength_m,
        pt=dbm_to_watts(pt_dbm if pt_dbm is not None else config.pt_dbm),
        n0=dbm_to_watts(config.n0_dbm),
        beta0=config.reference_gain,
    )


def solver_config(config: ExperimentConfig, *, seed: int = 0) -> SolverConfig:
    return SolverConfig(
        max_iterations=config.max_iterations,
        objective_decrement_threshold=config.objective_decrement_threshold,
        threshold_mode=config.threshold_mode,
        initialization=config.initialization,
        update_order=config.update_order,
        seed=seed,
    )


def attenuate_problem(problem: FitProblem, ratio: float) -> FitProblem:
    """Scale every metasurface transmission matrix (all but G) by sqrt(1 - ratio)."""
    if ratio == 0.0:
        return problem
    index = problem.tx_layers
    tx = apply_attenuation(problem.chain[:index], ratio)
    rx = apply_attenuation(problem.chain[index + 1 :], ratio)
    return FitProblem(
        (*tx, problem.chain[index], *rx),
        problem.tx_layers,
        problem.architecture,
        problem.target_phase,
    )


def build_two_layer_problem(
    topology: TwoLayerTopology,
    budget: LinkBudget,
    seed: int,
    *,
    convention: PathGainConvention = PathGainConvention.FREE_SPACE_GAIN,
    attenuation_ratio: float = 0.0,
) -> FitProblem:
    """Draw G (NS x MS) and assemble the meta-fiber chain.

    Args:
        topology: Meta-fiber SIM dimensions.
        budget: Distance, exponent and powers of the link.
        seed: Seed of the channel draw.
        convention: How the reference path gain is interpreted.
        attenuation_ratio: Energy fraction lost per metasurface layer.

    Returns:
        A FitProblem ready for run_ao_2layer.
    """
    beta = path_gain(budget, convention)
    channel = sample_rayleigh_channel(
        topology.rx_input_atoms, topology.tx_output_atoms, beta, seed
    )
    problem = FitProblem.two_layer(topology, channel)
    return attenuate_problem(problem, attenuation_ratio)


def build_multi_layer_problem(
    topology: MultiLayerTopology,
    budget: LinkBudget,
    seed: int,
    *,
    convention: PathGainConvention = PathGainConvention.FREE_SPACE_GAIN,
    attenuation_ratio: float = 0.0,
) -> FitProblem:
    """Draw G (U x W) and assemble the diffraction chain W^1..W^L, G, U^K..U^1."""
    beta = path_gain(budget, convention)
    channel = sample_rayleigh_channel(topology.rx_atoms, topology.tx_atoms, beta, seed)
    problem = FitProblem.multi_layer(
        build_diffraction_stack(topology, Side.TX),
        channel,
        build_diffraction_stack(topology, Side.RX),
    )
    return attenuate_problem(problem, attenuation_ratio)
