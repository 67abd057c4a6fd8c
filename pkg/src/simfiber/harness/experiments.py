"""Experiment runners: channel draws, solver runs, metrics and Monte Carlo averaging.

Every trial draws from a seed derived from (master seed, trial index), shared
by all sweep points, and splits it further into independent streams per
random ingredient. Trials of one point run concurrently on ``workers``
threads; the returned records are always in canonical order.
"""

import logging
import math
import time
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Any, TypeVar

import numpy as np
from scipy.stats import linregress

from ..baselines.svd import svd_ideal_transceivers
from ..baselines.zero_forcing import zf_gain
from ..channel.propagation import dbm_to_watts, path_gain, sample_rayleigh_channel
from ..channel.topology import (
    LinkBudget,
    MultiLayerTopology,
    TwoLayerTopology,
    count_meta_atoms,
)
from ..core.config import ExperimentConfig
from ..core.exceptions import ZeroGainError
from ..core.types import Architecture, ComplexMatrix, ExperimentKind
from ..factories.problems import (
    build_multi_layer_problem,
    build_two_layer_problem,
    link_budget,
    multi_layer_topology,
    solver_config,
    two_layer_topology,
)
from ..infrastructure.seeding import derive_seed
from ..metrics.ber import BerConfig, ber_qpsk, qpsk_ber_theory
from ..metrics.capacity import (
    CapacityInputs,
    capacity_exact,
    capacity_upper_bound,
    zf_capacity,
)
from ..metrics.nmse import nmse, offdiagonal_energy_ratio
from ..optimizer.ao import run_ao_2layer, run_ao_multilayer
from ..optimizer.chain import equivalent_channel
from ..optimizer.state import FitProblem, FitResult, SolverConfig
from ..optimizer.updates import alpha_update
from .records import ResultRecord, canonical_order

logger = logging.getLogger(__name__)

T = TypeVar("T")

# sub-stream keys below a trial seed
TWO_LAYER_CHANNEL = 0
MULTI_LAYER_CHANNEL = 1
ZF_CHANNEL = 2
BER_NOISE = 3
SOLVER = 4

DEFAULT_SWEEPS: dict[ExperimentKind, list[float]] = {
    ExperimentKind.SWEEP_ATOMS: [1, 3, 5, 7, 9],
    ExperimentKind.SWEEP_STREAMS: [1, 2, 4, 6, 8],
    ExperimentKind.SWEEP_DISTANCE: [50, 100, 150, 200, 250, 300],
    ExperimentKind.SWEEP_ATTENUATION: [0.0, 0.05, 0.1, 0.15, 0.2],
    ExperimentKind.CAPACITY_COMPARE: [50, 100, 150, 200, 250, 300],
    ExperimentKind.BER_CURVE: [-20, -15, -10, -5, 0, 5, 10],
}

LINK_METRICS = {"nmse", "capacity", "capacity_bound"}

# config fields that steer the run but do not describe a result
_RUN_CONTROL = {
    "output",
    "output_format",
    "workers",
    "record_timing",
    "sweep_values",
    "heatmap_atoms",
    "bench_atoms",
}


def resolve_sweep_values(config: ExperimentConfig) -> list[float]:
    """Grid of the swept parameter: configured values or the per-kind default.

    heatmap and scaling_bench sweep ``heatmap_atoms`` / ``bench_atoms``;
    convergence has the single point 0.
    """
    if config.kind == ExperimentKind.HEATMAP:
        return [float(v) for v in config.heatmap_atoms]
    if config.kind == ExperimentKind.SCALING_BENCH:
        return [float(v) for v in config.bench_atoms]
    if config.kind == ExperimentKind.CONVERGENCE:
        return [0.0]
    if config.sweep_values is not None:
        return list(config.sweep_values)
    return list(DEFAULT_SWEEPS[config.kind])


@dataclass(frozen=True)
class Fit:
    """A solved problem with its equivalent channel and solver wall time."""

    problem: FitProblem
    result: FitResult
    H: ComplexMatrix
    seconds: float

    @property
    def alpha(self) -> float:
        return self.result.state.alpha


@dataclass(frozen=True)
class _Point:
    """Everything a trial of one sweep point needs."""

    index: int
    budget: LinkBudget
    two_layer: TwoLayerTopology
    multi_layer: MultiLayerTopology | None
    attenuation_ratio: float
    overrides: dict[str, Any]


class _Recorder:
    """Builds records sharing the kind, the config's params and the timing flag."""

    def __init__(self, config: ExperimentConfig) -> None:
        self.config = config
        self.kind = config.kind.value
        self.base = config.model_dump(mode="json", exclude=_RUN_CONTROL)

    def params(self, architecture: Architecture, **overrides: Any) -> dict[str, Any]:
        params = dict(self.base)
        params.update(overrides)
        params["architecture"] = architecture.value
        return params

    def record(
        self,
        params: dict[str, Any],
        point: int,
        trial: int | None,
        seed: int,
        metric: str,
        value: float,
        *,
        iteration: int | None = None,
        seconds: float | None = None,
    ) -> ResultRecord:
        return ResultRecord(
            kind=self.kind,
            point=point,
            trial=trial,
            seed=seed,
            metric=metric,
            value=float(value),
            iteration=iteration,
            duration_s=seconds if self.config.record_timing else None,
            params=params,
        )


def _map_trials(config: ExperimentConfig, task: Callable[[int], T]) -> list[T]:
    """Run task(trial) for every trial, results in trial order."""
    if config.workers == 1 or config.trials == 1:
        return [task(trial) for trial in range(config.trials)]
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        return list(pool.map(task, range(config.trials)))


def _trial_seed(config: ExperimentConfig, trial: int) -> int:
    return derive_seed(config.seed, trial)


def fit_problem(problem: FitProblem, settings: SolverConfig) -> Fit:
    """Run the AO loop matching the problem's architecture and time it."""
    start = time.perf_counter()
    if problem.architecture == Architecture.TWO_LAYER:
        result = run_ao_2layer(problem, settings)
    else:
        result = run_ao_multilayer(problem, settings)
    seconds = time.perf_counter() - start
    return Fit(problem, result, equivalent_channel(result.state, problem), seconds)


def _safe_nmse(H: ComplexMatrix, alpha: float) -> float:
    try:
        return nmse(H, alpha)
    except ZeroGainError:
        return math.inf


def link_metrics(
    H: ComplexMatrix, alpha: float, budget: LinkBudget, config: ExperimentConfig
) -> dict[str, float]:
    """nmse, capacity and capacity_bound of one equivalent channel."""
    inputs = CapacityInputs(H=H, alpha=alpha, pt=budget.pt, n0=budget.n0)
    return {
        "nmse": _safe_nmse(H, alpha),
        "capacity": capacity_exact(inputs, config.capacity_formula),
        "capacity_bound": capacity_upper_bound(
            alpha, budget.pt, budget.n0, H.shape[0]
        ),
    }


def _aggregate(
    records: Sequence[ResultRecord], metrics: set[str], master_seed: int
) -> list[ResultRecord]:
    """Mean and sample standard deviation over trials of the chosen metrics."""
    groups: dict[tuple[Any, ...], list[ResultRecord]] = {}
    for r in records:
        if r.trial is None or r.metric not in metrics:
            continue
        key = (r.point, r.metric, r.architecture, r.iteration)
        groups.setdefault(key, []).append(r)

    aggregates = []
    for (point, metric, _, iteration), members in groups.items():
        values = np.array([m.value for m in members])
        std = float(np.std(values, ddof=1)) if len(values) > 1 else 0.0
        for suffix, value in (("mean", float(np.mean(values))), ("std", std)):
            aggregates.append(
                ResultRecord(
                    kind=members[0].kind,
                    point=point,
                    trial=None,
                    seed=master_seed,
                    metric=f"{metric}_{suffix}",
                    value=value,
                    iteration=iteration,
                    params=members[0].params,
                )
            )
    return aggregates


def _two_layer_fit(config: ExperimentConfig, point: _Point, trial: int) -> Fit:
    seed = _trial_seed(config, trial)
    problem = build_two_layer_problem(
        point.two_layer,
        point.budget,
        derive_seed(seed, TWO_LAYER_CHANNEL),
        convention=config.path_gain_convention,
        attenuation_ratio=point.attenuation_ratio,
    )
    return fit_problem(problem, solver_config(config, seed=derive_seed(seed, SOLVER)))


def _multi_layer_fit(config: ExperimentConfig, point: _Point, trial: int) -> Fit:
    if point.multi_layer is None:
        raise ValueError("point has no multi-layer topology")
    seed = _trial_seed(config, trial)
    problem = build_multi_layer_problem(
        point.multi_layer,
        point.budget,
        derive_seed(seed, MULTI_LAYER_CHANNEL),
        convention=config.path_gain_convention,
        attenuation_ratio=point.attenuation_ratio,
    )
    return fit_problem(problem, solver_config(config, seed=derive_seed(seed, SOLVER)))


def _zf_channel(
    config: ExperimentConfig, budget: LinkBudget, trial: int
) -> ComplexMatrix:
    """S x S conventional MIMO channel with the SIM link's path gain."""
    return sample_rayleigh_channel(
        config.streams,
        config.streams,
        path_gain(budget, config.path_gain_convention),
        derive_seed(_trial_seed(config, trial), ZF_CHANNEL),
    )


def _point(
    config: ExperimentConfig,
    index: int,
    *,
    two_layer: TwoLayerTopology | None = None,
    budget: LinkBudget | None = None,
    with_multi_layer: bool = False,
    ratio: float | None = None,
    **overrides: Any,
) -> _Point:
    return _Point(
        index=index,
        budget=budget if budget is not None else link_budget(config),
        two_layer=two_layer if two_layer is not None else two_layer_topology(config),
        multi_layer=multi_layer_topology(config) if with_multi_layer else None,
        attenuation_ratio=config.attenuation_ratio if ratio is None else ratio,
        overrides=overrides,
    )


def _run_convergence(config: ExperimentConfig) -> list[ResultRecord]:
    recorder = _Recorder(config)
    point = _point(config, 0)
    params = recorder.params(Architecture.TWO_LAYER)
    fits = _map_trials(config, partial(_two_layer_fit, config, point))

    records: list[ResultRecord] = []
    length = config.max_iterations + 1
    for trial, fit in enumerate(fits):
        seed = _trial_seed(config, trial)
        # a converged run keeps its state, so its trace is held at the final value
        for name, trace in (
            ("objective", fit.result.objective_trace),
            ("nmse", fit.result.nmse_trace),
        ):
            padded = list(trace) + [trace[-1]] * (length - len(trace))
            for iteration, value in enumerate(padded):
                records.append(
                    recorder.record(
                        params, 0, trial, seed, name, value, iteration=iteration
                    )
                )
        capacity = link_metrics(fit.H, fit.alpha, point.budget, config)["capacity"]
        records.append(
            recorder.record(
                params, 0, trial, seed, "capacity", capacity, seconds=fit.seconds
            )
        )
        records.append(
            recorder.record(
                params, 0, trial, seed, "iterations_used", fit.result.iterations_used
            )
        )
    records.extend(_aggregate(records, {"nmse", "capacity"}, config.seed))
    return records


def _heatmap_trial(
    config: ExperimentConfig,
    recorder: _Recorder,
    point: _Point,
    params: dict[str, Any],
    trial: int,
) -> list[ResultRecord]:
    seed = _trial_seed(config, trial)
    fit = _two_layer_fit(config, point, trial)
    rows = [
        recorder.record(params, point.index, trial, seed, f"abs_h[{i},{j}]", value)
        for (i, j), value in np.ndenumerate(np.abs(fit.H))
    ]
    rows.append(
        recorder.record(
            params,
            point.index,
            trial,
            seed,
            "offdiag_energy_ratio",
            offdiagonal_energy_ratio(fit.H),
            seconds=fit.seconds,
        )
    )
    rows.append(
        recorder.record(
            params, point.index, trial, seed, "nmse", _safe_nmse(fit.H, fit.alpha)
        )
    )
    return rows


def _run_heatmap(config: ExperimentConfig) -> list[ResultRecord]:
    recorder = _Recorder(config)
    records: list[ResultRecord] = []
    for index, atoms in enumerate(config.heatmap_atoms):
        point = _point(
            config,
            index,
            two_layer=two_layer_topology(config, m_atoms=atoms, n_atoms=atoms),
        )
        params = recorder.params(Architecture.TWO_LAYER, m_atoms=atoms, n_atoms=atoms)
        task = partial(_heatmap_trial, config, recorder, point, params)
        for rows in _map_trials(config, task):
            records.extend(rows)
        logger.info("heatmap point %d (M=N=%d) done", index, atoms)
    records.extend(
        _aggregate(records, {"offdiag_energy_ratio", "nmse"}, config.seed)
    )
    return records


def _sweep_trial(
    config: ExperimentConfig, recorder: _Recorder, point: _Point, trial: int
) -> list[ResultRecord]:
    seed = _trial_seed(config, trial)
    fit = _two_layer_fit(config, point, trial)
    params = recorder.params(Architecture.TWO_LAYER, **point.overrides)
    metrics = link_metrics(fit.H, fit.alpha, point.budget, config)
    rows = [
        recorder.record(
            params, point.index, trial, seed, name, value, seconds=fit.seconds
        )
        for name, value in metrics.items()
    ]
    if config.kind == ExperimentKind.SWEEP_DISTANCE:
        channel = fit.problem.channel
        precoder, combiner = svd_ideal_transceivers(channel, point.two_layer.streams)
        H = combiner @ channel @ precoder
        svd_params = recorder.params(Architecture.SVD_IDEAL, **point.overrides)
        rows.extend(
            recorder.record(svd_params, point.index, trial, seed, name, value)
            for name, value in link_metrics(
                H, alpha_update(H), point.budget, config
            ).items()
        )
    return rows


def _run_two_layer_sweep(config: ExperimentConfig) -> list[ResultRecord]:
    """sweep_atoms, sweep_streams and sweep_distance."""
    recorder = _Recorder(config)
    records: list[ResultRecord] = []
    for index, value in enumerate(resolve_sweep_values(config)):
        if config.kind == ExperimentKind.SWEEP_ATOMS:
            atoms = int(value)
            m_atoms = atoms if config.sweep_side != "rx" else config.m_atoms
            n_atoms = atoms if config.sweep_side != "tx" else config.n_atoms
            point = _point(
                config,
                index,
                two_layer=two_layer_topology(
                    config, m_atoms=m_atoms, n_atoms=n_atoms
                ),
                m_atoms=m_atoms,
                n_atoms=n_atoms,
            )
        elif config.kind == ExperimentKind.SWEEP_STREAMS:
            streams = int(value)
            point = _point(
                config,
                index,
                two_layer=two_layer_topology(config, streams=streams),
                streams=streams,
            )
        else:
            point = _point(
                config,
                index,
                budget=link_budget(config, distance_m=value),
                distance_m=value,
            )
        for rows in _map_trials(config, partial(_sweep_trial, config, recorder, point)):
            records.extend(rows)
        logger.info("%s point %d (%s) done", config.kind.value, index, value)
    records.extend(_aggregate(records, LINK_METRICS, config.seed))
    return records


def _comparison_trial(
    config: ExperimentConfig, recorder: _Recorder, point: _Point, trial: int
) -> list[ResultRecord]:
    seed = _trial_seed(config, trial)
    rows: list[ResultRecord] = []
    for architecture, fit in (
        (Architecture.TWO_LAYER, _two_layer_fit(config, point, trial)),
        (Architecture.MULTI_LAYER, _multi_layer_fit(config, point, trial)),
    ):
        params = recorder.params(architecture, **point.overrides)
        rows.extend(
            recorder.record(
                params, point.index, trial, seed, name, value, seconds=fit.seconds
            )
            for name, value in link_metrics(
                fit.H, fit.alpha, point.budget, config
            ).items()
        )
    if config.kind == ExperimentKind.CAPACITY_COMPARE:
        total_power = config.streams * point.budget.pt
        gain = zf_gain(_zf_channel(config, point.budget, trial), total_power)
        rows.append(
            recorder.record(
                recorder.params(Architecture.ZERO_FORCING, **point.overrides),
                point.index,
                trial,
                seed,
                "capacity",
                zf_capacity(gain, point.budget.n0, config.streams),
            )
        )
    return rows


def _meta_atom_records(
    config: ExperimentConfig, recorder: _Recorder
) -> list[ResultRecord]:
    counts = count_meta_atoms(two_layer_topology(config), multi_layer_topology(config))
    two_params = recorder.params(Architecture.TWO_LAYER)
    return [
        recorder.record(
            two_params, 0, None, config.seed, "meta_atoms", counts.two_layer_total
        ),
        recorder.record(
            recorder.params(Architecture.MULTI_LAYER),
            0,
            None,
            config.seed,
            "meta_atoms",
            counts.multi_layer_total,
        ),
        recorder.record(
            two_params, 0, None, config.seed, "meta_atom_reduction", counts.reduction
        ),
    ]


def _run_architecture_comparison(config: ExperimentConfig) -> list[ResultRecord]:
    """sweep_attenuation and capacity_compare."""
    recorder = _Recorder(config)
    compare = config.kind == ExperimentKind.CAPACITY_COMPARE
    records = _meta_atom_records(config, recorder) if compare else []
    for index, value in enumerate(resolve_sweep_values(config)):
        if compare:
            point = _point(
                config,
                index,
                budget=link_budget(config, distance_m=value),
                with_multi_layer=True,
                distance_m=value,
            )
        else:
            point = _point(
                config,
                index,
                with_multi_layer=True,
                ratio=value,
                attenuation_ratio=value,
            )
        task = partial(_comparison_trial, config, recorder, point)
        for rows in _map_trials(config, task):
            records.extend(rows)
        logger.info("%s point %d (%s) done", config.kind.value, index, value)
    records.extend(_aggregate(records, LINK_METRICS, config.seed))
    return records


def _ber_fits(
    config: ExperimentConfig, point: _Point, trial: int
) -> tuple[Fit, Fit, ComplexMatrix]:
    return (
        _two_layer_fit(config, point, trial),
        _multi_layer_fit(config, point, trial),
        _zf_channel(config, point.budget, trial),
    )


def _ber_trial(
    config: ExperimentConfig,
    recorder: _Recorder,
    fits: list[tuple[Fit, Fit, ComplexMatrix]],
    index: int,
    pt_dbm: float,
    trial: int,
) -> list[ResultRecord]:
    seed = _trial_seed(config, trial)
    pt = dbm_to_watts(pt_dbm)
    n0 = dbm_to_watts(config.n0_dbm)
    two, multi, channel = fits[trial]
    ber_config = BerConfig(
        n_symbols=config.ber_symbols,
        seed=derive_seed(seed, BER_NOISE, index),
        block_size=config.ber_block_size,
    )
    rows = []
    for architecture, fit in (
        (Architecture.TWO_LAYER, two),
        (Architecture.MULTI_LAYER, multi),
    ):
        inputs = CapacityInputs(H=fit.H, alpha=fit.alpha, pt=pt, n0=n0)
        rows.append(
            recorder.record(
                recorder.params(architecture, pt_dbm=pt_dbm),
                index,
                trial,
                seed,
                "ber",
                ber_qpsk(fit.H, inputs, ber_config),
            )
        )
    theory = qpsk_ber_theory(two.alpha * two.alpha * pt / n0)
    rows.append(
        recorder.record(
            recorder.params(Architecture.TWO_LAYER, pt_dbm=pt_dbm),
            index,
            trial,
            seed,
            "ber_theory",
            float(theory),
        )
    )
    # precoded symbols already carry the transmit power: y = c s + n
    gain = zf_gain(channel, config.streams * pt)
    effective = gain * np.eye(config.streams, dtype=np.complex128)
    zf_inputs = CapacityInputs(H=effective, alpha=gain, pt=1.0, n0=n0)
    rows.append(
        recorder.record(
            recorder.params(Architecture.ZERO_FORCING, pt_dbm=pt_dbm),
            index,
            trial,
            seed,
            "ber",
            ber_qpsk(effective, zf_inputs, ber_config),
        )
    )
    return rows


def _run_ber_curve(config: ExperimentConfig) -> list[ResultRecord]:
    """BER per transmit power; fits do not depend on power and are reused."""
    recorder = _Recorder(config)
    base = _point(config, 0, with_multi_layer=True)
    fits = _map_trials(config, partial(_ber_fits, config, base))
    records: list[ResultRecord] = []
    for index, pt_dbm in enumerate(resolve_sweep_values(config)):
        task = partial(_ber_trial, config, recorder, fits, index, pt_dbm)
        for rows in _map_trials(config, task):
            records.extend(rows)
        logger.info("ber_curve point %d (%.1f dBm) done", index, pt_dbm)
    records.extend(_aggregate(records, {"ber", "ber_theory"}, config.seed))
    return records


def _run_scaling_bench(config: ExperimentConfig) -> list[ResultRecord]:
    """Seconds per 2-layer sweep against M (= N); the fastest trial counts.

    Alongside the clock, sweep_multiply_adds counts the S^2 Q multiply-adds of
    every incremental atom update, S^2 * sum(Q_q^2) per sweep.
    """
    recorder = _Recorder(config)
    budget = link_budget(config)
    settings = SolverConfig(max_iterations=1, objective_decrement_threshold=0.0)
    streams = config.bench_streams
    records: list[ResultRecord] = []
    fastest: list[float] = []
    work: list[float] = []
    for index, atoms in enumerate(config.bench_atoms):
        topology = two_layer_topology(
            config, streams=streams, m_atoms=atoms, n_atoms=atoms
        )
        params = recorder.params(
            Architecture.TWO_LAYER, m_atoms=atoms, n_atoms=atoms, streams=streams
        )
        timings = []
        sizes: tuple[int, ...] = ()
        # sequential so that measurements do not compete for the CPU
        for trial in range(config.trials):
            seed = _trial_seed(config, trial)
            problem = build_two_layer_problem(
                topology,
                budget,
                derive_seed(seed, TWO_LAYER_CHANNEL),
                convention=config.path_gain_convention,
            )
            sizes = problem.layer_sizes
            seconds = fit_problem(problem, settings).seconds
            timings.append(seconds)
            records.append(
                recorder.record(
                    params, index, trial, seed, "sweep_seconds", seconds
                )
            )
        fastest.append(min(timings))
        work.append(float(streams**2 * sum(q * q for q in sizes)))
        records.append(
            recorder.record(
                params, index, None, config.seed, "sweep_multiply_adds", work[-1]
            )
        )
        records.append(
            recorder.record(
                params, index, None, config.seed, "sweep_seconds_min", fastest[-1]
            )
        )
        logger.info("scaling_bench M=%d: %.3e s per sweep", atoms, fastest[-1])

    if len(fastest) >= 2:
        params = recorder.params(Architecture.TWO_LAYER, streams=streams)
        # the fit spans bench_atoms, not the config's own M and N
        del params["m_atoms"], params["n_atoms"]
        params["bench_atoms"] = list(config.bench_atoms)
        x = np.log(config.bench_atoms)
        line = linregress(x, np.log(fastest))
        modeled = linregress(x, np.log(work))
        for metric, value in (
            ("loglog_slope", line.slope),
            ("r_squared", line.rvalue**2),
            ("work_loglog_slope", modeled.slope),
        ):
            records.append(recorder.record(params, 0, None, config.seed, metric, value))
    return records


_RUNNERS: dict[ExperimentKind, Callable[[ExperimentConfig], list[ResultRecord]]] = {
    ExperimentKind.CONVERGENCE: _run_convergence,
    ExperimentKind.HEATMAP: _run_heatmap,
    ExperimentKind.SWEEP_ATOMS: _run_two_layer_sweep,
    ExperimentKind.SWEEP_STREAMS: _run_two_layer_sweep,
    ExperimentKind.SWEEP_DISTANCE: _run_two_layer_sweep,
    ExperimentKind.SWEEP_ATTENUATION: _run_architecture_comparison,
    ExperimentKind.CAPACITY_COMPARE: _run_architecture_comparison,
    ExperimentKind.BER_CURVE: _run_ber_curve,
    ExperimentKind.SCALING_BENCH: _run_scaling_bench,
}


def run_experiment(config: ExperimentConfig) -> list[ResultRecord]:
    """Run the configured experiment and return its records in canonical order.

    Identical configurations (master seed included) give identical records,
    apart from the wall-clock values of scaling_bench and of timed runs.
    """
    logger.info(
        "running %s: %d trials, seed %d, %d workers",
        config.kind.value,
        config.trials,
        config.seed,
        config.workers,
    )
    records = _RUNNERS[config.kind](config)
    logger.info("%s produced %d records", config.kind.value, len(records))
    return canonical_order(records)
