"""Command-line entry point.

    simfiber run --config <file> [--out <path>] [--format csv|jsonl]
                 [--workers N] [--seed S] [--log-level LEVEL]
    simfiber validate --config <file>
    simfiber bench --kind scaling_bench [--config <file>] [--out <path>]

Exit codes: 0 success, 1 invalid configuration, 2 runtime failure.
"""

import argparse
import logging
import os
import sys
from collections.abc import Sequence
from pathlib import Path

from .. import __version__
from ..core.config import ExperimentConfig, load_config, load_config_file
from ..core.exceptions import ConfigurationError, SimFiberError
from ..core.types import ExperimentKind, OutputFormat
from .experiments import run_experiment
from .records import ResultRecord, emit_results, write_results

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID_CONFIG = 1
EXIT_RUNTIME_FAILURE = 2


def configure_logging(level: str | int = logging.WARNING) -> None:
    """Send library logs to stderr at ``level``."""
    if isinstance(level, str):
        level = level.upper()
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simfiber",
        description="SIM channel diagonalization experiments",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "--log-level",
        default=os.environ.get("SIMFIBER_LOG_LEVEL", "WARNING"),
        help="DEBUG, INFO, WARNING or ERROR (env SIMFIBER_LOG_LEVEL)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run the experiment described by a file")
    run.add_argument("--config", type=Path, required=True, help="TOML experiment file")
    _add_output_arguments(run)
    run.add_argument("--workers", type=int, default=None, help="concurrent trials")
    run.add_argument("--seed", type=int, default=None, help="master seed")

    validate = commands.add_parser("validate", help="check an experiment file")
    validate.add_argument("--config", type=Path, required=True)

    bench = commands.add_parser("bench", help="time the 2-layer AO sweep")
    bench.add_argument(
        "--kind",
        choices=[ExperimentKind.SCALING_BENCH.value],
        default=ExperimentKind.SCALING_BENCH.value,
    )
    bench.add_argument("--config", type=Path, default=None)
    _add_output_arguments(bench)
    return parser


def _add_output_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", type=Path, default=None, help="results file")
    parser.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=None,
        help="defaults to the file suffix, jsonl for heatmaps, csv otherwise",
    )


def resolve_output_format(
    config: ExperimentConfig, path: Path | None
) -> OutputFormat:
    """Explicit format, then the file suffix, then jsonl for heatmaps, then csv."""
    if config.output_format is not None:
        return config.output_format
    if path is not None and path.suffix in (".jsonl", ".ndjson"):
        return OutputFormat.JSON_LINES
    if path is not None and path.suffix == ".csv":
        return OutputFormat.CSV
    if config.kind == ExperimentKind.HEATMAP:
        return OutputFormat.JSON_LINES
    return OutputFormat.CSV


def _publish(records: list[ResultRecord], config: ExperimentConfig) -> None:
    fmt = resolve_output_format(config, config.output)
    if config.output is None:
        write_results(records, sys.stdout, fmt)
        return
    path = emit_results(records, config.output, fmt)
    logger.info("wrote %d records to %s", len(records), path)


def _load(args: argparse.Namespace) -> ExperimentConfig:
    overrides: dict[str, object] = {
        "output": getattr(args, "out", None),
        "output_format": getattr(args, "format", None),
        "workers": getattr(args, "workers", None),
        "seed": getattr(args, "seed", None),
    }
    if args.command == "bench":
        overrides.update(kind=args.kind, record_timing=True)
        if args.config is None:
            return load_config(**{k: v for k, v in overrides.items() if v is not None})
    return load_config_file(args.config, **overrides)


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    configure_logging(args.log_level)

    try:
        config = _load(args)
        if args.command == "validate":
            print(f"{args.config}: valid {config.kind.value} experiment")
            return EXIT_OK
        _publish(run_experiment(config), config)
    except ConfigurationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID_CONFIG
    except (SimFiberError, OSError) as e:
        logger.debug("run failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RUNTIME_FAILURE
    except Exception as e:
        logger.debug("unexpected failure", exc_info=True)
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_RUNTIME_FAILURE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
