"""fuzzyspectrum CLI: run sweeps, query the FLS and inspect configs from the command line."""

import argparse
import logging
import math
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from fuzzyspectrum.config import ExperimentSpec, get_settings, load_config, with_overrides
from fuzzyspectrum.errors import ConfigError, FuzzySpectrumError
from fuzzyspectrum.fuzzy.engine import DescriptorVector
from fuzzyspectrum.output import (
    atomic_write_text,
    format_snapshot,
    render_grid_csv,
    render_snapshot_csv,
    take_snapshot,
    write_run_artifacts,
)
from fuzzyspectrum.simulation.runner import POLICIES, PolicyName, SweepPoint, run_sweep

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONFIG = 3
EXIT_RUNTIME = 4


def _descriptor_triple(text: str) -> Tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"expected 3 comma-separated values (utilization,mobility,distance), got {len(parts)}"
        )
    try:
        u, m, d = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number in {text!r}") from None
    if not all(math.isfinite(v) for v in (u, m, d)):
        raise argparse.ArgumentTypeError(f"descriptors must be finite, got {text!r}")
    return u, m, d


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzyspectrum",
        description="Fuzzy-logic spectrum allocation for cognitive radio: simulator and FLS tools",
    )
    parser.add_argument("--debug", action="store_true", help="Enable debug logging")

    # Shared config option
    conf = argparse.ArgumentParser(add_help=False)
    conf.add_argument(
        "--config",
        type=Path,
        default=None,
        help="YAML experiment config (default: built-in defaults)",
    )

    sub = parser.add_subparsers(dest="command", required=True)

    # ---- run -------------------------------------------------------------
    p_run = sub.add_parser("run", parents=[conf], help="Run the arrival-rate sweep")
    p_run.add_argument("--seed", type=int, default=None, help="Override simulation.rng_seed")
    p_run.add_argument("--out", type=Path, default=None, help="Output directory")
    p_run.add_argument(
        "--policy",
        choices=("fls", "nsu", "both"),
        default="both",
        help="Admission policy to simulate (default: both)",
    )
    p_run.add_argument("--no-plots", action="store_true", help="Skip the plot scripts")
    p_run.add_argument(
        "--workers",
        type=int,
        default=None,
        help="Processes for replications (default: FUZZYSPECTRUM_WORKERS or 1)",
    )

    # ---- infer -----------------------------------------------------------
    p_infer = sub.add_parser("infer", parents=[conf], help="Evaluate the FLS once")
    p_infer.add_argument(
        "--descriptors",
        type=_descriptor_triple,
        required=True,
        metavar="U,M,D",
        help="Utilization efficiency, mobility and distance, comma separated",
    )

    # ---- grid ------------------------------------------------------------
    p_grid = sub.add_parser("grid", parents=[conf], help="Write the FLS response surface only")
    p_grid.add_argument("--out", type=Path, default=None, help="Output directory")

    # ---- validate --------------------------------------------------------
    sub.add_parser("validate", parents=[conf], help="Check a config without running anything")

    # ---- snapshot --------------------------------------------------------
    p_snap = sub.add_parser(
        "snapshot",
        parents=[conf],
        help="Place users at random once and show who the FLS selects",
    )
    p_snap.add_argument("--seed", type=int, default=None, help="Placement seed")
    p_snap.add_argument("--out", type=Path, default=None, help="Also write snapshot.csv here")

    return parser


def _output_directory(args: argparse.Namespace, spec: ExperimentSpec) -> Path:
    if args.out is not None:
        return args.out
    if "directory" in spec.output.model_fields_set:
        return spec.output_directory
    return Path(get_settings().output_dir)


def run_experiment(
    spec: ExperimentSpec,
    out: Path,
    policies: Sequence[PolicyName] = POLICIES,
    workers: int = 1,
    emit_plots: Optional[bool] = None,
) -> Tuple[List[SweepPoint], List[Path]]:
    """Run the sweep described by ``spec`` and write every artifact to ``out``.

    Raises:
        ConfigError: If ``workers`` is below 1.
        OSError: If ``out`` cannot be written; no partial file is left behind.
    """
    if workers < 1:
        raise ConfigError(f"workers must be >= 1, got {workers}", invariant="workers")
    engine = spec.build_engine()
    points = run_sweep(spec.simulation, engine, spec.radio, policies=policies, workers=workers)
    paths = write_run_artifacts(
        out, points, engine, emit_plots=spec.emit_plots if emit_plots is None else emit_plots
    )
    return points, paths


def infer_once(spec: ExperimentSpec, descriptors: Tuple[float, float, float]) -> float:
    return spec.build_engine().infer(DescriptorVector(*descriptors))


def _run(args: argparse.Namespace) -> int:
    spec = with_overrides(load_config(args.config), rng_seed=args.seed)
    policies = POLICIES if args.policy == "both" else (args.policy,)
    workers = args.workers if args.workers is not None else get_settings().workers
    out = _output_directory(args, spec)
    points, paths = run_experiment(
        spec, out, policies, workers, emit_plots=spec.emit_plots and not args.no_plots
    )

    print(f"{'rate':>6}  {'policy':>6}  {'blocking':>9}  {'utilization':>11}")
    for point in points:
        for policy, row in sorted(point.rows.items()):
            print(
                f"{point.arrival_rate:>6g}  {policy:>6}  "
                f"{row.blocking_probability:>9.4f}  {row.channel_utilization:>11.4f}"
            )
    print(f"Wrote {len(paths)} files to {out}")
    return EXIT_OK


def _infer(args: argparse.Namespace) -> int:
    print(f"{infer_once(load_config(args.config), args.descriptors):.4f}")
    return EXIT_OK


def _grid(args: argparse.Namespace) -> int:
    spec = load_config(args.config)
    path = atomic_write_text(
        _output_directory(args, spec) / "possibility_grid.csv",
        render_grid_csv(spec.build_engine()),
    )
    print(f"Wrote {path}")
    return EXIT_OK


def _validate(args: argparse.Namespace) -> int:
    spec = load_config(args.config)
    sim = spec.simulation
    print(
        f"Config OK: {sim.num_secondary_users} users, {sim.num_channels} channels, "
        f"{len(sim.arrival_rates)} arrival rates x {sim.replications} replications"
    )
    return EXIT_OK


def _snapshot(args: argparse.Namespace) -> int:
    spec = load_config(args.config)
    snapshot = take_snapshot(spec.simulation, spec.build_engine(), spec.radio, seed=args.seed)
    print(format_snapshot(snapshot))
    if args.out is not None:
        atomic_write_text(args.out / "snapshot.csv", render_snapshot_csv(snapshot))
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> None:
    """Entry point for the fuzzyspectrum CLI."""
    parser = _build_parser()
    args = parser.parse_args(argv)

    settings = get_settings()
    logging.basicConfig(
        level=logging.DEBUG if args.debug else settings.log_level.upper(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )

    handlers: Dict[str, Callable[[argparse.Namespace], int]] = {
        "run": _run,
        "infer": _infer,
        "grid": _grid,
        "validate": _validate,
        "snapshot": _snapshot,
    }

    handler = handlers.get(args.command)
    if handler is None:
        parser.print_help()
        sys.exit(EXIT_USAGE)

    try:
        exit_code = handler(args)
    except ConfigError as exc:
        logger.error("Invalid config: %s", exc)
        print(f"config error: {exc}", file=sys.stderr)
        exit_code = EXIT_CONFIG
    except (FuzzySpectrumError, OSError) as exc:
        logger.error("Run failed: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        exit_code = EXIT_RUNTIME
    sys.exit(exit_code)


if __name__ == "__main__":
    main()
