"""The `deuq` command line.

Usage:
    deuq search -c config.json -o out/ [--seed 3] [--budget 64] [--workers 4] [--deterministic]
    deuq select -i out/ [-k 5] [--method greedy]
    deuq eval -i out/ [--split test]
    deuq export-curves -i out/ [--points 400]
    deuq sweep -c config.json -o sweep/ [--seeds 3]

Every command writes `deuq.info.log` and `deuq.debug.log` to its run directory.

Exit codes: 0 ok, 1 other failure, 2 configuration or input/output, 3 empty catalog,
4 unresolved model reference, 5 unsupported operation.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path

from .configs import RunConfig, load_run_config
from .errors import (
    CatalogError,
    CatalogReferenceError,
    ConfigError,
    DatasetReadError,
    DatasetShapeError,
    EmptyCatalogError,
    UnsupportedOperationError,
)
from .logger import DeuqLogger, setup_logging
from .params import CURVE_POINTS
from .pipeline import cmd_eval, cmd_export_curves, cmd_search, cmd_select, cmd_sweep
from .utils.io_table import FileReadError
from .utils.models import TableValidationError

EXIT_CODES: list[tuple[type[Exception], int]] = [
    (EmptyCatalogError, 3),
    (CatalogReferenceError, 4),
    (UnsupportedOperationError, 5),
    (ConfigError, 2),
    (FileNotFoundError, 2),
    (FileExistsError, 2),
    (FileReadError, 2),
    (DatasetReadError, 2),
    (DatasetShapeError, 2),
    (CatalogError, 2),
    (TableValidationError, 2),
]
"""Exception type to exit code, first match wins."""

LOG_LEVELS = ["debug", "info", "warning"]


def exit_code(err: Exception) -> int:
    """Exit code for an exception raised by a command."""
    for err_type, code in EXIT_CODES:
        if isinstance(err, err_type):
            return code
    return 1


def _setup_run_logging(directory: Path, level: str) -> None:
    setup_logging(
        info_log_filename=directory / "deuq.info.log",
        debug_log_filename=directory / "deuq.debug.log",
        std_out_level=level,
    )


def _run_config(args: argparse.Namespace) -> RunConfig:
    """Config file with the command line flags applied; flags win."""
    config = load_run_config(Path(args.config))
    data = config.to_dict()
    search_flags = {
        "rng_seed": getattr(args, "seed", None),
        "total_budget": getattr(args, "budget", None),
        "workers": getattr(args, "workers", None),
        "deterministic": True if getattr(args, "deterministic", False) else None,
    }
    data["search"].update({k: v for k, v in search_flags.items() if v is not None})
    return load_run_config(data, overrides={"output_dir": args.output_dir, "k": args.k})


def _search(args: argparse.Namespace) -> None:
    config = _run_config(args)
    _setup_run_logging(_make_dir(config.output_dir), args.log_level)
    catalog = cmd_search(config, overwrite=args.overwrite)
    print(f"Wrote {len(catalog)} models to {catalog.path}")


def _select(args: argparse.Namespace) -> None:
    directory = _existing_dir(args.input_dir)
    _setup_run_logging(directory, args.log_level)
    manifest = cmd_select(directory, k=args.k, method=args.method)
    print(
        f"Ensemble {manifest.member_ids}: valid NLL {manifest.valid_nll:.5f}, "
        f"diversity {manifest.diversity:.4f}"
    )


def _eval(args: argparse.Namespace) -> None:
    directory = _existing_dir(args.input_dir)
    _setup_run_logging(directory, args.log_level)
    for report in cmd_eval(directory, split=args.split):
        print(
            f"{report.model} on {report.dataset}/{report.split} (n={report.n}): "
            f"nll {report.nll:.5f} rmse {report.rmse:.5f}"
        )


def _export_curves(args: argparse.Namespace) -> None:
    directory = _existing_dir(args.input_dir)
    _setup_run_logging(directory, args.log_level)
    print(f"Wrote {cmd_export_curves(directory, points=args.points)}")


def _sweep(args: argparse.Namespace) -> None:
    config = _run_config(args)
    _setup_run_logging(_make_dir(config.output_dir), args.log_level)
    summary = cmd_sweep(config, n_seeds=args.seeds, overwrite=args.overwrite)
    print(summary.to_string(index=False))


def _make_dir(directory: str | Path) -> Path:
    path = Path(directory)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _existing_dir(directory: str | Path) -> Path:
    path = Path(directory)
    if not path.is_dir():
        msg = f"Run directory {path} does not exist."
        raise FileNotFoundError(msg)
    return path


def build_parser() -> argparse.ArgumentParser:
    """Argument parser of the `deuq` command."""
    parser = argparse.ArgumentParser(
        "deuq", description="Automated deep ensembles with uncertainty quantification."
    )
    parser.add_argument(
        "--log-level", choices=LOG_LEVELS, default="info", help="Console logging level."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def _config_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("-c", "--config", required=True, help="Run configuration file.")
        p.add_argument("-o", "--output-dir", dest="output_dir", help="Output directory.")
        p.add_argument("--seed", type=int, help="Search seed.")
        p.add_argument("--budget", type=int, help="Number of models to train.")
        p.add_argument("--workers", type=int, help="Number of trainings in flight.")
        p.add_argument(
            "--deterministic",
            action="store_true",
            help="Train one model at a time in submission order.",
        )
        p.add_argument("-k", type=int, help="Number of unique ensemble members.")
        p.add_argument(
            "--overwrite", action="store_true", help="Replace an existing catalog."
        )

    p = sub.add_parser("search", help="Generate a catalog of trained models.")
    _config_args(p)
    p.set_defaults(func=_search)

    p = sub.add_parser("select", help="Select ensemble members from a catalog.")
    p.add_argument("-i", "--input-dir", dest="input_dir", required=True, help="Run directory.")
    p.add_argument("-k", type=int, help="Number of unique ensemble members.")
    p.add_argument("--method", choices=["greedy", "topk"], help="Selection method.")
    p.set_defaults(func=_select)

    p = sub.add_parser("eval", help="Score the ensemble and the best single model.")
    p.add_argument("-i", "--input-dir", dest="input_dir", required=True, help="Run directory.")
    p.add_argument("--split", choices=["train", "valid", "test"], default="test")
    p.set_defaults(func=_eval)

    p = sub.add_parser("export-curves", help="Write ensemble curves of a 1-D problem to csv.")
    p.add_argument("-i", "--input-dir", dest="input_dir", required=True, help="Run directory.")
    p.add_argument("--points", type=int, default=CURVE_POINTS, help="Number of grid points.")
    p.set_defaults(func=_export_curves)

    p = sub.add_parser("sweep", help="Repeat search, select and eval over seeds.")
    _config_args(p)
    p.add_argument("--seeds", type=int, default=3, help="Number of seeds.")
    p.set_defaults(func=_sweep)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Run the `deuq` command line and return its exit code."""
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except Exception as err:  # noqa: BLE001
        code = exit_code(err)
        if code == 1:
            DeuqLogger.exception(f"deuq {args.command} failed.")
        print(f"deuq {args.command}: error: {err}", file=sys.stderr)
        return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
