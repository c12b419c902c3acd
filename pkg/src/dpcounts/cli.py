"""Command-line surface: histogram caching, dataset stats, experiment runs,
and re-scoring saved releases.

Exit codes: 0 success, 1 validation error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .experiments import config_from_values, parse_config_file, run_experiment
from .metrics import score_release
from .records import (
    FORMATS,
    build_histogram,
    contribution_stats,
    load_records,
    read_histogram_csv,
    write_histogram_csv,
)
from .pcr import read_release_csv

OUTPUT_DIR_ENV = "DPCOUNTS_OUT"


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags; our contract reserves 2 for I/O errors.
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _add_dataset_flags(parser: argparse.ArgumentParser, required: bool) -> None:
    parser.add_argument("--dataset", required=required, help="input CSV path")
    parser.add_argument("--format", choices=FORMATS, required=required)
    parser.add_argument("--text-column", help="text column for user_text_csv")
    parser.add_argument("--user-column", help="user column for user_text_csv (default: row index)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dpcounts", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_hist = sub.add_parser("histogram", help="build and cache a distinct-count histogram")
    _add_dataset_flags(p_hist, required=True)
    p_hist.add_argument("--out", required=True, help="output histogram CSV")

    p_stats = sub.add_parser("stats", help="print users, domain size, contribution percentiles")
    _add_dataset_flags(p_stats, required=True)

    p_run = sub.add_parser("run", help="run an experiment and write metrics.csv")
    p_run.add_argument("--config", help="flat key-value config file; flags override")
    _add_dataset_flags(p_run, required=False)
    p_run.add_argument("--method", help="pcr | plume | plume_threshold (comma-separated ok)")
    p_run.add_argument("--rho", help="comma-separated rho grid, e.g. 0.1,0.5,1.0")
    p_run.add_argument("--delta", type=float)
    p_run.add_argument("--trials", type=int)
    p_run.add_argument("--seed", type=int)
    p_run.add_argument("--out", help=f"output directory (default ${OUTPUT_DIR_ENV} or .)")

    p_score = sub.add_parser("score", help="re-score a saved release against a cached histogram")
    p_score.add_argument("--release", required=True, help="release CSV")
    p_score.add_argument("--histogram", required=True, help="cached histogram CSV")
    p_score.add_argument("--target-rel-error", type=float, default=0.1)
    return parser


def _cmd_histogram(args) -> int:
    rs = load_records(args.dataset, args.format, args.text_column, args.user_column)
    write_histogram_csv(build_histogram(rs), args.out)
    print(f"wrote {args.out}")
    return 0


def _cmd_stats(args) -> int:
    rs = load_records(args.dataset, args.format, args.text_column, args.user_column)
    stats = contribution_stats(rs)
    hist = build_histogram(rs)
    print(f"users={len(stats.per_user_distinct)}")
    print(f"domain={len(hist)}")
    for p in (50, 75, 95, 99):
        print(f"p{p}={stats.percentile(p)}")
    return 0


def _cmd_run(args) -> int:
    values = parse_config_file(args.config) if args.config else {}
    overrides = {
        "dataset": args.dataset,
        "format": args.format,
        "text_column": args.text_column,
        "user_column": args.user_column,
        "method": args.method,
        "rho": args.rho,
        "delta": args.delta,
        "trials": args.trials,
        "seed": args.seed,
        "out": args.out if args.out else os.environ.get(OUTPUT_DIR_ENV),
    }
    for key, value in overrides.items():
        if value is not None:
            values[key] = str(value)
    cfg = config_from_values(values)
    rows = run_experiment(cfg)
    print(f"wrote {Path(cfg.output_dir) / 'metrics.csv'} ({len(rows)} rows)")
    return 0


def _cmd_score(args) -> int:
    entries = read_release_csv(args.release)
    truth = read_histogram_csv(args.histogram)
    score = score_release(entries, truth, args.target_rel_error)
    print(f"num_results={score.num_results}")
    print(f"frac_within_target={score.frac_within_target!r}")
    print(f"vacuous={str(score.vacuous).lower()}")
    print(f"mean_rel_error_pct={score.mean_rel_error_pct!r}")
    print(f"median_rel_error_pct={score.median_rel_error_pct!r}")
    return 0


_COMMANDS = {
    "histogram": _cmd_histogram,
    "stats": _cmd_stats,
    "run": _cmd_run,
    "score": _cmd_score,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except SystemExit as exc:  # argparse --help exits 0, flag errors exit 1
        return int(exc.code or 0)
    except (FileNotFoundError, OSError) as exc:
        print(f"dpcounts: i/o error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"dpcounts: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
