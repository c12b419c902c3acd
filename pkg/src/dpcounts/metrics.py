"""Recall/precision scoring of a release against the true histogram.

Recall here means "how many counts came back"; precision is the distribution
of relative errors on the counts that did. An empty release scores a vacuous
frac_within_target of 1.0, flagged so averages stay finite without hiding
the emptiness.
"""

from __future__ import annotations

import csv
import statistics
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .pcr import ReleaseEntry, ReleasedHistogram
from .records import Histogram

METRICS_HEADER = [
    "method",
    "rho",
    "trial",
    "num_results",
    "frac_within_target",
    "vacuous",
    "mean_rel_error_pct",
    "median_rel_error_pct",
    "runtime_ms",
]

AVG_TRIAL = "avg"


@dataclass(frozen=True)
class MetricsRow:
    method: str
    rho: float
    trial: int | str  # trial index, or "avg" for the per-rho average row
    num_results: float
    frac_within_target: float
    vacuous: bool
    mean_rel_error_pct: float
    median_rel_error_pct: float
    runtime_ms: int | float


def relative_error(true_count: int, noisy_count: float) -> float:
    """|c - c~| / c * 100."""
    if true_count < 1:
        raise ValueError(f"true_count must be >= 1, got {true_count}")
    return abs(true_count - noisy_count) / true_count * 100.0


@dataclass(frozen=True)
class Score:
    num_results: int
    frac_within_target: float
    vacuous: bool
    mean_rel_error_pct: float
    median_rel_error_pct: float


def score_release(
    release: ReleasedHistogram | Sequence[ReleaseEntry], truth: Histogram, r: float
) -> Score:
    """Score released counts against the truth at target relative error r.

    A released item missing from the truth histogram is a pipeline bug and
    raises immediately.
    """
    if r <= 0:
        raise ValueError(f"target relative error must be positive, got {r}")
    entries = release.entries if isinstance(release, ReleasedHistogram) else release
    errors = []
    for entry in entries:
        if entry.item not in truth:
            raise ValueError(f"released item {entry.item!r} missing from truth histogram")
        errors.append(relative_error(truth[entry.item], entry.noisy_count))
    if not errors:
        return Score(0, 1.0, True, 0.0, 0.0)
    within = sum(1 for e in errors if e <= 100.0 * r)
    return Score(
        num_results=len(errors),
        frac_within_target=within / len(errors),
        vacuous=False,
        mean_rel_error_pct=statistics.fmean(errors),
        median_rel_error_pct=float(statistics.median(errors)),
    )


def average_row(rows: Sequence[MetricsRow]) -> MetricsRow:
    """Per-rho average across trials; vacuous only if every trial was."""
    if not rows:
        raise ValueError("cannot average zero rows")
    methods = {row.method for row in rows}
    rhos = {row.rho for row in rows}
    if len(methods) != 1 or len(rhos) != 1:
        raise ValueError("average_row expects rows from one (method, rho) cell")
    n = len(rows)
    return MetricsRow(
        method=rows[0].method,
        rho=rows[0].rho,
        trial=AVG_TRIAL,
        num_results=sum(r.num_results for r in rows) / n,
        frac_within_target=sum(r.frac_within_target for r in rows) / n,
        vacuous=all(r.vacuous for r in rows),
        mean_rel_error_pct=sum(r.mean_rel_error_pct for r in rows) / n,
        median_rel_error_pct=sum(r.median_rel_error_pct for r in rows) / n,
        runtime_ms=sum(r.runtime_ms for r in rows) / n,
    )


def write_metrics_csv(rows: Iterable[MetricsRow], path: str | Path) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(METRICS_HEADER)
        for row in rows:
            writer.writerow(
                [
                    row.method,
                    repr(row.rho),
                    row.trial,
                    repr(row.num_results) if isinstance(row.num_results, float) else row.num_results,
                    repr(row.frac_within_target),
                    str(row.vacuous).lower(),
                    repr(row.mean_rel_error_pct),
                    repr(row.median_rel_error_pct),
                    repr(row.runtime_ms) if isinstance(row.runtime_ms, float) else row.runtime_ms,
                ]
            )


def read_metrics_csv(path: str | Path) -> list[MetricsRow]:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"metrics file not found: {path}")
    rows: list[MetricsRow] = []
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != METRICS_HEADER:
            raise ValueError(f"{path}: expected header {','.join(METRICS_HEADER)}")
        for raw in reader:
            trial: int | str = raw["trial"]
            if trial != AVG_TRIAL:
                trial = int(trial)
            runtime = float(raw["runtime_ms"])
            rows.append(
                MetricsRow(
                    method=raw["method"],
                    rho=float(raw["rho"]),
                    trial=trial,
                    num_results=float(raw["num_results"]),
                    frac_within_target=float(raw["frac_within_target"]),
                    vacuous=raw["vacuous"] == "true",
                    mean_rel_error_pct=float(raw["mean_rel_error_pct"]),
                    median_rel_error_pct=float(raw["median_rel_error_pct"]),
                    runtime_ms=int(runtime) if runtime.is_integer() else runtime,
                )
            )
    return rows
