"""Trial orchestration: load a dataset once, run a method over a rho grid.

Per-trial seeds are derived from a stable hash of (method, rho, trial), so
trials are independent and extending the rho grid never shifts the
randomness of existing cells.
"""

from __future__ import annotations

import dataclasses
import hashlib
import time
from dataclasses import dataclass, field
from pathlib import Path

from .accounting import PrivacyBudget
from .metrics import AVG_TRIAL, MetricsRow, Score, average_row, score_release, write_metrics_csv
from .pcr import PcrParams, pcr_run, write_release_csv
from .plume import PlumeParams, plume_run, write_manifest_csv
from .records import FORMATS, Histogram, RecordSet, build_histogram, load_records
from .sampling import Rng

METHODS = ("pcr", "plume", "plume_threshold")


@dataclass
class ExperimentConfig:
    dataset: Path
    format: str
    method: str = "pcr"  # one of METHODS, or comma-separated for several
    text_column: str | None = None
    user_column: str | None = None
    rho_grid: tuple[float, ...] = (0.1, 0.5, 1.0)
    delta: float = 1e-6
    trials: int = 10
    base_seed: int = 0
    pcr: PcrParams = field(default_factory=PcrParams)
    plume: PlumeParams = field(default_factory=PlumeParams)
    output_dir: Path = Path(".")
    save_releases: bool = True
    measure_runtime: bool = True  # off -> runtime_ms written as 0 (byte-stable output)

    def methods(self) -> tuple[str, ...]:
        methods = tuple(m.strip() for m in self.method.split(",") if m.strip())
        for m in methods:
            if m not in METHODS:
                raise ValueError(f"unknown method {m!r}; expected one of {METHODS}")
        if not methods:
            raise ValueError("no method given")
        return methods

    def validate(self) -> None:
        self.methods()
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}; expected one of {FORMATS}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not self.rho_grid:
            raise ValueError("rho_grid must be non-empty")
        if any(rho <= 0 for rho in self.rho_grid):
            raise ValueError(f"rho values must be positive, got {self.rho_grid}")
        if not 0 < self.delta < 1:
            raise ValueError(f"delta must be in (0, 1), got {self.delta}")


def trial_seed(base_seed: int, method: str, rho: float, trial: int) -> int:
    """Stable 64-bit seed for one (method, rho, trial) cell."""
    digest = hashlib.blake2b(
        f"{method}|{rho!r}|{trial}".encode(), digest_size=8
    ).digest()
    return (base_seed + int.from_bytes(digest, "big")) % 2**64


def run_trial(
    truth: Histogram,
    records: RecordSet,
    method: str,
    rho: float,
    delta: float,
    seed: int,
    pcr_params: PcrParams,
    plume_params: PlumeParams,
):
    """One seeded trial; returns (release, manifest-or-None)."""
    rng = Rng(seed)
    budget = PrivacyBudget(rho, delta)
    if method == "pcr":
        return pcr_run(truth, budget, pcr_params, rng=rng), None
    params = plume_params
    if method == "plume_threshold":
        params = dataclasses.replace(params, apply_threshold=True)
    elif params.apply_threshold:
        params = dataclasses.replace(params, apply_threshold=False)
    return plume_run(records, budget, params, rng=rng)


def run_experiment(cfg: ExperimentConfig) -> list[MetricsRow]:
    """Execute the config and write ``metrics.csv`` (plus per-trial releases)
    under cfg.output_dir. Returns all rows including the per-rho averages."""
    cfg.validate()
    records = load_records(cfg.dataset, cfg.format, cfg.text_column, cfg.user_column)
    truth = build_histogram(records)
    out_dir = Path(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    target_r = {"pcr": cfg.pcr.target_rel_error, "plume": cfg.plume.target_rel_error}
    all_rows: list[MetricsRow] = []
    for method in cfg.methods():
        r = target_r["pcr" if method == "pcr" else "plume"]
        for rho in cfg.rho_grid:
            trial_rows = []
            for trial in range(cfg.trials):
                seed = trial_seed(cfg.base_seed, method, rho, trial)
                started = time.perf_counter()
                release, manifest = run_trial(
                    truth, records, method, rho, cfg.delta, seed, cfg.pcr, cfg.plume
                )
                elapsed_ms = (
                    int(round((time.perf_counter() - started) * 1000))
                    if cfg.measure_runtime
                    else 0
                )
                score = score_release(release, truth, r)
                if cfg.save_releases:
                    stem = f"release_{method}_rho{rho!r}_trial{trial}"
                    write_release_csv(release, out_dir / f"{stem}.csv")
                    if manifest is not None:
                        write_manifest_csv(manifest, out_dir / f"{stem}_manifest.csv")
                trial_rows.append(_row(method, rho, trial, score, elapsed_ms))
            trial_rows.sort(key=lambda row: row.trial)
            all_rows.extend(trial_rows)
            all_rows.append(average_row(trial_rows))
    write_metrics_csv(all_rows, out_dir / "metrics.csv")
    return all_rows


def _row(method: str, rho: float, trial: int, score: Score, runtime_ms: int) -> MetricsRow:
    return MetricsRow(
        method=method,
        rho=rho,
        trial=trial,
        num_results=score.num_results,
        frac_within_target=score.frac_within_target,
        vacuous=score.vacuous,
        mean_rel_error_pct=score.mean_rel_error_pct,
        median_rel_error_pct=score.median_rel_error_pct,
        runtime_ms=runtime_ms,
    )


# --- flat key-value config files -------------------------------------------
#
# Schema (all keys optional unless noted): dataset (required), format
# (required), text_column, user_column, method, rho (comma-separated),
# delta, trials, seed, out, save_releases, timing,
# pcr.epsilon_star, pcr.delta_star, pcr.k_bar, pcr.target_rel_error,
# pcr.sigma_safety_factor, plume.alpha, plume.percentile,
# plume.target_rel_error, plume.sensitivity_convention.
# Lines are `key = value`; blank lines and #-comments are ignored.

_BOOL = {"true": True, "false": False, "on": True, "off": False, "1": True, "0": False}


def parse_config_file(path: str | Path) -> dict[str, str]:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"config file not found: {path}")
    values: dict[str, str] = {}
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected `key = value`, got {line!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


def config_from_values(values: dict[str, str]) -> ExperimentConfig:
    """Build an ExperimentConfig from flat string key-values (file or flags)."""
    known = {
        "dataset", "format", "text_column", "user_column", "method", "rho",
        "delta", "trials", "seed", "out", "save_releases", "timing",
        "pcr.epsilon_star", "pcr.delta_star", "pcr.k_bar",
        "pcr.target_rel_error", "pcr.sigma_safety_factor",
        "plume.alpha", "plume.percentile", "plume.target_rel_error",
        "plume.sensitivity_convention",
    }
    unknown = set(values) - known
    if unknown:
        raise ValueError(f"unknown config key(s): {sorted(unknown)}")
    if "dataset" not in values or "format" not in values:
        raise ValueError("config requires at least `dataset` and `format`")

    def _bool(key: str, default: bool) -> bool:
        raw = values.get(key)
        if raw is None:
            return default
        if raw.lower() not in _BOOL:
            raise ValueError(f"{key} must be a boolean, got {raw!r}")
        return _BOOL[raw.lower()]

    pcr = PcrParams(
        epsilon_star=float(values.get("pcr.epsilon_star", 0.0005)),
        delta_star=float(values.get("pcr.delta_star", 1e-11)),
        k_bar=int(values.get("pcr.k_bar", 10_000)),
        target_rel_error=float(values.get("pcr.target_rel_error", 0.1)),
        sigma_safety_factor=float(values.get("pcr.sigma_safety_factor", 1.5)),
    )
    plume = PlumeParams(
        alpha=float(values.get("plume.alpha", 0.5)),
        percentile_p=float(values.get("plume.percentile", 95)),
        target_rel_error=float(values.get("plume.target_rel_error", 0.1)),
        sensitivity_convention=values.get("plume.sensitivity_convention", "paper_m_prime"),
    )
    return ExperimentConfig(
        dataset=Path(values["dataset"]),
        format=values["format"],
        method=values.get("method", "pcr"),
        text_column=values.get("text_column"),
        user_column=values.get("user_column"),
        rho_grid=tuple(float(x) for x in values.get("rho", "0.1,0.5,1.0").split(",")),
        delta=float(values.get("delta", 1e-6)),
        trials=int(values.get("trials", 10)),
        base_seed=int(values.get("seed", 0)),
        pcr=pcr,
        plume=plume,
        output_dir=Path(values.get("out", ".")),
        save_releases=_bool("save_releases", True),
        measure_runtime=_bool("timing", True),
    )
