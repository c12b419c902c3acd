"""dpcounts: differentially private count release without cross-partition
contribution bounds, a contribution-bounding baseline, and an evaluation
harness for comparing the two."""

from .accounting import (
    Charge,
    PrivacyBudget,
    PrivacyFilter,
    cdp_to_dp,
    dp_to_cdp,
    gaussian_rho_cost,
    write_charge_log_csv,
)
from .experiments import ExperimentConfig, run_experiment, trial_seed
from .metrics import MetricsRow, Score, read_metrics_csv, relative_error, score_release, write_metrics_csv
from .pcr import (
    BOTTOM,
    PcrParams,
    ReleaseEntry,
    ReleasedHistogram,
    pcr_run,
    read_release_csv,
    sigma_target,
    udg_select,
    udg_threshold,
    write_release_csv,
)
from .plume import (
    BoundedRecordSet,
    PlumeManifest,
    PlumeParams,
    bound_contributions,
    gaussian_release,
    partition_select,
    plume_run,
    plume_threshold,
    restrict_records,
    write_manifest_csv,
)
from .records import (
    ContributionStats,
    Histogram,
    RecordSet,
    TopKView,
    build_histogram,
    contribution_percentile,
    contribution_stats,
    load_records,
    read_histogram_csv,
    tokenize,
    top_view,
    write_histogram_csv,
)
from .sampling import Rng, gaussian, gumbel, gumbel_from_uniform

__version__ = "0.1.0"

__all__ = [
    "BOTTOM",
    "BoundedRecordSet",
    "Charge",
    "ContributionStats",
    "ExperimentConfig",
    "Histogram",
    "MetricsRow",
    "PcrParams",
    "PlumeManifest",
    "PlumeParams",
    "PrivacyBudget",
    "PrivacyFilter",
    "RecordSet",
    "ReleaseEntry",
    "ReleasedHistogram",
    "Rng",
    "Score",
    "TopKView",
    "bound_contributions",
    "build_histogram",
    "cdp_to_dp",
    "contribution_percentile",
    "contribution_stats",
    "dp_to_cdp",
    "gaussian",
    "gaussian_release",
    "gaussian_rho_cost",
    "gumbel",
    "gumbel_from_uniform",
    "load_records",
    "partition_select",
    "pcr_run",
    "plume_run",
    "plume_threshold",
    "read_histogram_csv",
    "read_metrics_csv",
    "read_release_csv",
    "relative_error",
    "restrict_records",
    "run_experiment",
    "score_release",
    "sigma_target",
    "tokenize",
    "top_view",
    "trial_seed",
    "udg_select",
    "udg_threshold",
    "write_charge_log_csv",
    "write_histogram_csv",
    "write_manifest_csv",
    "write_metrics_csv",
    "write_release_csv",
]
