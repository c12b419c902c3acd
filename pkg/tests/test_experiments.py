from pathlib import Path

import pytest

from dpcounts.experiments import (
    ExperimentConfig,
    config_from_values,
    parse_config_file,
    run_experiment,
    run_trial,
    trial_seed,
)
from dpcounts.metrics import AVG_TRIAL, read_metrics_csv, score_release
from dpcounts.pcr import PcrParams, read_release_csv
from dpcounts.records import build_histogram, load_records, read_histogram_csv, write_histogram_csv
from dpcounts.sampling import Rng
from dpcounts.synth import zipf_records

FAST_PCR = PcrParams(epsilon_star=0.05, k_bar=500)


def small_config(dataset: Path, out: Path, **overrides) -> ExperimentConfig:
    cfg = ExperimentConfig(
        dataset=dataset,
        format="pairs_csv",
        method="pcr",
        rho_grid=(0.3,),
        trials=2,
        base_seed=7,
        pcr=FAST_PCR,
        output_dir=out,
        measure_runtime=False,
    )
    for key, value in overrides.items():
        setattr(cfg, key, value)
    return cfg


@pytest.fixture
def zipf_csv(records_csv):
    return records_csv(zipf_records(400, 120, Rng(1)), "zipf.csv")


class TestTrialSeed:
    def test_stable_and_distinct(self):
        s = trial_seed(0, "pcr", 0.1, 0)
        assert s == trial_seed(0, "pcr", 0.1, 0)
        assert s != trial_seed(0, "pcr", 0.1, 1)
        assert s != trial_seed(0, "pcr", 0.5, 0)
        assert s != trial_seed(0, "plume", 0.1, 0)
        assert s != trial_seed(1, "pcr", 0.1, 0)
        assert 0 <= s < 2**64


class TestRunExperiment:
    def test_deterministic_csv_bytes(self, zipf_csv, tmp_path):
        a = run_experiment(small_config(zipf_csv, tmp_path / "a"))
        b = run_experiment(small_config(zipf_csv, tmp_path / "b"))
        assert a == b
        assert (tmp_path / "a" / "metrics.csv").read_bytes() == (
            tmp_path / "b" / "metrics.csv"
        ).read_bytes()

    def test_row_count_contract(self, zipf_csv, tmp_path):
        rows = run_experiment(
            small_config(zipf_csv, tmp_path / "o", rho_grid=(0.2, 0.4), trials=3)
        )
        assert len(rows) == 2 * (3 + 1)
        assert [r.trial for r in rows[:4]] == [0, 1, 2, AVG_TRIAL]

    def test_multiple_methods(self, zipf_csv, tmp_path):
        rows = run_experiment(
            small_config(zipf_csv, tmp_path / "o", method="pcr,plume,plume_threshold")
        )
        assert {r.method for r in rows} == {"pcr", "plume", "plume_threshold"}
        assert len(rows) == 3 * (2 + 1)

    def test_trials_are_independent_cells(self, zipf_csv, tmp_path):
        rows = run_experiment(small_config(zipf_csv, tmp_path / "o", trials=3))
        records = load_records(zipf_csv, "pairs_csv")
        truth = build_histogram(records)
        for trial_row in [r for r in rows if r.trial != AVG_TRIAL]:
            seed = trial_seed(7, "pcr", trial_row.rho, trial_row.trial)
            release, _ = run_trial(
                truth, records, "pcr", trial_row.rho, 1e-6, seed, FAST_PCR, small_config(zipf_csv, tmp_path).plume
            )
            score = score_release(release, truth, FAST_PCR.target_rel_error)
            assert score.num_results == trial_row.num_results
            assert score.frac_within_target == trial_row.frac_within_target
            assert score.mean_rel_error_pct == trial_row.mean_rel_error_pct

    def test_saved_release_rescored_identically(self, zipf_csv, tmp_path):
        out = tmp_path / "o"
        rows = run_experiment(small_config(zipf_csv, out))
        truth = build_histogram(load_records(zipf_csv, "pairs_csv"))
        hist_csv = tmp_path / "truth.csv"
        write_histogram_csv(truth, hist_csv)
        for trial_row in [r for r in rows if r.trial != AVG_TRIAL]:
            entries = read_release_csv(out / f"release_pcr_rho{trial_row.rho!r}_trial{trial_row.trial}.csv")
            score = score_release(entries, read_histogram_csv(hist_csv), 0.1)
            assert score.num_results == trial_row.num_results
            assert score.frac_within_target == trial_row.frac_within_target
            assert score.mean_rel_error_pct == trial_row.mean_rel_error_pct
            assert score.median_rel_error_pct == trial_row.median_rel_error_pct

    def test_pcr_recall_nondecreasing_in_rho(self, records_csv, tmp_path):
        path = records_csv(zipf_records(2000, 300, Rng(42)), "zipf_big.csv")
        rows = run_experiment(
            small_config(
                path,
                tmp_path / "o",
                rho_grid=(0.1, 0.5, 1.0),
                trials=4,
                pcr=PcrParams(epsilon_star=0.02, k_bar=1000),
                save_releases=False,
            )
        )
        averages = [r.num_results for r in rows if r.trial == AVG_TRIAL]
        assert len(averages) == 3
        assert averages[0] <= averages[1] <= averages[2]

    def test_validation(self, zipf_csv, tmp_path):
        with pytest.raises(ValueError):
            run_experiment(small_config(zipf_csv, tmp_path, method="sorcery"))
        with pytest.raises(ValueError):
            run_experiment(small_config(zipf_csv, tmp_path, trials=0))
        with pytest.raises(ValueError):
            run_experiment(small_config(zipf_csv, tmp_path, rho_grid=()))
        with pytest.raises(FileNotFoundError):
            run_experiment(small_config(tmp_path / "ghost.csv", tmp_path))


class TestConfigFiles:
    def test_parse_and_build(self, tmp_path):
        path = tmp_path / "exp.conf"
        path.write_text(
            """
# comment
dataset = data/things.csv
format = pairs_csv
method = plume
rho = 0.1, 0.5
trials = 4
seed = 11
out = results
plume.alpha = 0.4
pcr.k_bar = 250
timing = off
""",
            encoding="utf-8",
        )
        cfg = config_from_values(parse_config_file(path))
        assert cfg.dataset == Path("data/things.csv")
        assert cfg.method == "plume"
        assert cfg.rho_grid == (0.1, 0.5)
        assert cfg.trials == 4
        assert cfg.base_seed == 11
        assert cfg.plume.alpha == 0.4
        assert cfg.pcr.k_bar == 250
        assert cfg.measure_runtime is False

    def test_unknown_key_rejected(self):
        with pytest.raises(ValueError, match="unknown config key"):
            config_from_values({"dataset": "x", "format": "pairs_csv", "zeta": "1"})

    def test_requires_dataset_and_format(self):
        with pytest.raises(ValueError):
            config_from_values({"method": "pcr"})

    def test_malformed_line(self, tmp_path):
        path = tmp_path / "bad.conf"
        path.write_text("dataset data.csv\n", encoding="utf-8")
        with pytest.raises(ValueError, match="expected `key = value`"):
            parse_config_file(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            parse_config_file(tmp_path / "none.conf")
