"""Run the full comparison harness over a privacy grid and print the table.

Writes results/demo/metrics.csv (plus the per-trial release files), which is
exactly what the chart reporter consumes.

Run from the repository root:  python demos/05_experiment_harness.py
"""

from pathlib import Path

from dpcounts import ExperimentConfig, PcrParams, Rng, run_experiment
from dpcounts.metrics import AVG_TRIAL
from dpcounts.synth import zipf_records

# Materialize a synthetic dataset as a pairs CSV, the same way a real one
# would be loaded.
data_dir = Path("results/demo")
data_dir.mkdir(parents=True, exist_ok=True)
dataset = data_dir / "zipf_pairs.csv"
rs = zipf_records(n_users=2000, n_items=400, rng=Rng(1), mean_items_per_user=15.0)
with dataset.open("w", encoding="utf-8") as fh:
    fh.write("user_id,item\n")
    fh.writelines(f"{user},{item}\n" for user, item in rs.records)

cfg = ExperimentConfig(
    dataset=dataset,
    format="pairs_csv",
    method="pcr,plume,plume_threshold",
    rho_grid=(0.1, 0.5, 1.0),
    delta=1e-6,
    trials=5,
    base_seed=7,
    pcr=PcrParams(epsilon_star=0.01, k_bar=1000),
    output_dir=data_dir,
)
rows = run_experiment(cfg)

print(f"{'method':<16} {'rho':>4} {'avg results':>12} {'avg frac<=10%':>14}")
for row in rows:
    if row.trial == AVG_TRIAL:
        print(f"{row.method:<16} {row.rho:>4} {row.num_results:>12.1f} {row.frac_within_target:>14.3f}")
print(f"\nmetrics written to {data_dir / 'metrics.csv'}")
print("render charts with the reporter:  cd reporter && npm run render -- "
      f"--metrics ../{data_dir / 'metrics.csv'} --out ../{data_dir}")
