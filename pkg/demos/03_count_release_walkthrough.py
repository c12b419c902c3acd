"""Watch the iterated count release discover items one by one.

The mechanism starts with a tiny per-round epsilon, escalates it by sqrt(2)
after every miss, and pays for each selection and each Gaussian release out
of one (rho, delta) budget. Nothing here is tuned to the data.

Run from the repository root:  python demos/03_count_release_walkthrough.py
"""

from dpcounts import PcrParams, PrivacyBudget, Rng, pcr_run, relative_error
from dpcounts.synth import zipf_histogram

truth = zipf_histogram(n_items=2000, exponent=1.2, top_count=50_000)
print(f"true histogram: {len(truth)} items, top count {max(truth.entries.values())}")

release = pcr_run(truth, PrivacyBudget(rho=0.5, delta=1e-6), PcrParams(), rng=Rng(7))

print(f"\nreleased {len(release.entries)} counts:")
print(f"{'item':<10} {'true':>7} {'noisy':>10} {'rel err %':>9} {'sigma':>8} {'eps':>7} {'round':>5}")
for e in release.entries[:10]:
    true = truth[e.item]
    print(
        f"{e.item:<10} {true:>7} {e.noisy_count:>10.1f} "
        f"{relative_error(true, e.noisy_count):>9.2f} {e.sigma:>8.2f} "
        f"{e.epsilon_at_release:>7.4f} {e.round_index:>5}"
    )
if len(release.entries) > 10:
    print(f"... and {len(release.entries) - 10} more")

# The charge log tells the whole story: every round pays eps^2/8 for the
# selection, hits additionally pay 1/(2 sigma^2) for the Gaussian.
filt = release.filter_final
misses = sum(
    1
    for c in filt.charge_log
    if c.label.startswith("gumbel")
    and f"gaussian:round={c.label.split('=')[1]}" not in {x.label for x in filt.charge_log}
)
print(f"\nrounds: {sum(c.label.startswith('gumbel') for c in filt.charge_log)}"
      f" ({misses} misses that escalated epsilon)")
print(f"spent rho {filt.rho_spent:.6f} of {filt.budget.rho},"
      f" delta {filt.delta_spent:.2e} of {filt.budget.delta:.0e}")
