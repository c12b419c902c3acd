"""Seeded noise, the budget filter, and moving between CDP and DP language.

Run from the repository root:  python demos/02_noise_and_budget_filter.py
"""

import numpy as np

from dpcounts import PrivacyBudget, PrivacyFilter, Rng, cdp_to_dp, gaussian, gaussian_rho_cost, gumbel

# Every random draw flows through an explicit seeded stream; rerunning this
# script reproduces the same numbers bit for bit.
rng = Rng(42)
print("three Gumbel(beta=1) draws: ", [round(gumbel(1.0, rng), 4) for _ in range(3)])
print("three N(0, 2^2) draws:      ", [round(gaussian(2.0, rng), 4) for _ in range(3)])

draws = np.array([gumbel(1.0, rng) for _ in range(50_000)])
print(f"Gumbel sample mean {draws.mean():.4f}  (Euler-Mascheroni is 0.5772)")

# The filter is the single source of truth for spend. Ask first, then run:
# a rejected charge means the mechanism must not run.
filt = PrivacyFilter(PrivacyBudget(rho=0.01, delta=1e-6))
sigma = 25.0
step = 0
while filt.try_charge(gaussian_rho_cost(sigma), 0.0, f"release {step}"):
    step += 1
print(f"budget rho=0.01 pays for {step} Gaussian releases at sigma={sigma}")
print("spent:", filt.rho_spent, "of", filt.budget.rho)
print("last charge accepted?", filt.charge_log[-1].accepted)

# Translate the CDP budget into the more familiar (epsilon, delta) form.
epsilon, delta_total = cdp_to_dp(rho=0.01, delta=1e-6, delta_prime=1e-6)
print(f"rho=0.01, delta=1e-6  ->  ({epsilon:.4f}, {delta_total:.2e})-DP")
