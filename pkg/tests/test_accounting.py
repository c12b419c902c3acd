import csv
import math

import numpy as np
import pytest

from dpcounts.accounting import (
    PrivacyBudget,
    PrivacyFilter,
    cdp_to_dp,
    dp_to_cdp,
    gaussian_rho_cost,
    write_charge_log_csv,
)


class TestPrivacyBudget:
    def test_valid(self):
        PrivacyBudget(0.0, 0.0)
        PrivacyBudget(1.0, 1e-6)

    @pytest.mark.parametrize("rho,delta", [(-0.1, 0.0), (1.0, 1.0), (1.0, -1e-9), (1.0, 2.0)])
    def test_invalid(self, rho, delta):
        with pytest.raises(ValueError):
            PrivacyBudget(rho, delta)


class TestPrivacyFilter:
    def test_fresh_filter_has_zero_spend(self):
        filt = PrivacyFilter(PrivacyBudget(1.0, 1e-6))
        assert filt.rho_spent == 0.0
        assert filt.delta_spent == 0.0
        assert filt.charge_log == []

    def test_exact_exhaustion(self):
        filt = PrivacyFilter(PrivacyBudget(1.0, 1e-6))
        assert filt.try_charge(0.5, 0.0, "first")
        assert filt.try_charge(0.5, 0.0, "second")
        assert filt.rho_spent == 1.0

    def test_over_budget_rejected_without_mutation(self):
        filt = PrivacyFilter(PrivacyBudget(1.0, 1e-6))
        filt.try_charge(0.5, 0.0)
        filt.try_charge(0.5, 0.0)
        assert not filt.try_charge(1e-9, 0.0, "overflow")
        assert filt.rho_spent == 1.0
        assert filt.delta_spent == 0.0
        assert filt.charge_log[-1].accepted is False

    def test_delta_ledger_rejects(self):
        filt = PrivacyFilter(PrivacyBudget(1.0, 1e-6))
        assert filt.try_charge(0.1, 1e-6)
        assert not filt.try_charge(0.1, 1e-11)
        assert filt.delta_spent == 1e-6
        assert filt.rho_spent == 0.1

    def test_zero_budget_rejects_every_positive_charge(self):
        filt = PrivacyFilter(PrivacyBudget(0.0, 0.0))
        assert not filt.try_charge(1e-300, 0.0)
        assert not filt.try_charge(0.0, 1e-300)
        assert filt.try_charge(0.0, 0.0)  # a free charge still fits

    def test_negative_charge_rejected_loudly(self):
        filt = PrivacyFilter(PrivacyBudget(1.0, 0.5))
        with pytest.raises(ValueError):
            filt.try_charge(-0.1, 0.0)
        with pytest.raises(ValueError):
            filt.can_charge(0.0, -0.1)

    def test_fuzzed_sequences_never_exceed_budget(self):
        gen = np.random.default_rng(404)
        for _ in range(500):
            budget = PrivacyBudget(float(gen.uniform(0, 2)), float(gen.uniform(0, 0.01)))
            filt = PrivacyFilter(budget)
            for _ in range(40):
                rho_i = float(gen.choice([0.0, gen.uniform(0, 0.2), gen.uniform(0, 3)]))
                delta_i = float(gen.choice([0.0, gen.uniform(0, 0.002)]))
                before = (filt.rho_spent, filt.delta_spent)
                accepted = filt.try_charge(rho_i, delta_i)
                assert filt.rho_spent <= budget.rho
                assert filt.delta_spent <= budget.delta
                if not accepted:
                    assert (filt.rho_spent, filt.delta_spent) == before

    def test_charge_log_csv(self, tmp_path):
        filt = PrivacyFilter(PrivacyBudget(0.5, 1e-6))
        filt.try_charge(0.25, 1e-7, "gumbel:round=1")
        filt.try_charge(0.5, 0.0, "too-big")
        path = tmp_path / "charges.csv"
        write_charge_log_csv(filt, path)
        with path.open(newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["label", "rho", "delta", "accepted"]
        assert rows[1] == ["gumbel:round=1", "0.25", "1e-07", "true"]
        assert rows[2] == ["too-big", "0.5", "0.0", "false"]


class TestGaussianRhoCost:
    def test_unit_plug_in(self):
        assert gaussian_rho_cost(1.0, 1.0) == 0.5

    def test_sigma_twenty(self):
        # equals eps^2/8 at the sigma = 2/eps floor for eps = 0.1
        assert gaussian_rho_cost(20.0, 1.0) == 0.00125
        assert math.isclose(gaussian_rho_cost(20.0, 1.0), 0.1**2 / 8, rel_tol=1e-15)

    def test_floor_identity_exact_on_dyadic_grid(self):
        for k in range(-10, 4):
            eps = 2.0**k
            assert gaussian_rho_cost(2.0 / eps, 1.0) == eps**2 / 8

    def test_floor_identity_near_exact_on_general_grid(self):
        for eps in np.linspace(0.001, 8.0, 997):
            assert math.isclose(gaussian_rho_cost(2.0 / eps, 1.0), eps**2 / 8, rel_tol=1e-12)

    @pytest.mark.parametrize("sigma,d2", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0), (1.0, -2.0)])
    def test_invalid(self, sigma, d2):
        with pytest.raises(ValueError):
            gaussian_rho_cost(sigma, d2)


class TestConversions:
    def test_zero_rho(self):
        eps, delta_total = cdp_to_dp(0.0, 1e-6, 1e-7)
        assert eps == 0.0
        assert delta_total == 1e-6 + 1e-7

    def test_log_one_over_delta_prime_equal_one(self):
        eps, _ = cdp_to_dp(1.0, 0.0, math.exp(-1))
        assert math.isclose(eps, 3.0, rel_tol=1e-12)

    def test_frozen_value(self):
        eps, delta_total = cdp_to_dp(0.5, 1e-6, 1e-6)
        assert math.isclose(eps, 5.756521769756932, rel_tol=1e-12)
        assert delta_total == 2e-6

    def test_delta_prime_range(self):
        for bad in (0.0, 1.0, -0.5, 2.0):
            with pytest.raises(ValueError):
                cdp_to_dp(0.5, 0.0, bad)
        with pytest.raises(ValueError):
            cdp_to_dp(-0.1, 0.0, 0.5)

    def test_epsilon_strictly_increasing_in_rho(self):
        grid = [cdp_to_dp(rho, 0.0, 1e-6)[0] for rho in np.linspace(0.01, 4.0, 200)]
        assert all(a < b for a, b in zip(grid, grid[1:]))

    def test_dp_to_cdp(self):
        assert dp_to_cdp(0.0, 0.0) == (0.0, 0.0)
        assert dp_to_cdp(1.0, 0.0) == (0.5, 0.0)
        assert dp_to_cdp(2.0, 1e-6) == (2.0, 1e-6)
        with pytest.raises(ValueError):
            dp_to_cdp(-1.0, 0.0)
