"""Approximate-zCDP budget filter and CDP/DP conversions.

The filter is charge-before-run: callers ask whether a charge fits, and only
run the mechanism once the charge has been accepted. A rejected charge never
mutates the running totals, so the spend can never exceed the budget no
matter how adaptively the charges are chosen.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class PrivacyBudget:
    """An overall (rho, delta) budget: rho >= 0, 0 <= delta < 1."""

    rho: float
    delta: float

    def __post_init__(self):
        if self.rho < 0:
            raise ValueError(f"rho must be >= 0, got {self.rho}")
        if not 0 <= self.delta < 1:
            raise ValueError(f"delta must be in [0, 1), got {self.delta}")


@dataclass(frozen=True)
class Charge:
    label: str
    rho: float
    delta: float
    accepted: bool


class PrivacyFilter:
    """Running (rho, delta) ledger against a fixed budget.

    Every attempt is logged with its outcome; only accepted charges move the
    totals. This is a research ledger, not a hardened accountant: the log is
    for debugging and reporting.
    """

    def __init__(self, budget: PrivacyBudget):
        self.budget = budget
        self.rho_spent = 0.0
        self.delta_spent = 0.0
        self.charge_log: list[Charge] = []

    def __repr__(self) -> str:
        return (
            f"PrivacyFilter(rho_spent={self.rho_spent:.6g}/{self.budget.rho:.6g}, "
            f"delta_spent={self.delta_spent:.6g}/{self.budget.delta:.6g}, "
            f"charges={len(self.charge_log)})"
        )

    def can_charge(self, rho_i: float, delta_i: float) -> bool:
        """Would a (rho_i, delta_i) charge fit? Pure check, no state change, no log."""
        if rho_i < 0 or delta_i < 0:
            raise ValueError("charges must be non-negative")
        return (
            self.rho_spent + rho_i <= self.budget.rho
            and self.delta_spent + delta_i <= self.budget.delta
        )

    def try_charge(self, rho_i: float, delta_i: float, label: str = "") -> bool:
        """Accept the charge iff it fits; rejection is a normal outcome.

        Callers must check acceptance BEFORE running the mechanism being
        charged for.
        """
        accepted = self.can_charge(rho_i, delta_i)
        if accepted:
            self.rho_spent += rho_i
            self.delta_spent += delta_i
        self.charge_log.append(Charge(label, rho_i, delta_i, accepted))
        return accepted


def gaussian_rho_cost(sigma: float, delta_2: float = 1.0) -> float:
    """CDP cost of Gaussian noise N(0, sigma^2) on an l2-sensitivity-delta_2
    statistic: delta_2^2 / (2 sigma^2)."""
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if delta_2 <= 0:
        raise ValueError(f"delta_2 must be positive, got {delta_2}")
    return delta_2**2 / (2 * sigma**2)


def cdp_to_dp(rho: float, delta: float, delta_prime: float) -> tuple[float, float]:
    """delta-approximate rho-CDP implies (rho + 2*sqrt(rho*ln(1/delta')), delta + delta')-DP."""
    if rho < 0:
        raise ValueError(f"rho must be >= 0, got {rho}")
    if not 0 < delta_prime < 1:
        raise ValueError(f"delta_prime must be in (0, 1), got {delta_prime}")
    epsilon = rho + 2 * math.sqrt(rho * math.log(1 / delta_prime))
    return epsilon, delta + delta_prime


def dp_to_cdp(epsilon: float, delta: float) -> tuple[float, float]:
    """(epsilon, delta)-DP implies delta-approximate epsilon^2/2-CDP."""
    if epsilon < 0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon}")
    return epsilon**2 / 2, delta


def write_charge_log_csv(filter_state: PrivacyFilter, path: str | Path) -> None:
    """Dump the charge log as ``label,rho,delta,accepted``."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["label", "rho", "delta", "accepted"])
        for charge in filter_state.charge_log:
            writer.writerow(
                [charge.label, repr(charge.rho), repr(charge.delta), str(charge.accepted).lower()]
            )
