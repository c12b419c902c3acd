"""Contribution-bounding baseline: bound, discover, restrict, re-bound, release.

The five steps trade bias for a finite cross-partition sensitivity: every
user is truncated to at most m distinct items before the domain is
discovered, and to at most m' before the counts are noised. Percentiles for
m and m' are read off the raw data without privacy, which mirrors how the
comparison is usually run and flatters this baseline.
"""

from __future__ import annotations

import csv
import math
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path

from .accounting import PrivacyBudget, PrivacyFilter
from .pcr import ReleaseEntry, ReleasedHistogram
from .records import Histogram, RecordSet, build_histogram, contribution_percentile
from .sampling import Rng

PAPER_M_PRIME = "paper_m_prime"
SQRT_M_PRIME = "sqrt_m_prime"


@dataclass(frozen=True)
class PlumeParams:
    alpha: float = 0.5
    percentile_p: float = 95.0
    target_rel_error: float = 0.1
    apply_threshold: bool = False
    # paper_m_prime uses m' itself as the l2-sensitivity; sqrt_m_prime uses
    # sqrt(m') (one user moves at most m' counts by 1 each).
    sensitivity_convention: str = PAPER_M_PRIME

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")
        if not 0 < self.percentile_p <= 100:
            raise ValueError(f"percentile_p must be in (0, 100], got {self.percentile_p}")
        if self.target_rel_error <= 0:
            raise ValueError(f"target_rel_error must be positive, got {self.target_rel_error}")
        if self.sensitivity_convention not in (PAPER_M_PRIME, SQRT_M_PRIME):
            raise ValueError(f"unknown sensitivity convention {self.sensitivity_convention!r}")


@dataclass(frozen=True)
class BoundedRecordSet:
    records: RecordSet
    bound_m: int


@dataclass(frozen=True)
class PlumeManifest:
    """Per-run pipeline diagnostics; fields are None when the restricted
    dataset came out empty and the release stage never parameterized."""

    m: int
    m_prime: int | None
    sigma_ps: float
    tau: float
    sigma_release: float | None
    threshold: float | None


def bound_contributions(rs: RecordSet, m: int, rng: Rng) -> BoundedRecordSet:
    """Truncate every user to at most m distinct items.

    Users over the bound keep a uniform random subset of exactly m distinct
    items (all records of kept items survive). Users are processed in sorted
    order so a seed fixes the outcome regardless of record order.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    per_user: dict[str, set[str]] = defaultdict(set)
    for user, item in rs.records:
        per_user[user].add(item)
    over_bound = sorted(user for user, items in per_user.items() if len(items) > m)
    if not over_bound:
        return BoundedRecordSet(rs, m)
    kept_items = {user: set(rng.subset(sorted(per_user[user]), m)) for user in over_bound}
    kept = tuple(
        (user, item)
        for user, item in rs.records
        if user not in kept_items or item in kept_items[user]
    )
    return BoundedRecordSet(RecordSet(kept), m)


def partition_select(
    bounded: BoundedRecordSet, rho_ps: float, delta_ps: float, rng: Rng
) -> set[str]:
    """Discover the releasable domain by Gaussian-noise thresholding.

    Noises every positive bounded count with N(0, m/(2 rho_ps)) and keeps
    items above tau = 1 + sigma_ps * sqrt(2 ln(m / (2 delta_ps))). An item
    supported by a single user survives with probability at most delta_ps/m,
    so a union bound over the <= m counts one user can touch gives delta_ps.
    """
    sigma_ps, tau = partition_select_threshold(bounded.bound_m, rho_ps, delta_ps)
    hist = build_histogram(bounded.records)
    items = sorted(hist.entries)
    noise = sigma_ps * rng.standard_normal_array(len(items))
    return {
        item for item, z in zip(items, noise) if hist.entries[item] + z > tau
    }


def partition_select_threshold(m: int, rho_ps: float, delta_ps: float) -> tuple[float, float]:
    """(sigma_ps, tau) used by partition_select, exposed for reporting."""
    if rho_ps <= 0:
        raise ValueError(f"rho_ps must be positive, got {rho_ps}")
    if not 0 < delta_ps < 1:
        raise ValueError(f"delta_ps must be in (0, 1), got {delta_ps}")
    if 2 * delta_ps >= m:
        raise ValueError(f"delta_ps {delta_ps} too large for bound m={m}")
    sigma_ps = math.sqrt(m / (2 * rho_ps))
    tau = 1 + sigma_ps * math.sqrt(2 * math.log(m / (2 * delta_ps)))
    return sigma_ps, tau


def restrict_records(rs: RecordSet, domain: set[str]) -> RecordSet:
    """Keep exactly the records whose item is in the discovered domain."""
    return RecordSet(tuple(r for r in rs.records if r[1] in domain))


def gaussian_release(
    h: Histogram, delta_2: float, rho_cr: float, rng: Rng
) -> ReleasedHistogram:
    """Add N(0, sigma^2) with sigma = delta_2 / sqrt(2 rho_cr) to every count.

    Entries come out sorted by count descending then item ascending; the
    returned filter documents the rho_cr this release costs on its own.
    """
    if delta_2 <= 0:
        raise ValueError(f"delta_2 must be positive, got {delta_2}")
    if rho_cr <= 0:
        raise ValueError(f"rho_cr must be positive, got {rho_cr}")
    sigma = delta_2 / math.sqrt(2 * rho_cr)
    ranked = sorted(h.entries.items(), key=lambda kv: (-kv[1], kv[0]))
    noise = sigma * rng.standard_normal_array(len(ranked))
    entries = tuple(
        ReleaseEntry(
            item=item,
            noisy_count=float(count + z),
            sigma=sigma,
            epsilon_at_release=None,
            round_index=1,
        )
        for (item, count), z in zip(ranked, noise)
    )
    filt = PrivacyFilter(PrivacyBudget(rho_cr, 0.0))
    filt.try_charge(rho_cr, 0.0, "gaussian_release")
    return ReleasedHistogram(entries, filt)


def plume_threshold(sigma: float, r: float) -> float:
    """Low-count cutoff (2 + r) * sigma / r: noisy counts above it are likely
    within the target relative error."""
    if sigma <= 0 or r <= 0:
        raise ValueError("sigma and r must be positive")
    return (2 + r) * sigma / r


def plume_run(
    rs: RecordSet,
    budget: PrivacyBudget,
    params: PlumeParams | None = None,
    *,
    rng: Rng,
) -> tuple[ReleasedHistogram, PlumeManifest]:
    """Run the five-step pipeline end to end.

    alpha * rho and the whole delta go to domain discovery; the remaining rho
    goes to the Gaussian release. An empty discovered domain yields an empty
    release (both charges still count: the budget was allocated up front).
    """
    params = params or PlumeParams()
    if budget.rho <= 0:
        raise ValueError("plume_run needs a positive rho budget")
    if budget.delta <= 0:
        raise ValueError("plume_run needs a positive delta budget for partition selection")

    filt = PrivacyFilter(budget)
    rho_ps = params.alpha * budget.rho
    rho_cr = budget.rho - rho_ps  # exact complement so the ledger sums to rho

    m = contribution_percentile(rs, params.percentile_p)
    bounded = bound_contributions(rs, m, rng)
    sigma_ps, tau = partition_select_threshold(m, rho_ps, budget.delta)
    ok = filt.try_charge(rho_ps, budget.delta, "partition_select")
    assert ok, "alpha * rho always fits a fresh budget"
    domain = partition_select(bounded, rho_ps, budget.delta, rng)

    restricted = restrict_records(rs, domain)
    # Float guard: rho_ps + (rho - rho_ps) can round a half-ulp past rho.
    while rho_cr > 0 and not filt.can_charge(rho_cr, 0.0):
        rho_cr = math.nextafter(rho_cr, 0.0)
    ok = filt.try_charge(rho_cr, 0.0, "gaussian_release")
    assert ok, "release charge must fit the remaining budget"
    if not restricted.records:
        manifest = PlumeManifest(m, None, sigma_ps, tau, None, None)
        return ReleasedHistogram((), filt), manifest

    m_prime = contribution_percentile(restricted, params.percentile_p)
    rebounded = bound_contributions(restricted, m_prime, rng)
    delta_2 = float(m_prime) if params.sensitivity_convention == PAPER_M_PRIME else math.sqrt(m_prime)
    release = gaussian_release(build_histogram(rebounded.records), delta_2, rho_cr, rng)

    sigma_release = delta_2 / math.sqrt(2 * rho_cr)
    threshold = None
    entries = release.entries
    if params.apply_threshold:
        threshold = plume_threshold(sigma_release, params.target_rel_error)
        entries = tuple(e for e in entries if e.noisy_count > threshold)
    manifest = PlumeManifest(m, m_prime, sigma_ps, tau, sigma_release, threshold)
    return ReleasedHistogram(entries, filt), manifest


def write_manifest_csv(manifest: PlumeManifest, path: str | Path) -> None:
    """Dump one manifest row: ``m,m_prime,sigma_ps,tau,sigma_release,threshold``."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["m", "m_prime", "sigma_ps", "tau", "sigma_release", "threshold"])
        writer.writerow(
            [
                manifest.m,
                "" if manifest.m_prime is None else manifest.m_prime,
                repr(manifest.sigma_ps),
                repr(manifest.tau),
                "" if manifest.sigma_release is None else repr(manifest.sigma_release),
                "" if manifest.threshold is None else repr(manifest.threshold),
            ]
        )
