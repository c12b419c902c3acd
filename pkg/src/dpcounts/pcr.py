"""Iterated count release over an unknown domain.

Each round noises the top counts with Gumbel noise and compares them against
a noised threshold tied to the first count outside the view, so items beyond
the top-k_bar slice can hide the ones inside it but never get released
themselves. A miss escalates the per-round epsilon by sqrt(2); a hit pays for
a calibrated Gaussian release of the discovered item's count. The privacy
filter decides when to stop.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .accounting import PrivacyBudget, PrivacyFilter, gaussian_rho_cost
from .records import Histogram, TopKView, _view_of_mapping
from .sampling import Rng, gaussian, gumbel_from_uniform

_SQRT2 = math.sqrt(2.0)


class _Bottom:
    """Sentinel for "no item beat the threshold"; distinguishable from any item."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "BOTTOM"


BOTTOM = _Bottom()


@dataclass(frozen=True)
class PcrParams:
    """Release parameters. Defaults are deliberately one-size-fits-all: a tiny
    starting epsilon, a per-call delta far below any overall delta, and a top
    slice large enough that the tail correction stays small."""

    epsilon_star: float = 0.0005
    delta_star: float = 1e-11
    k_bar: int = 10_000
    target_rel_error: float = 0.1
    sigma_safety_factor: float = 1.5

    def __post_init__(self):
        if self.epsilon_star <= 0:
            raise ValueError(f"epsilon_star must be positive, got {self.epsilon_star}")
        if not 0 < self.delta_star < 1:
            raise ValueError(f"delta_star must be in (0, 1), got {self.delta_star}")
        if self.k_bar < 1:
            raise ValueError(f"k_bar must be >= 1, got {self.k_bar}")
        if self.target_rel_error <= 0:
            raise ValueError(f"target_rel_error must be positive, got {self.target_rel_error}")
        if self.sigma_safety_factor <= 0:
            raise ValueError(f"sigma_safety_factor must be positive, got {self.sigma_safety_factor}")


@dataclass(frozen=True)
class ReleaseEntry:
    """One released count. epsilon_at_release is None for releases that did
    not go through per-round selection (the baseline pipeline)."""

    item: str
    noisy_count: float
    sigma: float
    epsilon_at_release: float | None
    round_index: int


@dataclass(frozen=True)
class ReleasedHistogram:
    entries: tuple[ReleaseEntry, ...]
    filter_final: PrivacyFilter

    def items(self) -> list[str]:
        return [entry.item for entry in self.entries]


def udg_threshold(epsilon: float, delta_star: float, k_bar: int) -> float:
    """Selection threshold 1 + ln(k_bar/delta_star)/epsilon."""
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if not 0 < delta_star < 1:
        raise ValueError(f"delta_star must be in (0, 1), got {delta_star}")
    if k_bar < 1:
        raise ValueError(f"k_bar must be >= 1, got {k_bar}")
    return 1 + math.log(k_bar / delta_star) / epsilon


def sigma_target(epsilon: float, params: PcrParams) -> float:
    """Noise scale aiming at the target relative error for a count that just
    cleared the threshold: (r / safety_factor) * (1 + ln(k_bar/delta_star)/epsilon)."""
    return (params.target_rel_error / params.sigma_safety_factor) * udg_threshold(
        epsilon, params.delta_star, params.k_bar
    )


def udg_select(view: TopKView, beta: float, T: float, k: int, rng: Rng) -> list:
    """Gumbel-noised top-k selection against a noised threshold.

    Adds independent Gumbel(beta) noise to every positive count in the view
    and to T + tail_count, then returns up to k items whose noised counts
    exceed the noised threshold, sorted by noised count descending. Appends
    the BOTTOM sentinel iff fewer than k items qualified.

    Draw order is fixed (threshold first, then view order) so a seeded run is
    reproducible.
    """
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta}")
    if not 1 <= k <= view.k_bar:
        raise ValueError(f"k must be in [1, k_bar={view.k_bar}], got {k}")

    threshold = T + view.tail_count + gumbel_from_uniform(rng.uniform_open(), beta)

    items = [item for item, count in view.top if count > 0]
    selected: list = []
    if items:
        counts = np.array([count for _, count in view.top if count > 0], dtype=float)
        noisy = counts + gumbel_from_uniform(rng.uniform_open_array(len(items)), beta)
        qualified = np.flatnonzero(noisy > threshold)
        order = qualified[np.argsort(-noisy[qualified], kind="stable")][:k]
        selected = [items[i] for i in order]
    if len(selected) < k:
        selected.append(BOTTOM)
    return selected


def pcr_run(
    h: Histogram, budget: PrivacyBudget, params: PcrParams | None = None, *, rng: Rng
) -> ReleasedHistogram:
    """Release as many counts as the budget allows.

    Loops while the filter can still cover a provisional epsilon^2/4 + delta*
    round. Every round pays epsilon^2/8 + delta* for selection; a miss
    escalates epsilon by sqrt(2), a hit additionally pays 1/(2 sigma^2) for
    the Gaussian release and removes the item from the working histogram.
    Rounds keep running (and paying) on an exhausted histogram until the
    filter stops them.
    """
    params = params or PcrParams()
    if budget.rho <= params.epsilon_star**2 / 4:
        raise ValueError(
            f"budget rho {budget.rho} must exceed epsilon_star^2/4 = {params.epsilon_star ** 2 / 4}"
        )
    if budget.delta <= params.delta_star:
        raise ValueError(f"budget delta {budget.delta} must exceed delta_star {params.delta_star}")

    filt = PrivacyFilter(budget)
    working = dict(h.entries)
    view: TopKView | None = None
    eps_last = params.epsilon_star
    entries: list[ReleaseEntry] = []
    round_index = 0

    while filt.can_charge(eps_last**2 / 4, params.delta_star):
        round_index += 1
        if view is None:
            view = _view_of_mapping(working, params.k_bar)
        # Covered by the epsilon^2/4 reservation just checked.
        ok = filt.try_charge(eps_last**2 / 8, params.delta_star, f"gumbel:round={round_index}")
        assert ok, "reservation must cover the selection charge"
        picked = udg_select(
            view, 1.0 / eps_last, udg_threshold(eps_last, params.delta_star, params.k_bar), 1, rng
        )[0]
        if picked is BOTTOM:
            eps_last *= _SQRT2
            continue
        sigma = max(sigma_target(eps_last, params), 2.0 / eps_last)
        # Float guard: keep the Gaussian charge within the epsilon^2/8 half of
        # the reservation (1/(2*(2/eps)^2) can round an ulp past eps^2/8, and
        # the running sum can round past the budget).
        while gaussian_rho_cost(sigma) > eps_last**2 / 8 or not filt.can_charge(
            gaussian_rho_cost(sigma), 0.0
        ):
            sigma = math.nextafter(sigma, math.inf)
        filt.try_charge(gaussian_rho_cost(sigma), 0.0, f"gaussian:round={round_index}")
        entries.append(
            ReleaseEntry(
                item=picked,
                noisy_count=working[picked] + gaussian(sigma, rng),
                sigma=sigma,
                epsilon_at_release=eps_last,
                round_index=round_index,
            )
        )
        del working[picked]
        view = None
    return ReleasedHistogram(tuple(entries), filt)


def write_release_csv(release: ReleasedHistogram, path: str | Path) -> None:
    """Dump release entries as ``item,noisy_count,sigma,epsilon_at_release,round_index``."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["item", "noisy_count", "sigma", "epsilon_at_release", "round_index"])
        for e in release.entries:
            eps = "" if e.epsilon_at_release is None else repr(e.epsilon_at_release)
            writer.writerow([e.item, repr(e.noisy_count), repr(e.sigma), eps, e.round_index])


def read_release_csv(path: str | Path) -> tuple[ReleaseEntry, ...]:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"release file not found: {path}")
    expected = ["item", "noisy_count", "sigma", "epsilon_at_release", "round_index"]
    entries: list[ReleaseEntry] = []
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != expected:
            raise ValueError(f"{path}: expected header {','.join(expected)}")
        for row in reader:
            entries.append(
                ReleaseEntry(
                    item=row["item"],
                    noisy_count=float(row["noisy_count"]),
                    sigma=float(row["sigma"]),
                    epsilon_at_release=float(row["epsilon_at_release"])
                    if row["epsilon_at_release"]
                    else None,
                    round_index=int(row["round_index"]),
                )
            )
    return tuple(entries)
