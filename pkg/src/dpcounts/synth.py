"""Synthetic data generators for tests and demos."""

from __future__ import annotations

import numpy as np

from .records import Histogram, RecordSet
from .sampling import Rng


def zipf_histogram(n_items: int, exponent: float = 1.1, top_count: int = 10_000) -> Histogram:
    """Deterministic Zipf-shaped histogram: count_i = max(1, top_count / i^s)."""
    if n_items < 1:
        raise ValueError("n_items must be >= 1")
    counts = np.maximum(1, (top_count / np.arange(1, n_items + 1) ** exponent)).astype(int)
    width = len(str(n_items))
    return Histogram({f"item{i:0{width}d}": int(c) for i, c in enumerate(counts, 1)})


def zipf_records(
    n_users: int,
    n_items: int,
    rng: Rng,
    exponent: float = 1.1,
    mean_items_per_user: float = 20.0,
) -> RecordSet:
    """Users draw a geometric number of items from a Zipf law over the domain."""
    if n_users < 1 or n_items < 1:
        raise ValueError("n_users and n_items must be >= 1")
    weights = 1.0 / np.arange(1, n_items + 1) ** exponent
    weights /= weights.sum()
    gen = rng.generator
    records: list[tuple[str, str]] = []
    width = len(str(n_items))
    sizes = gen.geometric(1.0 / mean_items_per_user, size=n_users)
    for u, size in enumerate(sizes):
        picks = gen.choice(n_items, size=int(size), p=weights)
        records.extend((f"u{u}", f"item{p + 1:0{width}d}") for p in picks)
    return RecordSet(tuple(records))


def one_item_per_user_records(n_users: int, n_items: int, rng: Rng, exponent: float = 1.1) -> RecordSet:
    """Finance-like data: every user contributes exactly one item."""
    if n_users < 1 or n_items < 1:
        raise ValueError("n_users and n_items must be >= 1")
    weights = 1.0 / np.arange(1, n_items + 1) ** exponent
    weights /= weights.sum()
    picks = rng.generator.choice(n_items, size=n_users, p=weights)
    width = len(str(n_items))
    return RecordSet(tuple((f"u{u}", f"item{p + 1:0{width}d}") for u, p in enumerate(picks)))
