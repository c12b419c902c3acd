"""User-item records, distinct-count histograms, and sorted top-k views.

Counting is always "number of distinct users holding an item", so one user
can move any single count by at most 1 no matter how many records they
contribute. Everything downstream (selection, noise calibration) relies on
that per-partition sensitivity of 1.
"""

from __future__ import annotations

import csv
import math
import unicodedata
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

Record = tuple[str, str]

PAIRS_CSV = "pairs_csv"
USER_TEXT_CSV = "user_text_csv"
FORMATS = (PAIRS_CSV, USER_TEXT_CSV)


@dataclass(frozen=True)
class RecordSet:
    """Raw (user_id, item) pairs; duplicates allowed, order carries no meaning."""

    records: tuple[Record, ...]

    def __post_init__(self):
        for user, item in self.records:
            if not user or not item:
                raise ValueError(f"empty user_id or item in record {(user, item)!r}")

    def __len__(self) -> int:
        return len(self.records)

    def users(self) -> set[str]:
        return {user for user, _ in self.records}


@dataclass(frozen=True)
class Histogram:
    """Item -> number of distinct users holding that item (zero counts absent)."""

    entries: Mapping[str, int]

    def __post_init__(self):
        for item, count in self.entries.items():
            if not isinstance(count, int) or count < 1:
                raise ValueError(f"count for {item!r} must be a positive int, got {count!r}")

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, item: str) -> bool:
        return item in self.entries

    def __getitem__(self, item: str) -> int:
        return self.entries[item]


@dataclass(frozen=True)
class TopKView:
    """The k_bar largest counts (descending, ties by item ascending) plus the
    count of the first item left out (0 when nothing is left out)."""

    top: tuple[tuple[str, int], ...]
    tail_count: int
    k_bar: int


@dataclass
class ContributionStats:
    """Distinct-item counts per user with nearest-rank percentile lookups."""

    per_user_distinct: dict[str, int]
    percentile_cache: dict[float, int] = field(default_factory=dict)

    def percentile(self, p: float) -> int:
        """Nearest-rank percentile: the ceil(p/100 * n)-th smallest value.

        The result is always a member of the per-user multiset.
        """
        if not 0 < p <= 100:
            raise ValueError(f"percentile must be in (0, 100], got {p}")
        if not self.per_user_distinct:
            raise ValueError("no users to take a percentile over")
        if p not in self.percentile_cache:
            values = sorted(self.per_user_distinct.values())
            rank = max(1, math.ceil(p / 100 * len(values)))
            self.percentile_cache[p] = values[rank - 1]
        return self.percentile_cache[p]


def tokenize(text: str) -> list[str]:
    """Lowercase, split on Unicode whitespace, strip leading/trailing punctuation.

    Tokens that are pure punctuation vanish. This is the one deterministic
    preprocessing rule used for text columns; upstream datasets cleaned with a
    different rule will produce different histograms.
    """
    tokens = []
    for raw in text.lower().split():
        start, end = 0, len(raw)
        while start < end and unicodedata.category(raw[start]).startswith("P"):
            start += 1
        while end > start and unicodedata.category(raw[end - 1]).startswith("P"):
            end -= 1
        if end > start:
            tokens.append(raw[start:end])
    return tokens


def load_records(
    path: str | Path,
    format: str,
    text_column: str | None = None,
    user_column: str | None = None,
) -> RecordSet:
    """Stream a CSV file into a RecordSet.

    pairs_csv expects columns ``user_id,item`` and yields one record per row.
    user_text_csv tokenizes ``text_column`` and yields one record per token;
    the user id comes from ``user_column``, or from the 0-based row index when
    no user column is given (one synthetic user per row).

    Raises FileNotFoundError for a missing file and ValueError for a missing
    column or a file that yields no records at all.
    """
    path = Path(path)
    if format not in FORMATS:
        raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
    if format == USER_TEXT_CSV and not text_column:
        raise ValueError("user_text_csv requires text_column")
    if not path.exists():
        raise FileNotFoundError(f"dataset file not found: {path}")

    records: list[Record] = []
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ValueError(f"{path}: empty file (no header row)")
        needed = {PAIRS_CSV: ["user_id", "item"]}.get(format) or (
            [text_column] + ([user_column] if user_column else [])
        )
        missing = [c for c in needed if c not in reader.fieldnames]
        if missing:
            raise ValueError(f"{path}: missing column(s) {missing}; header is {reader.fieldnames}")
        for index, row in enumerate(reader):
            if format == PAIRS_CSV:
                user, item = row["user_id"], row["item"]
                if not user or not item:
                    raise ValueError(f"{path}: empty user_id or item on data row {index}")
                records.append((user, item))
            else:
                user = row[user_column] if user_column else str(index)
                if not user:
                    raise ValueError(f"{path}: empty {user_column!r} on data row {index}")
                for token in tokenize(row[text_column] or ""):
                    records.append((user, token))
    if not records:
        raise ValueError(f"{path}: no records loaded")
    return RecordSet(tuple(records))


def build_histogram(rs: RecordSet) -> Histogram:
    """Count distinct users per item; per-user duplicate records collapse."""
    seen: dict[str, set[str]] = defaultdict(set)
    for user, item in rs.records:
        seen[item].add(user)
    return Histogram({item: len(users) for item, users in seen.items()})


def contribution_stats(rs: RecordSet) -> ContributionStats:
    if not rs.records:
        raise ValueError("cannot compute contribution stats of an empty RecordSet")
    distinct: dict[str, set[str]] = defaultdict(set)
    for user, item in rs.records:
        distinct[user].add(item)
    return ContributionStats({user: len(items) for user, items in distinct.items()})


def contribution_percentile(rs: RecordSet, p: float) -> int:
    """Nearest-rank percentile of the per-user distinct-item counts."""
    return contribution_stats(rs).percentile(p)


def _view_of_mapping(entries: Mapping[str, int], k_bar: int) -> TopKView:
    # Shared with the release engine, which keeps a plain working dict.
    ranked = sorted(entries.items(), key=lambda kv: (-kv[1], kv[0]))
    top = tuple(ranked[:k_bar])
    tail_count = ranked[k_bar][1] if len(ranked) > k_bar else 0
    return TopKView(top=top, tail_count=tail_count, k_bar=k_bar)


def top_view(h: Histogram, k_bar: int) -> TopKView:
    """The top-k_bar slice of a histogram, ties broken by item ascending."""
    if k_bar < 1:
        raise ValueError(f"k_bar must be >= 1, got {k_bar}")
    return _view_of_mapping(h.entries, k_bar)


def write_histogram_csv(h: Histogram, path: str | Path) -> None:
    """Cache a histogram as ``item,count``, sorted by count desc then item asc."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["item", "count"])
        for item, count in sorted(h.entries.items(), key=lambda kv: (-kv[1], kv[0])):
            writer.writerow([item, count])


def read_histogram_csv(path: str | Path) -> Histogram:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"histogram file not found: {path}")
    entries: dict[str, int] = {}
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"item", "count"} <= set(reader.fieldnames):
            raise ValueError(f"{path}: expected header item,count")
        for row in reader:
            entries[row["item"]] = int(row["count"])
    return Histogram(entries)
