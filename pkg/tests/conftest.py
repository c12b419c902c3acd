import csv
import os
from pathlib import Path

import pytest

from dpcounts.records import RecordSet

# Real-dataset gates. Point DPCOUNTS_REDDIT_SMALL at a local copy of the
# Reddit small-sample CSV (see README) to enable the exact-statistics and
# qualitative-reproduction acceptance tests; they skip loudly otherwise.
REDDIT_SMALL_ENV = "DPCOUNTS_REDDIT_SMALL"
REDDIT_USER_ENV = "DPCOUNTS_REDDIT_USER_COLUMN"
REDDIT_TEXT_ENV = "DPCOUNTS_REDDIT_TEXT_COLUMN"


def reddit_small_path() -> Path | None:
    candidate = os.environ.get(REDDIT_SMALL_ENV)
    if candidate and Path(candidate).exists():
        return Path(candidate)
    fallback = Path(__file__).resolve().parent.parent / "data" / "reddit_small.csv"
    return fallback if fallback.exists() else None


def write_pairs_csv(path: Path, rows) -> Path:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["user_id", "item"])
        writer.writerows(rows)
    return path


@pytest.fixture
def pairs_csv(tmp_path):
    def _make(rows, name="pairs.csv"):
        return write_pairs_csv(tmp_path / name, rows)

    return _make


@pytest.fixture
def records_csv(tmp_path):
    def _make(rs: RecordSet, name="records.csv"):
        return write_pairs_csv(tmp_path / name, rs.records)

    return _make
