"""Build a distinct-count histogram from user-item records and inspect it.

Run from the repository root:  python demos/01_histograms_and_percentiles.py
"""

from dpcounts import (
    RecordSet,
    build_histogram,
    contribution_percentile,
    contribution_stats,
    tokenize,
    top_view,
)

# A record is just (user_id, item). Duplicates are fine: counting is always
# "how many DISTINCT users hold this item", so u1 repeating "coffee" changes
# nothing. That is what keeps the per-count sensitivity at 1.
rs = RecordSet(
    (
        ("u1", "coffee"), ("u1", "coffee"), ("u1", "tea"), ("u1", "water"),
        ("u2", "coffee"), ("u2", "water"),
        ("u3", "coffee"),
        ("u4", "tea"),
    )
)
hist = build_histogram(rs)
print("histogram:", dict(sorted(hist.entries.items())))

# The selection mechanism never sees the whole histogram, only the top slice
# plus the count of the first item left out (the "tail count").
view = top_view(hist, k_bar=2)
print("top-2 view:", view.top, "tail count:", view.tail_count)

# Per-user contribution percentiles (nearest-rank, so always a real value
# from the data). The baseline pipeline uses these as its bounds m and m'.
stats = contribution_stats(rs)
print("distinct items per user:", dict(sorted(stats.per_user_distinct.items())))
for p in (50, 95):
    print(f"p{p} contributions:", contribution_percentile(rs, p))

# Text columns run through one fixed tokenizer: lowercase, split on
# whitespace, strip edge punctuation.
print("tokenize('The cat, the hat!'):", tokenize("The cat, the hat!"))
