"""Seeded noise primitives.

Gumbel draws use the inverse CDF on a uniform from the open interval (0, 1),
so a counted call sequence on a fixed seed reproduces bit-identical streams
and ln(0) can never be evaluated.
"""

from __future__ import annotations

from typing import Sequence, TypeVar

import numpy as np

T = TypeVar("T")


class Rng:
    """Deterministic random stream (PCG64) identified by a 64-bit seed.

    Single-owner: one Rng per run/trial, never shared across threads mid-run.
    """

    def __init__(self, seed: int):
        self.seed = int(seed) % 2**64
        self._gen = np.random.default_rng(self.seed)

    def __repr__(self) -> str:
        return f"Rng(seed={self.seed})"

    @property
    def generator(self) -> np.random.Generator:
        """The underlying numpy generator, for bulk draws beyond the helpers."""
        return self._gen

    def uniform_open(self) -> float:
        """One uniform draw from the open interval (0, 1)."""
        u = float(self._gen.random())
        while u == 0.0:
            u = float(self._gen.random())
        return u

    def uniform_open_array(self, n: int) -> np.ndarray:
        u = self._gen.random(n)
        zeros = u == 0.0
        while zeros.any():
            u[zeros] = self._gen.random(int(zeros.sum()))
            zeros = u == 0.0
        return u

    def standard_normal(self) -> float:
        return float(self._gen.standard_normal())

    def standard_normal_array(self, n: int) -> np.ndarray:
        return self._gen.standard_normal(n)

    def subset(self, items: Sequence[T], size: int) -> list[T]:
        """Uniform random subset of ``size`` elements, without replacement."""
        if size > len(items):
            raise ValueError(f"cannot take {size} of {len(items)} items")
        chosen = self._gen.choice(len(items), size=size, replace=False)
        return [items[i] for i in chosen]


def gumbel_from_uniform(u, beta: float):
    """Inverse-CDF transform -beta * ln(-ln u); accepts scalars or arrays.

    Exposed separately so tests can force the uniform (e.g. u = 1/e maps to 0).
    """
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta}")
    u = np.asarray(u, dtype=float)
    if np.any(u <= 0.0) or np.any(u >= 1.0):
        raise ValueError("u must lie in the open interval (0, 1)")
    out = -beta * np.log(-np.log(u))
    return float(out) if out.ndim == 0 else out


def gumbel(beta: float, rng: Rng) -> float:
    """One draw of the Gumbel distribution with scale beta (location 0)."""
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta}")
    return gumbel_from_uniform(rng.uniform_open(), beta)


def gaussian(sigma: float, rng: Rng) -> float:
    """One draw of N(0, sigma^2)."""
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    return sigma * rng.standard_normal()
