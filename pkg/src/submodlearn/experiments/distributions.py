"""Sampling distributions over subsets of ``[n]``."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import ElementSet, as_mask, masks_to_matrix, matrix_to_masks


def as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@dataclass(frozen=True)
class ProductDistribution:
    """Element ``i`` included independently with probability ``p[i]``."""

    p: tuple[float, ...]

    def __post_init__(self):
        if any(not 0 <= q <= 1 for q in self.p):
            raise ValueError("probabilities must lie in [0, 1]")

    @classmethod
    def uniform(cls, n: int, p: float = 0.5) -> "ProductDistribution":
        return cls((float(p),) * n)

    @property
    def n(self) -> int:
        return len(self.p)

    def sample_matrix(self, m: int, seed) -> np.ndarray:
        rng = as_rng(seed)
        return rng.random((m, self.n)) < np.asarray(self.p)

    def sample(self, seed) -> ElementSet:
        row = self.sample_matrix(1, seed)[0]
        return ElementSet(matrix_to_masks(row[None, :])[0], self.n)


@dataclass(frozen=True)
class UniformFamilyDistribution:
    """Uniform over a fixed list of sets."""

    n: int
    support: tuple[int, ...]

    def __post_init__(self):
        if not self.support:
            raise ValueError("support must be non-empty")

    @classmethod
    def of(cls, n: int, sets) -> "UniformFamilyDistribution":
        return cls(n, tuple(as_mask(s) for s in sets))

    def sample_indices(self, m: int, seed) -> np.ndarray:
        return as_rng(seed).integers(0, len(self.support), size=m)

    def sample_matrix(self, m: int, seed) -> np.ndarray:
        table = masks_to_matrix(self.support, self.n)
        return table[self.sample_indices(m, seed)]


@dataclass(frozen=True)
class UniformSizeDistribution:
    """Uniform over all sets of size exactly ``k``."""

    n: int
    k: int

    def sample_matrix(self, m: int, seed) -> np.ndarray:
        X = np.zeros((m, self.n), dtype=bool)
        if self.k >= self.n:
            X[:] = True
        elif self.k > 0:
            keys = as_rng(seed).random((m, self.n))
            idx = np.argpartition(keys, self.k - 1, axis=1)[:, : self.k]
            np.put_along_axis(X, idx, True, axis=1)
        return X


def sample_product(dist: ProductDistribution, seed) -> ElementSet:
    return dist.sample(seed)
