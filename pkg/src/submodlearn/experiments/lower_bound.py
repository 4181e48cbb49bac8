"""Adversarial experiment: learn a matroid rank from the uniform distribution on planted sets.

The target is the rank of ``M_B`` for a uniformly random ``B``.  Each planted
set has rank ``b`` or ``d`` depending on an unseen coin, so no single value
covers both possibilities within factor ``sqrt(d/b)`` on each side.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..core import ConstructionError, masks_to_matrix
from ..expanders import ExpansionParams, sample_expander, verify_expansion
from ..learners import Hypothesis, learn_general
from ..matroids import FamilyMB, build_family_MB
from .distributions import UniformFamilyDistribution, as_rng

REL_TOL = 1e-9


@dataclass
class LowerBoundResult:
    k: int
    n: int
    d: int
    b: int
    train_size: int
    train_coverage: float  # fraction of planted sets seen in training
    miss_fraction: float  # over the uniform distribution on planted sets
    unseen_miss_fraction: float
    threshold: float
    B_size: int

    @property
    def excess(self) -> float:
        """``miss_fraction - (1 - train_coverage) / 2``; the adversary argument says this is >= 0 in expectation."""
        return self.miss_fraction - (1 - self.train_coverage) / 2


def factor_miss(pred: np.ndarray, truth: np.ndarray, phi: float) -> np.ndarray:
    """True where ``pred`` and ``truth`` differ by a factor of at least ``phi`` either way (or ``pred`` is 0)."""
    pred = np.asarray(pred, dtype=float)
    with np.errstate(divide="ignore"):
        ratio = np.where(pred > 0, np.maximum(pred / truth, truth / pred), np.inf)
    return ratio >= phi * (1 - REL_TOL)


def default_learner(X: np.ndarray, y: np.ndarray, seed: int) -> Hypothesis:
    return learn_general((X, y), seed)


class LookupHypothesis:
    """Returns the memorized value on training sets and ``fallback`` elsewhere."""

    def __init__(self, X: np.ndarray, y: np.ndarray, fallback: float):
        self.table = {row.tobytes(): float(v) for row, v in zip(np.asarray(X, dtype=bool), y)}
        self.fallback = fallback

    def evaluate_many(self, X: np.ndarray) -> np.ndarray:
        return np.array([self.table.get(row.tobytes(), self.fallback) for row in np.asarray(X, dtype=bool)])


def memorizing_learner(low: float, high: float):
    """Exact on seen sets, a fair-coin guess between ``low`` and ``high`` on unseen ones.

    This is the best any learner can do against a random ``B``: it misses an
    unseen planted set with probability exactly 1/2.
    """

    def learner(X, y, seed):
        guess = high if np.random.default_rng(seed).random() < 0.5 else low
        return LookupHypothesis(X, y, guess)

    return learner


def lower_bound_experiment(
    k: int,
    n: int,
    d: int,
    b: int,
    tau: int,
    learner: Callable[[np.ndarray, np.ndarray, int], Hypothesis] = default_learner,
    train_size: int = 64,
    seed: int = 0,
    expansion: ExpansionParams | None = None,
    max_graph_tries: int = 20,
) -> LowerBoundResult:
    """Train on ``train_size`` uniform draws from the planted sets, score on every planted set."""
    rng = as_rng(seed)
    params = expansion or ExpansionParams(d, 2, 0.25)
    mb = None
    for _ in range(max_graph_tries):
        graph = sample_expander(k, n, d, int(rng.integers(2**63)))
        if not verify_expansion(graph, params).ok:
            continue
        B = np.flatnonzero(rng.random(k) < 0.5).tolist()
        try:
            mb = build_family_MB(graph, b, d, tau, B)
            break
        except ConstructionError:
            continue
    if mb is None:
        raise ConstructionError(f"no verified-expansion family M_B after {max_graph_tries} graphs")
    return score_family(mb, learner, train_size, rng)


def score_family(mb: FamilyMB, learner, train_size: int, rng) -> LowerBoundResult:
    k, n, d, b = mb.k, mb.n, mb.d, mb.b
    planted = [mb.A(i) for i in range(k)]
    truth = np.array([mb.rank(a) for a in planted], dtype=float)
    dist = UniformFamilyDistribution(n, tuple(planted))
    idx = dist.sample_indices(train_size, rng)
    X = masks_to_matrix(planted, n)
    h = learner(X[idx], truth[idx], int(rng.integers(2**63)))
    pred = h.evaluate_many(X)
    phi = math.sqrt(d / b)
    miss = factor_miss(pred, truth, phi)
    seen = np.zeros(k, dtype=bool)
    seen[idx] = True
    unseen_miss = float(miss[~seen].mean()) if (~seen).any() else 0.0
    return LowerBoundResult(k, n, d, b, train_size, float(seen.mean()), float(miss.mean()), unseen_miss, phi, len(mb.B))
