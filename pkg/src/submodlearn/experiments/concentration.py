"""Monte-Carlo checks of the submodular concentration inequalities."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import binom

from ..core import SetFunction
from .distributions import ProductDistribution, as_rng

SLACK_SE = 3.0


@dataclass
class TailCheckResult:
    """``Pr[f <= b - t sqrt(b)] * Pr[f >= b]`` against ``exp(-t^2/4)``."""

    b: float
    t: float
    lhs_product: float
    bound: float
    trials: int
    standard_error: float
    low_tail: float
    high_tail: float

    @property
    def passed(self) -> bool:
        return self.lhs_product <= self.bound + SLACK_SE * self.standard_error


def tail_events(values: np.ndarray, b: float, t: float) -> tuple[np.ndarray, np.ndarray]:
    return values <= b - t * math.sqrt(b), values >= b


def tail_check_from_values(values: np.ndarray, b: float, t: float) -> TailCheckResult:
    if b < 0 or t < 0:
        raise ValueError("need b, t >= 0")
    low, high = tail_events(values, b, t)
    N = len(values)
    p1, p2 = float(low.mean()), float(high.mean())
    p12 = float((low & high).mean())
    # delta method for the product of two dependent proportions
    var = (p2 * p2 * p1 * (1 - p1) + p1 * p1 * p2 * (1 - p2) + 2 * p1 * p2 * (p12 - p1 * p2)) / N
    return TailCheckResult(b, t, p1 * p2, math.exp(-t * t / 4), N, math.sqrt(max(var, 0.0)), p1, p2)


def concentration_check(f: SetFunction, dist: ProductDistribution, b: float, t: float, trials: int, seed) -> TailCheckResult:
    X = dist.sample_matrix(trials, as_rng(seed))
    return tail_check_from_values(f.evaluate_many(X), b, t)


def exact_profile_tails(h, p: float, b: float, t: float) -> tuple[float, float]:
    """Exact ``(Pr[f <= b - t sqrt(b)], Pr[f >= b])`` for ``f(S) = h[|S|]`` under i.i.d. inclusion ``p``."""
    h = np.asarray(h, dtype=float)
    n = len(h) - 1
    pmf = binom.pmf(np.arange(n + 1), n, p)
    low, high = tail_events(h, b, t)
    return float(pmf[low].sum()), float(pmf[high].sum())


@dataclass
class MeanCheckResult:
    verdict: str  # pass | fail | not-applicable
    alpha: float
    mean: float
    tail: float
    bound: float
    standard_error: float
    trials: int


def mean_concentration_check(f: SetFunction, dist: ProductDistribution, alpha: float, trials: int, seed) -> MeanCheckResult:
    """``Pr[|f - E f| > alpha E f]`` against ``4 exp(-alpha^2 E f / 16)``; needs ``E f >= 240 / alpha``."""
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    vals = f.evaluate_many(dist.sample_matrix(trials, as_rng(seed)))
    return mean_check_from_values(vals, alpha)


def mean_check_from_values(values: np.ndarray, alpha: float) -> MeanCheckResult:
    E = float(values.mean())
    N = len(values)
    tail = float(np.mean(np.abs(values - E) > alpha * E))
    se = math.sqrt(tail * (1 - tail) / N)
    bound = 4 * math.exp(-alpha * alpha * E / 16)
    if E < 240 / alpha:
        return MeanCheckResult("not-applicable", alpha, E, tail, bound, se, N)
    verdict = "pass" if tail <= bound + SLACK_SE * se else "fail"
    return MeanCheckResult(verdict, alpha, E, tail, bound, se, N)
