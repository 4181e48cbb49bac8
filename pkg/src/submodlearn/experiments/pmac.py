"""Sandwich coverage of a hypothesis against a target."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import SetFunction
from ..learners import Hypothesis
from .distributions import as_rng

REL_TOL = 1e-9


@dataclass
class PmacResult:
    coverage: float
    factor_quantile: float
    test_size: int
    epsilon: float


def realized_factors(h_vals: np.ndarray, f_vals: np.ndarray) -> np.ndarray:
    """Smallest ``phi`` with ``h <= f <= phi h``; ``inf`` when no factor works."""
    tol = REL_TOL * np.maximum(1.0, np.abs(f_vals))
    out = np.full(len(f_vals), np.inf)
    both_zero = (np.abs(f_vals) <= tol) & (np.abs(h_vals) <= tol)
    below = (h_vals <= f_vals + tol) & (h_vals > 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        out[below] = np.maximum(1.0, f_vals[below] / h_vals[below])
    out[both_zero] = 1.0
    return out


def sandwich_mask(h_vals: np.ndarray, f_vals: np.ndarray, alpha: float) -> np.ndarray:
    """``h <= f <= alpha h`` with a relative tolerance; ``0 <= 0`` passes."""
    tol = REL_TOL * np.maximum(1.0, np.abs(f_vals))
    return (h_vals <= f_vals + tol) & (f_vals <= alpha * h_vals + tol)


def pmac_evaluate(
    h: Hypothesis,
    f_star: SetFunction,
    dist,
    alpha: float,
    test_size: int,
    seed,
    epsilon: float = 0.1,
) -> PmacResult:
    """Fraction of fresh draws where ``h(S) <= f*(S) <= alpha h(S)``, plus the ``(1 - epsilon)`` factor quantile."""
    if test_size < 1:
        raise ValueError("test_size must be at least 1")
    X = dist.sample_matrix(test_size, as_rng(seed))
    return pmac_from_values(h.evaluate_many(X), f_star.evaluate_many(X), alpha, epsilon)


def pmac_from_values(h_vals, f_vals, alpha: float, epsilon: float = 0.1) -> PmacResult:
    h_vals = np.asarray(h_vals, dtype=float)
    f_vals = np.asarray(f_vals, dtype=float)
    cov = float(sandwich_mask(h_vals, f_vals, alpha).mean())
    q = float(np.quantile(realized_factors(h_vals, f_vals), 1 - epsilon, method="higher"))
    return PmacResult(cov, q, len(f_vals), epsilon)
