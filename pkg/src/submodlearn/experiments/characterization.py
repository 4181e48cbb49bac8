"""Empirical concave profile ``h(k) = E f(R(k/n))`` and the band around it.

``h_hat`` is estimated by conditioning on ``|R(k/n)|``: with ``m_hat[j]`` the
mean of ``f`` over uniform size-``j`` draws,

    h_hat[k] = sum_j Bin(n, k/n)(j) * m_hat[j],

which is unbiased for ``h(k)`` and reuses the size-``j`` draws that the band
test needs anyway.  Standard errors follow from the per-size variances.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import binom

from ..core import SetFunction
from .distributions import UniformSizeDistribution, as_rng

C_LOW = 400.0
C_HIGH = 2000.0
SLACK_SE = 3.0


@dataclass
class CharacterizationCurve:
    n: int
    epsilon: float
    c_low: float
    c_high: float
    h_hat: np.ndarray
    h_se: np.ndarray
    coverage: np.ndarray  # index k; coverage[0] is nan (k = 0 excluded)
    second_diff: np.ndarray  # index k - 1 for k = 1..n-1
    second_diff_se: np.ndarray
    c_needed: float
    monotone_violation: float = 0.0
    poisson_violation: float = 0.0
    size_means: np.ndarray = field(default=None, repr=False)

    @property
    def min_coverage(self) -> float:
        return float(np.nanmin(self.coverage[1:])) if self.n else 1.0

    @property
    def concavity_excess(self) -> float:
        """Largest ``second_diff - 3 se`` (positive means a concavity violation beyond noise)."""
        if len(self.second_diff) == 0:
            return -math.inf
        tol = 1e-9 * max(1.0, float(np.abs(self.h_hat).max()))
        return float(np.max(self.second_diff - SLACK_SE * self.second_diff_se - tol))

    @property
    def max_second_diff(self) -> float:
        return float(self.second_diff.max()) if len(self.second_diff) else 0.0


def binomial_matrix(n: int) -> np.ndarray:
    """``B[k, j] = Pr[Bin(n, k/n) = j]``."""
    j = np.arange(n + 1)
    return np.vstack([binom.pmf(j, n, k / n) if n else np.ones(1) for k in range(n + 1)])


def characterization_curve(
    f: SetFunction,
    samples_per_k: int,
    seed,
    epsilon: float = 0.1,
    c_low: float = C_LOW,
    c_high: float = C_HIGH,
    thresholds=None,
) -> CharacterizationCurve:
    """Band coverage per ``k`` for ``h/(c_low log(1/eps)) <= f(S(k)) <= c_high log(1/eps) h``.

    ``thresholds`` selects the levels ``tau`` for the monotonicity and
    Poissonization surrogates (default: every integer up to the max value).
    """
    if samples_per_k < 2:
        raise ValueError("samples_per_k must be at least 2")
    n = f.n
    rng = as_rng(seed)
    m = samples_per_k
    vals = []
    for j in range(n + 1):
        X = UniformSizeDistribution(n, j).sample_matrix(m, rng)
        vals.append(f.evaluate_many(X))
    V = np.vstack(vals)  # (n+1, m)
    means = V.mean(axis=1)
    var_mean = V.var(axis=1, ddof=1) / m
    B = binomial_matrix(n)
    h_hat = B @ means
    h_se = np.sqrt((B * B) @ var_mean)
    if n >= 2:
        C = B[2:] - 2 * B[1:-1] + B[:-2]
        d2 = C @ means
        d2_se = np.sqrt((C * C) @ var_mean)
    else:
        d2 = d2_se = np.zeros(0)
    L = math.log(1 / epsilon)
    cov = np.full(n + 1, np.nan)
    need = np.zeros(n + 1)
    for k in range(1, n + 1):
        lo, hi = h_hat[k] / (c_low * L), c_high * L * h_hat[k]
        v = V[k]
        cov[k] = float(np.mean((v >= lo - 1e-12) & (v <= hi + 1e-12)))
        with np.errstate(divide="ignore"):
            ratio = np.maximum(h_hat[k] / v, v / h_hat[k]) if h_hat[k] > 0 else np.where(v > 0, np.inf, 1.0)
        need[k] = np.quantile(ratio, 1 - epsilon, method="higher") / L
    mono, pois = _threshold_surrogates(V, B, thresholds)
    return CharacterizationCurve(
        n, epsilon, c_low, c_high, h_hat, h_se, cov, d2, d2_se, float(need.max()), mono, pois, means
    )


def _threshold_surrogates(V: np.ndarray, B: np.ndarray, thresholds) -> tuple[float, float]:
    """Worst excess (in standard errors) for monotonicity of ``Pr[f(S(k)) > tau]`` and for ``g'(k) <= 2 g(k/n)``."""
    n1, m = V.shape
    if thresholds is None:
        thresholds = np.arange(0, int(np.ceil(V.max())) + 1)
    mono = pois = -math.inf
    for tau in thresholds:
        gp = (V > tau).mean(axis=1)
        se = np.sqrt(gp * (1 - gp) / m)
        pair_se = np.sqrt(se[1:] ** 2 + se[:-1] ** 2)
        drop = gp[:-1] - gp[1:]
        mono = max(mono, float(np.max(drop - SLACK_SE * pair_se)))
        g = B @ gp
        g_se = np.sqrt((B * B) @ (se * se))
        excess = gp - 2 * g - SLACK_SE * np.sqrt(se * se + 4 * g_se * g_se)
        pois = max(pois, float(excess[1:].max()))
    return mono, pois
