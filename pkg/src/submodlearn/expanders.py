"""Random left-regular bipartite graphs and exhaustive expansion checks."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations, islice

import numpy as np

from .core import BudgetExceeded, ConstructionError, ElementSet, mask_of

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class BipartiteNeighborhoods:
    """Left vertices ``0..k-1``, right vertices ``0..n-1``; ``neighbors[u]`` is sorted, distinct, length ``d``."""

    k: int
    n: int
    d: int
    neighbors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.neighbors) != self.k:
            raise ConstructionError(f"expected {self.k} neighbor lists, got {len(self.neighbors)}")
        for u, nb in enumerate(self.neighbors):
            if len(nb) != self.d or len(set(nb)) != self.d:
                raise ConstructionError(f"left vertex {u} does not have {self.d} distinct neighbors")
            if any(not 0 <= v < self.n for v in nb):
                raise ConstructionError(f"left vertex {u} has a neighbor outside [0, {self.n})")

    def masks(self) -> list[int]:
        return [mask_of(nb) for nb in self.neighbors]

    def neighborhood(self, J) -> ElementSet:
        out = 0
        for u in J:
            out |= mask_of(self.neighbors[u])
        return ElementSet(out, self.n)

    def array(self) -> np.ndarray:
        return np.array(self.neighbors, dtype=np.int64).reshape(self.k, self.d)

    def to_json(self) -> str:
        return json.dumps({"k": self.k, "n": self.n, "d": self.d, "neighbors": [list(nb) for nb in self.neighbors]})

    @classmethod
    def from_json(cls, text: str) -> "BipartiteNeighborhoods":
        data = json.loads(text)
        return cls(data["k"], data["n"], data["d"], tuple(tuple(sorted(nb)) for nb in data["neighbors"]))


@dataclass(frozen=True)
class ExpansionParams:
    d: int
    L: int
    epsilon: float

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.L < 1:
            raise ValueError("L must be at least 1")


def vertex_rng(seed: int, vertex: int) -> np.random.Generator:
    """Independent counter-based stream for one left vertex."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed & (2**64 - 1), vertex])))


def _draw_distinct(rng: np.random.Generator, n: int, d: int) -> tuple[int, ...]:
    draws = [int(v) for v in rng.integers(0, n, size=d)]
    seen: set[int] = set()
    out = []
    for v in draws:
        # parallel edge: re-draw until the endpoint is new
        while v in seen:
            v = int(rng.integers(0, n))
        seen.add(v)
        out.append(v)
    return tuple(sorted(out))


def sample_expander(k: int, n: int, d: int, seed: int) -> BipartiteNeighborhoods:
    """Each left vertex draws ``d`` endpoints uniformly i.i.d.; parallel edges are re-drawn."""
    if d > n:
        raise ConstructionError(f"degree d={d} exceeds right side n={n}")
    nbs = tuple(_draw_distinct(vertex_rng(seed, u), n, d) for u in range(k))
    return BipartiteNeighborhoods(k, n, d, nbs)


def sample_partitioned_expander(k: int, n: int, d: int, seed: int, fixed_last=None) -> BipartiteNeighborhoods:
    """Right side split into ``d`` consecutive blocks; every left vertex takes one neighbor per block.

    If ``fixed_last`` is given, the last left vertex uses exactly that neighborhood.
    """
    if d <= 0 or n % d:
        raise ConstructionError(f"n={n} is not divisible by d={d}")
    width = n // d
    nbs = []
    for u in range(k):
        if u == k - 1 and fixed_last is not None:
            last = sorted(fixed_last)
            if len(last) != d:
                raise ConstructionError(f"fixed neighborhood must have size d={d}")
            nbs.append(tuple(last))
            continue
        rng = vertex_rng(seed, u)
        picks = rng.integers(0, width, size=d) + width * np.arange(d)
        nbs.append(tuple(int(v) for v in picks))
    return BipartiteNeighborhoods(k, n, d, tuple(nbs))


def _union_sizes(nb: np.ndarray, combos: np.ndarray) -> np.ndarray:
    rows = nb[combos].reshape(len(combos), -1)
    rows.sort(axis=1)
    return 1 + (np.diff(rows, axis=1) != 0).sum(axis=1)


@dataclass
class ExpansionResult:
    ok: bool
    worst_J: tuple[int, ...]
    worst_size: int
    worst_ratio: float
    checked: int

    def __bool__(self) -> bool:
        return self.ok


def verify_expansion(
    graph: BipartiteNeighborhoods, params: ExpansionParams, budget: int = DEFAULT_BUDGET, chunk: int = 200_000
) -> ExpansionResult:
    """Check ``|Gamma(J)| >= (1 - eps) d |J|`` for every left set with ``|J| <= L``.

    Returns the ``J`` minimizing ``|Gamma(J)| / (d |J|)`` (first in lexicographic
    order among ties).
    """
    L = min(params.L, graph.k)
    total = sum(math.comb(graph.k, j) for j in range(1, L + 1))
    if total > budget:
        raise BudgetExceeded(f"expansion check needs {total} subsets, budget is {budget}")
    if graph.k == 0:
        return ExpansionResult(True, (), 0, math.inf, 0)
    nb = graph.array()
    d = graph.d
    best = (math.inf, (), 0)
    ok = True
    for j in range(1, L + 1):
        need = (1 - params.epsilon) * d * j
        it = combinations(range(graph.k), j)
        while True:
            block = list(islice(it, chunk))
            if not block:
                break
            combos = np.array(block, dtype=np.int64)
            sizes = _union_sizes(nb, combos)
            if np.any(sizes < need - 1e-9):
                ok = False
            ratio = sizes / (d * j)
            i = int(np.argmin(ratio))
            if ratio[i] < best[0]:
                best = (float(ratio[i]), tuple(int(v) for v in combos[i]), int(sizes[i]))
    return ExpansionResult(ok, best[1], best[2], best[0], total)


def wilson_interval(successes: int, trials: int, z: float = 1.959963984540054) -> tuple[float, float]:
    if trials <= 0:
        raise ValueError("trials must be positive")
    p = successes / trials
    den = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / den
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / den
    return max(0.0, centre - half), min(1.0, centre + half)


@dataclass
class SuccessRate:
    successes: int
    trials: int
    frequency: float
    lower: float
    upper: float


def trial_seeds(seed: int, trials: int) -> list[int]:
    return [int(s) for s in np.random.SeedSequence(seed).generate_state(trials, dtype=np.uint64)]


def success_rate(
    k: int,
    n: int,
    d: int,
    L: int,
    epsilon: float,
    trials: int,
    seed: int,
    partitioned: bool = False,
    fixed_last=None,
) -> SuccessRate:
    """Fraction of seeded samples passing :func:`verify_expansion`, with a Wilson 95% interval."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    params = ExpansionParams(d, L, epsilon)
    wins = 0
    for s in trial_seeds(seed, trials):
        if partitioned:
            g = sample_partitioned_expander(k, n, d, s, fixed_last)
        else:
            g = sample_expander(k, n, d, s)
        wins += verify_expansion(g, params).ok
    lo, hi = wilson_interval(wins, trials)
    return SuccessRate(wins, trials, wins / trials, lo, hi)


def sampling_hypotheses_hold(k: int, n: int, d: int, L: int, epsilon: float) -> bool:
    """Hypotheses of the i.i.d. construction: k >= 4, d >= ln(k)/eps, n >= 16 L d / eps."""
    return k >= 4 and d >= math.log(k) / epsilon and n >= 16 * L * d / epsilon


def partitioned_hypotheses_hold(k: int, n: int, d: int, L: int, epsilon: float) -> bool:
    return k >= 4 and L >= d and d >= math.log(k) / epsilon and n >= 22 * L * d / epsilon and n % d == 0


def default_expansion_params(n: int, k: int, base: float = 2.0) -> dict:
    """Asymptotic parameter block: d = n^(1/3), L = d / (2 log k), eps = 2 log k / d."""
    d = n ** (1 / 3)
    lg = math.log(k, base)
    return {"d": d, "L": d / (2 * lg), "epsilon": 2 * lg / d}
