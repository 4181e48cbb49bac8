"""Instances on which minimizing a matroid rank under a covering constraint is hard to approximate.

Each demo brute-forces the optimum and compares it with the predicted value:
``b`` when some planted low-rank set is feasible and ``d`` otherwise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, product

from ..core import BudgetExceeded, ConstructionError, popcount
from ..expanders import sample_partitioned_expander
from ..matroids import ConstraintFamily, FamilyMB, MatroidSpec, brute_rank, build_family_MB, build_pairwise
from .distributions import as_rng

BRUTE_BUDGET = 1 << 24
MAX_ARGMINS = 10


@dataclass
class MinResult:
    minimum: int
    predicted: int
    argmins: list[int]
    exhaustive: bool
    checked: int

    @property
    def matches(self) -> bool:
        return self.minimum == self.predicted


def _minimize(rank, candidates) -> tuple[int, list[int], int]:
    best = math.inf
    arg: list[int] = []
    seen = 0
    for S in candidates:
        seen += 1
        r = rank(S)
        if r < best:
            best, arg = r, [S]
        elif r == best and len(arg) < MAX_ARGMINS:
            arg.append(S)
    return int(best), arg, seen


def constrained_min_demo(instance: FamilyMB, budget: int = BRUTE_BUDGET, samples: int = 20000, seed: int = 0) -> MinResult:
    """``min{rank(S) : |S| >= d}``.

    Rank is monotone, so the minimum is attained at ``|S| = d`` and only those
    sets are enumerated.  Over budget, random ``d``-sets plus the planted sets
    are scored instead and the result is flagged non-exhaustive.
    """
    n, d = instance.n, instance.d
    predicted = instance.b if instance.B else d
    total = math.comb(n, d)
    if total <= budget:
        cands = (sum(1 << i for i in c) for c in combinations(range(n), d))
        best, arg, seen = _minimize(instance.rank, cands)
        return MinResult(best, predicted, arg, True, seen)
    rng = as_rng(seed)
    planted = [instance.A(i) for i in range(instance.k)]
    rand = [int(sum(1 << int(v) for v in rng.choice(n, size=d, replace=False))) for _ in range(samples)]
    best, arg, seen = _minimize(instance.rank, planted + rand)
    return MinResult(best, predicted, arg, False, seen)


@dataclass
class StCutInstance:
    d: int
    n: int
    edges: list[tuple[int, int]]  # edge e joins edges[e]; vertex 0 is s, vertex 1 is t
    paths: list[list[int]]  # edge ids along each path
    mb: FamilyMB
    result: MinResult


def path_graph(d: int, n: int) -> tuple[list[tuple[int, int]], list[list[int]]]:
    """``d`` internally vertex-disjoint s-t paths with ``n/d`` edges each."""
    w = n // d
    edges, paths = [], []
    nxt = 2
    for _ in range(d):
        prev, ids = 0, []
        for step in range(w):
            cur = 1 if step == w - 1 else nxt
            if cur != 1:
                nxt += 1
            ids.append(len(edges))
            edges.append((prev, cur))
            prev = cur
        paths.append(ids)
    return edges, paths


def is_st_cut(edges: list[tuple[int, int]], removed: int) -> bool:
    adj: dict[int, list[int]] = {}
    for e, (u, v) in enumerate(edges):
        if removed >> e & 1:
            continue
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    stack, seen = [0], {0}
    while stack:
        u = stack.pop()
        for v in adj.get(u, ()):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return 1 not in seen


def st_cut_instance(
    d: int,
    n: int,
    seed: int,
    B=None,
    k: int = 4,
    b: int | None = None,
    tau: int = 2,
    budget: int = BRUTE_BUDGET,
) -> StCutInstance:
    """Minimal s-t cuts of the path graph are the transversals; the planted sets are random transversals.

    ``B`` defaults to one random planted index (a single marked set is always
    large enough); pass ``B=()`` for the unmarked world.
    """
    if d <= 0 or n % d:
        raise ConstructionError(f"n={n} is not divisible by d={d}")
    rng = as_rng(seed)
    b = max(1, d // 2) if b is None else b
    if B is None:
        B = [int(rng.integers(k))]
    edges, paths = path_graph(d, n)
    graph = sample_partitioned_expander(k, n, d, int(rng.integers(2**63)))
    mb = build_family_MB(graph, b, d, tau, B)
    total = (n // d) ** d
    if total > budget:
        raise BudgetExceeded(f"{total} transversals exceeds budget {budget}")
    cands = (sum(1 << e for e in choice) for choice in product(*paths))
    best, arg, seen = _minimize(mb.rank, cands)
    predicted = b if mb.B else d
    return StCutInstance(d, n, edges, paths, mb, MinResult(best, predicted, arg, True, seen))


@dataclass
class VertexCoverInstance:
    n: int
    epsilon: float
    edges: list[tuple[int, int]]
    family: ConstraintFamily
    spec: MatroidSpec
    b: int
    d: int
    result: MinResult
    oracle_agrees: bool | None = None
    retries: int = 0
    ratio: float = field(init=False)

    def __post_init__(self):
        self.ratio = self.d / self.result.minimum if self.result.minimum else math.inf


def vertex_cover_instance(
    n: int,
    epsilon: float,
    k: int = 3,
    seed: int = 0,
    max_retries: int = 1000,
    budget: int = BRUTE_BUDGET,
    oracle_limit: int = 16,
) -> VertexCoverInstance:
    """Perfect matching on ``n`` vertices; planted sets are random minimal vertex covers.

    Capacities ``b = ceil((3 + eps) n / 8)``, cap ``d = n / 2``; planted covers
    are resampled until pairwise overlaps are at most ``(1 + eps) n / 4``.
    """
    if n <= 0 or n % 2:
        raise ConstructionError("n must be a positive even number")
    half = n // 2
    edges = [(2 * i, 2 * i + 1) for i in range(half)]
    b = math.ceil((3 + epsilon) * n / 8 - 1e-12)
    d = half
    overlap_cap = math.floor((1 + epsilon) * n / 4 + 1e-12)
    rng = as_rng(seed)
    for attempt in range(max_retries):
        picks = rng.integers(0, 2, size=(k, half))
        A = [sum(1 << (2 * i + int(c)) for i, c in enumerate(row)) for row in picks]
        if all(popcount(A[i] & A[j]) <= overlap_cap for i in range(k) for j in range(i + 1, k)):
            break
    else:
        raise ConstructionError(f"no planted covers with overlap <= {overlap_cap} after {max_retries} tries")
    family = ConstraintFamily(n, tuple(A), (b,) * k)
    spec = build_pairwise(family, d)
    total = 2**half
    if total > budget:
        raise BudgetExceeded(f"{total} minimal covers exceeds budget {budget}")
    covers = [sum(1 << (2 * i + c) for i, c in enumerate(bits)) for bits in product((0, 1), repeat=half)]
    best, arg, seen = _minimize(spec.rank, covers)
    agrees = None
    if n <= oracle_limit:
        agrees = all(spec.rank(C) == brute_rank(spec, C) for C in covers)
    predicted = b if k else d
    res = MinResult(best, predicted, arg, True, seen)
    return VertexCoverInstance(n, epsilon, edges, family, spec, b, d, res, agrees, attempt)


def ratio_threshold(epsilon: float) -> float:
    return 4 / 3 - epsilon


__all__ = [
    "MinResult",
    "constrained_min_demo",
    "StCutInstance",
    "st_cut_instance",
    "path_graph",
    "is_st_cut",
    "VertexCoverInstance",
    "vertex_cover_instance",
    "ratio_threshold",
]
