"""Monotone 1-Lipschitz submodular test functions used across the experiment suites."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import ConstructionError, SetFunction, make_cardinality_profile, make_coverage_function
from ..expanders import sample_expander
from ..matroids import (
    ConstraintFamily,
    MatroidSpec,
    build_family_MB,
    build_pairwise,
    build_truncated,
    build_uncrossed,
    partition_matroid,
    uniform_matroid,
)
from .distributions import as_rng


@dataclass
class CorpusEntry:
    name: str
    f: SetFunction
    profile: np.ndarray | None = None  # h with f(S) = h[|S|], when f is a cardinality profile
    spec: MatroidSpec | None = None

    @property
    def is_matroid_rank(self) -> bool:
        return self.f.kind == "matroid-rank" or self.spec is not None


def profile_entry(name: str, h) -> CorpusEntry:
    h = np.asarray(h, dtype=float)
    return CorpusEntry(name, make_cardinality_profile(h), profile=h)


def partition_rank_function(n: int, blocks: list[list[int]], caps: list[int]) -> tuple[SetFunction, MatroidSpec]:
    """Partition-matroid rank with a vectorized batch path."""
    spec = partition_matroid(n, blocks, caps)
    idx = [np.asarray(b, dtype=int) for b in blocks]

    def batch(X):
        X = np.asarray(X, dtype=bool)
        return sum(np.minimum(X[:, b].sum(axis=1), c) for b, c in zip(idx, caps)).astype(float)

    return SetFunction(n, spec.rank, "matroid-rank", batch=batch, exact=spec.rank, name="partition-rank"), spec


def random_blocks(n: int, parts: int, rng) -> list[list[int]]:
    perm = rng.permutation(n)
    return [sorted(int(v) for v in chunk) for chunk in np.array_split(perm, parts)]


def paving_family(m: int, sets: int, n: int, rng, tries: int = 1000) -> ConstraintFamily:
    """Random ``m``-sets with pairwise intersections at most ``m - 2`` and capacity ``m - 1``."""
    chosen: list[int] = []
    for _ in range(tries):
        if len(chosen) == sets:
            break
        cand = int(sum(1 << int(v) for v in rng.choice(n, size=m, replace=False)))
        if all((cand & c).bit_count() <= m - 2 for c in chosen):
            chosen.append(cand)
    return ConstraintFamily(n, tuple(chosen), (m - 1,) * len(chosen))


def overlapping_family(n: int, k: int, size: int, cap: int, rng) -> ConstraintFamily:
    A = [int(sum(1 << int(v) for v in rng.choice(n, size=size, replace=False))) for _ in range(k)]
    return ConstraintFamily(n, tuple(A), (cap,) * k)


def large_corpus(n: int = 1000, seed: int = 0, mb_params=(64, 256, 8, 5, 2)) -> list[CorpusEntry]:
    """Eleven functions; profiles use ground size ``n``, the matroid constructions use smaller grounds."""
    rng = as_rng(seed)
    j = np.arange(n + 1)
    out = [
        profile_entry("free-rank", j),
        profile_entry("uniform-rank-quarter", np.minimum(j, n // 4)),
        profile_entry("uniform-rank-55pct", np.minimum(j, int(0.55 * n))),
        profile_entry("sqrt-profile", np.sqrt(j)),
        profile_entry("quadratic-profile", j - j * j / (2 * n)),
    ]
    blocks = random_blocks(n, 10, rng)
    caps = [max(1, int(c)) for c in rng.integers(len(blocks[0]) // 4, len(blocks[0]), size=10)]
    f, spec = partition_rank_function(n, blocks, caps)
    out.append(CorpusEntry("partition-rank", f, spec=spec))
    colors = rng.integers(0, n // 4, size=n)
    out.append(CorpusEntry("color-coverage", make_coverage_function([[int(c)] for c in colors], universe_size=n // 4)))

    k, nn, d, b, tau = mb_params
    B = [i for i in range(k) if rng.random() < 0.5]
    for attempt in range(100):
        try:
            mb = build_family_MB(sample_expander(k, nn, d, seed + attempt), b, d, tau, B)
            break
        except ConstructionError:
            continue
    else:
        raise ConstructionError(f"no large family M_B for {mb_params} after 100 graphs")
    out.append(CorpusEntry("family-MB-rank", mb.rank_function(), spec=mb.spec))
    fam = overlapping_family(40, 8, 6, 4, rng)
    spec = build_uncrossed(fam)
    out.append(CorpusEntry("uncrossed-rank", spec.rank_function(), spec=spec))
    pav = paving_family(5, 8, 30, rng)
    spec = build_truncated(pav, 5, 2)
    out.append(CorpusEntry("paving-rank", spec.rank_function(), spec=spec))
    fam = overlapping_family(40, 6, 10, 7, rng)
    dmax = min(
        fam.b[i] + fam.b[j_] - (fam.A[i] & fam.A[j_]).bit_count() for i in range(fam.k) for j_ in range(i + 1, fam.k)
    )
    spec = build_pairwise(fam, dmax)
    out.append(CorpusEntry("pairwise-rank", spec.rank_function(), spec=spec))
    return out


def small_matroid_corpus(seed: int = 0, n: int = 8) -> list[CorpusEntry]:
    """Matroid rank functions on at most ``n`` elements, for exhaustive checks."""
    rng = as_rng(seed)
    out = [
        CorpusEntry("free-rank", make_cardinality_profile(np.arange(n + 1)), profile=np.arange(n + 1.0)),
    ]
    spec = uniform_matroid(n, n // 2)
    out.append(CorpusEntry("uniform-rank", spec.rank_function(), spec=spec))
    spec = partition_matroid(n, random_blocks(n, 3, rng), [1, 2, 2])
    out.append(CorpusEntry("partition-rank", spec.rank_function(), spec=spec))
    spec = build_uncrossed(ConstraintFamily.of(5, [{0, 1, 2}, {2, 3, 4}], (2, 2)))
    out.append(CorpusEntry("uncrossed-example", spec.rank_function(), spec=spec))
    spec = build_uncrossed(overlapping_family(n, 3, 4, 2, rng))
    out.append(CorpusEntry("uncrossed-random", spec.rank_function(), spec=spec))
    spec = build_truncated(paving_family(3, 4, n, rng), 3, 2)
    out.append(CorpusEntry("paving-rank", spec.rank_function(), spec=spec))
    fam = ConstraintFamily.of(n, [range(0, 4), range(2, 6), range(4, 8)], (3, 3, 3))
    spec = build_pairwise(fam, 4)
    out.append(CorpusEntry("pairwise-rank", spec.rank_function(), spec=spec))
    for attempt in range(100):
        try:
            mb = build_family_MB(sample_expander(4, n, 3, seed + attempt), 2, 3, 2, [0, 1])
            break
        except ValueError:
            continue
    out.append(CorpusEntry("family-MB-rank", mb.rank_function(), spec=mb.spec))
    return out


def entry_summary(e: CorpusEntry) -> dict:
    return {"name": e.name, "n": e.f.n, "kind": e.f.kind}


__all__ = [
    "CorpusEntry",
    "large_corpus",
    "small_matroid_corpus",
    "partition_rank_function",
    "profile_entry",
    "random_blocks",
    "paving_family",
    "overlapping_family",
    "entry_summary",
    "named_target",
    "TARGETS",
]


TARGETS = ("free", "uniform", "partition", "coverage")


def named_target(name: str, n: int, seed: int = 0) -> SetFunction:
    """Learning targets: free-matroid rank, uniform-matroid rank, a random partition-matroid rank, or weighted coverage."""
    rng = as_rng(seed)
    if name == "free":
        return make_cardinality_profile(np.arange(n + 1))
    if name == "uniform":
        return make_cardinality_profile(np.minimum(np.arange(n + 1), max(1, n // 2)))
    if name == "partition":
        blocks = random_blocks(n, max(1, n // 10), rng)
        caps = [int(rng.integers(1, len(bl) + 1)) for bl in blocks]
        return partition_rank_function(n, blocks, caps)[0]
    if name == "coverage":
        m = 2 * n
        subsets = [rng.choice(m, size=int(rng.integers(1, 5)), replace=False).tolist() for _ in range(n)]
        return make_coverage_function(subsets, rng.uniform(0.5, 2.0, size=m), universe_size=m)
    raise ValueError(f"unknown target {name!r}; choose from {', '.join(TARGETS)}")
