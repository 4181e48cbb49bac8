"""Matroids defined by capacity constraints on unions of planted sets.

A :class:`ConstraintFamily` holds sets ``A_1..A_k`` with capacities ``b_i``.
For an index set ``J`` let ``A(J)`` be the union and

    g(J) = sum_{j in J} b_j - (sum_{j in J} |A_j| - |A(J)|).

The builders turn a family into a :class:`MatroidSpec`, a list of integer
constraints ``|I & C| <= rhs``.  All independence tests are exact integer
arithmetic on bitmasks.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .core import (
    EXHAUSTIVE_LIMIT,
    BudgetExceeded,
    ConstructionError,
    SetFunction,
    all_subset_matrix,
    as_mask,
    full_mask,
    mask_of,
    masks_to_matrix,
    matrix_to_masks,
    members,
    popcount,
)
from .expanders import BipartiteNeighborhoods

LARGENESS_BUDGET = 10**7
UNCROSSING_BUDGET = 1 << 16


@dataclass(frozen=True)
class ConstraintFamily:
    n: int
    A: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self):
        if len(self.A) != len(self.b):
            raise ConstructionError(f"{len(self.A)} sets but {len(self.b)} capacities")
        for i, (a, cap) in enumerate(zip(self.A, self.b)):
            if a < 0 or a >> self.n:
                raise ConstructionError(f"A_{i} has members outside [0, {self.n})")
            if cap < 0:
                raise ConstructionError(f"capacity b_{i} = {cap} is negative")

    @classmethod
    def of(cls, n: int, sets: Iterable, b) -> "ConstraintFamily":
        A = tuple(as_mask(s) for s in sets)
        if isinstance(b, int):
            b = (b,) * len(A)
        return cls(n, A, tuple(int(x) for x in b))

    @property
    def k(self) -> int:
        return len(self.A)

    def union(self, J: Iterable[int]) -> int:
        u = 0
        for j in J:
            u |= self.A[j]
        return u

    def restrict(self, indices: Sequence[int]) -> "ConstraintFamily":
        return ConstraintFamily(self.n, tuple(self.A[i] for i in indices), tuple(self.b[i] for i in indices))


def g_value(family: ConstraintFamily, J: Iterable[int]) -> int:
    J = sorted(set(J))
    for j in J:
        if not 0 <= j < family.k:
            raise IndexError(f"index {j} outside [0, {family.k})")
    return (
        sum(family.b[j] for j in J)
        - sum(popcount(family.A[j]) for j in J)
        + popcount(family.union(J))
    )


def _count_subsets(k: int, max_size: int) -> int:
    return sum(math.comb(k, j) for j in range(0, min(max_size, k) + 1))


def iter_unions(family: ConstraintFamily, max_size: int, indices: Sequence[int] | None = None) -> Iterator:
    """Yield ``(J, A(J), g(J))`` for every ``1 <= |J| <= max_size``.

    Depth-first: each union is one OR on top of its parent's cached union.
    """
    idx = list(range(family.k)) if indices is None else list(indices)
    A, b = family.A, family.b
    sizes = [popcount(a) for a in A]
    m = len(idx)
    stack = [((), 0, 0, -1)]  # J, union, sum(b) - sum(|A|), last position
    while stack:
        J, u, base, last = stack.pop()
        if len(J) >= max_size:
            continue
        children = []
        for pos in range(last + 1, m):
            i = idx[pos]
            nu = u | A[i]
            children.append((J + (i,), nu, base + b[i] - sizes[i], pos))
        for nJ, nu, nb, _ in children:
            yield nJ, nu, nb + popcount(nu)
        stack.extend(reversed(children))


def is_dtau_large(
    family: ConstraintFamily,
    d: int,
    tau: int,
    budget: int = LARGENESS_BUDGET,
    indices: Sequence[int] | None = None,
) -> tuple[bool, tuple[int, ...] | None]:
    """(d, tau)-largeness: ``g(J) >= 0`` for ``|J| < tau`` and ``g(J) >= d`` for ``tau <= |J| <= 2 tau - 2``."""
    if tau < 1 or d < 0:
        raise ValueError("need tau >= 1 and d >= 0")
    m = family.k if indices is None else len(indices)
    top = 2 * tau - 2
    count = _count_subsets(m, max(top, tau - 1))
    if count > budget:
        raise BudgetExceeded(f"largeness check needs {count} index sets, budget is {budget}")
    for J, _, g in iter_unions(family, max(top, tau - 1), indices):
        if g < (d if len(J) >= tau else 0):
            return False, J
    return True, None


# ---------------------------------------------------------------------------
# specs


def _dedupe(pairs: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    best: dict[int, int] = {}
    for mask, rhs in pairs:
        if mask == 0:
            continue
        if mask not in best or rhs < best[mask]:
            best[mask] = rhs
    return tuple(sorted(best.items()))


@dataclass(frozen=True)
class MatroidSpec:
    """Independence family ``{I : |I & C| <= rhs for every (C, rhs) in constraints}``.

    ``kind`` is one of ``full-uncrossed``, ``truncated``, ``partition``,
    ``pairwise``, ``tabulated-independence`` or ``custom`` (raw constraint
    lists that were not validated as a matroid).
    """

    kind: str
    n: int
    constraints: tuple[tuple[int, int], ...]
    family: ConstraintFamily | None = None
    d: int | None = None
    tau: int | None = None
    indices: tuple[int, ...] | None = None
    independent_sets: frozenset | None = None
    _by_elem: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        by_elem = [[] for _ in range(self.n)]
        for c, (mask, _) in enumerate(self.constraints):
            for x in members(mask):
                by_elem[x].append(c)
        object.__setattr__(self, "_by_elem", tuple(tuple(cs) for cs in by_elem))

    def is_independent(self, I) -> bool:
        mask = as_mask(I)
        if mask >> self.n:
            raise ValueError("set has members outside the ground set")
        if self.independent_sets is not None:
            return mask in self.independent_sets
        return all(popcount(mask & c) <= rhs for c, rhs in self.constraints)

    def rank(self, S) -> int:
        """Greedy rank: scan members in ascending order, keep those that preserve independence."""
        mask = as_mask(S)
        if self.independent_sets is not None:
            cur = 0
            for x in members(mask):
                if cur | (1 << x) in self.independent_sets:
                    cur |= 1 << x
            return popcount(cur)
        rhs = [r for _, r in self.constraints]
        counts = [0] * len(rhs)
        by_elem = self._by_elem
        r = 0
        for x in members(mask):
            cs = by_elem[x]
            if all(counts[c] < rhs[c] for c in cs):
                for c in cs:
                    counts[c] += 1
                r += 1
        return r

    def independence_table(self, limit: int = EXHAUSTIVE_LIMIT) -> np.ndarray:
        if self.n > limit:
            raise BudgetExceeded(f"n={self.n} exceeds exhaustive limit {limit}")
        if self.independent_sets is not None:
            out = np.zeros(1 << self.n, dtype=bool)
            out[list(self.independent_sets)] = True
            return out
        X = all_subset_matrix(self.n).astype(np.int32)
        if not self.constraints:
            return np.ones(1 << self.n, dtype=bool)
        C = masks_to_matrix([c for c, _ in self.constraints], self.n).astype(np.int32)
        rhs = np.array([r for _, r in self.constraints])
        return np.all(X @ C.T <= rhs, axis=1)

    def rank_function(self) -> SetFunction:
        def batch(X):
            return np.array([self.rank(m) for m in matrix_to_masks(X)], dtype=float)

        return SetFunction(self.n, self.rank, "matroid-rank", batch=batch, exact=self.rank, name=f"rank[{self.kind}]")


def is_independent(spec: MatroidSpec, I) -> bool:
    return spec.is_independent(I)


def rank(spec: MatroidSpec, S) -> int:
    return spec.rank(S)


def brute_rank(spec: MatroidSpec, S, limit: int = EXHAUSTIVE_LIMIT) -> int:
    """Largest independent subset of ``S`` by enumerating all ``2^|S|`` subsets."""
    mask = as_mask(S)
    elems = members(mask)
    if len(elems) > limit:
        raise BudgetExceeded(f"|S|={len(elems)} exceeds exhaustive limit {limit}")
    best = 0
    for sub in range(1 << len(elems)):
        size = popcount(sub)
        if size <= best:
            continue
        m = 0
        for pos, x in enumerate(elems):
            if sub >> pos & 1:
                m |= 1 << x
        if spec.is_independent(m):
            best = size
    return best


def brute_rank_table(indep: np.ndarray, n: int) -> np.ndarray:
    """``r[S] = max |I|`` over independent ``I`` inside ``S``, for all ``S`` (subset DP)."""
    idx = np.arange(1 << n, dtype=np.int64)
    sizes = np.array([popcount(int(i)) for i in idx]) if n <= 4 else np.bitwise_count(idx).astype(np.int64)
    r = np.where(indep, sizes, 0)
    for b in range(n):
        has = (idx >> b) & 1 == 1
        r[has] = np.maximum(r[has], r[idx[has] ^ (1 << b)])
    return r


def from_constraints(n: int, constraints: Iterable[tuple], kind: str = "custom", **extra) -> MatroidSpec:
    pairs = [(as_mask(c), int(r)) for c, r in constraints]
    for c, r in pairs:
        if c >> n:
            raise ConstructionError("constraint set outside ground set")
    return MatroidSpec(kind, n, _dedupe(pairs), **extra)


def from_independent_sets(n: int, sets: Iterable) -> MatroidSpec:
    return MatroidSpec("tabulated-independence", n, (), independent_sets=frozenset(as_mask(s) for s in sets))


def build_uncrossed(family: ConstraintFamily, budget: int = UNCROSSING_BUDGET) -> MatroidSpec:
    """Constraints ``|I & A(J)| <= g(J)`` for every ``J``."""
    if (1 << family.k) > budget:
        raise BudgetExceeded(f"2^{family.k} index sets exceeds budget {budget}")
    pairs = []
    for J, u, g in iter_unions(family, family.k):
        if g < 0:
            raise ConstructionError(f"family is empty: g({list(J)}) = {g} < 0")
        pairs.append((u, g))
    return MatroidSpec("full-uncrossed", family.n, _dedupe(pairs), family=family)


def build_truncated(family: ConstraintFamily, d: int, tau: int, budget: int = LARGENESS_BUDGET) -> MatroidSpec:
    """Constraints ``|I| <= d`` and ``|I & A(J)| <= g(J)`` for ``|J| < tau``; requires (d, tau)-largeness."""
    ok, J = is_dtau_large(family, d, tau, budget)
    if not ok:
        raise ConstructionError(f"g is not ({d},{tau})-large: violated at J={list(J)}, g={g_value(family, J)}")
    pairs = [(full_mask(family.n), d)]
    pairs += [(u, g) for _, u, g in iter_unions(family, tau - 1)]
    return MatroidSpec("truncated", family.n, _dedupe(pairs), family=family, d=d, tau=tau)


def build_pairwise(family: ConstraintFamily, d: int) -> MatroidSpec:
    """Constraints ``|I| <= d`` and ``|I & A_j| <= b_j``; requires ``d <= b_i + b_j - |A_i & A_j|`` for ``i != j``."""
    for i in range(family.k):
        for j in range(i + 1, family.k):
            bound = family.b[i] + family.b[j] - popcount(family.A[i] & family.A[j])
            if d > bound:
                raise ConstructionError(f"pair ({i},{j}) allows at most d={bound}, got d={d}")
    pairs = [(full_mask(family.n), d)] + list(zip(family.A, family.b))
    return MatroidSpec("pairwise", family.n, _dedupe(pairs), family=family, d=d, tau=2)


def partition_matroid(n: int, blocks: Sequence, caps) -> MatroidSpec:
    masks = [as_mask(b) for b in blocks]
    seen = 0
    for i, m in enumerate(masks):
        if m & seen:
            raise ConstructionError(f"block {i} overlaps an earlier block")
        seen |= m
    fam = ConstraintFamily.of(n, masks, caps)
    return MatroidSpec("partition", n, _dedupe(zip(fam.A, fam.b)), family=fam)


def uniform_matroid(n: int, r: int) -> MatroidSpec:
    return from_constraints(n, [(full_mask(n), r)], kind="partition", family=ConstraintFamily(n, (full_mask(n),), (r,)))


# ---------------------------------------------------------------------------
# the family M_B


@dataclass(frozen=True)
class FamilyMB:
    spec: MatroidSpec
    B: tuple[int, ...]
    b: int
    graph: BipartiteNeighborhoods

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def k(self) -> int:
        return self.graph.k

    @property
    def d(self) -> int:
        return self.spec.d

    @property
    def tau(self) -> int:
        return self.spec.tau

    def A(self, i: int) -> int:
        return self.spec.family.A[i]

    def rank(self, S) -> int:
        return self.spec.rank(S)

    def rank_function(self) -> SetFunction:
        return self.spec.rank_function()

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "k": self.k,
                "d": self.d,
                "b": self.b,
                "tau": self.tau,
                "A": [sorted(members(a)) for a in self.spec.family.A],
                "B": list(self.B),
                "kind": "family-MB",
            }
        )


@lru_cache(maxsize=256)
def _full_family_large(graph: BipartiteNeighborhoods, b: int, d: int, tau: int, budget: int) -> bool:
    fam = ConstraintFamily.of(graph.n, graph.masks(), b)
    try:
        return is_dtau_large(fam, d, tau, budget)[0]
    except BudgetExceeded:
        return False


def build_family_MB(
    graph: BipartiteNeighborhoods,
    b: int,
    d: int,
    tau: int,
    B: Iterable[int],
    budget: int = LARGENESS_BUDGET,
) -> FamilyMB:
    """Truncated matroid whose constraints come only from the planted sets indexed by ``B``.

    Rank of ``A_i`` is ``b`` for ``i`` in ``B`` and ``d`` otherwise whenever the
    graph expands well enough; largeness over ``J`` inside ``B`` is enforced here.
    """
    if graph.d != d:
        raise ConstructionError(f"planted sets have size {graph.d}, expected d={d}")
    B = tuple(sorted(set(int(i) for i in B)))
    for i in B:
        if not 0 <= i < graph.k:
            raise ConstructionError(f"index {i} outside [0, {graph.k})")
    family = ConstraintFamily.of(graph.n, graph.masks(), b)
    # largeness of the whole family implies it for every sub-family
    if not _full_family_large(graph, b, d, tau, budget):
        ok, J = is_dtau_large(family, d, tau, budget, indices=B)
        if not ok:
            raise ConstructionError(
                f"g_B is not ({d},{tau})-large: violated at J={list(J)}, g={g_value(family, J)}"
            )
    pairs = [(full_mask(graph.n), d)]
    pairs += [(u, g) for _, u, g in iter_unions(family, tau - 1, indices=B)]
    spec = MatroidSpec("truncated", graph.n, _dedupe(pairs), family=family, d=d, tau=tau, indices=B)
    return FamilyMB(spec, B, b, graph)


def family_mb_from_json(text: str, budget: int = LARGENESS_BUDGET) -> FamilyMB:
    data = json.loads(text)
    if data.get("kind") != "family-MB":
        raise ValueError(f"not a family-MB instance: kind={data.get('kind')!r}")
    nbs = tuple(tuple(sorted(a)) for a in data["A"])
    graph = BipartiteNeighborhoods(data["k"], data["n"], data["d"], nbs)
    return build_family_MB(graph, data["b"], data["d"], data["tau"], data["B"], budget)


def spec_to_json(spec: MatroidSpec) -> str:
    fam = spec.family
    if fam is None:
        raise ValueError("only family-backed specs serialize to the instance format")
    b = fam.b[0] if fam.b and all(x == fam.b[0] for x in fam.b) else list(fam.b)
    return json.dumps(
        {
            "n": spec.n,
            "k": fam.k,
            "d": spec.d,
            "b": b,
            "tau": spec.tau,
            "A": [sorted(members(a)) for a in fam.A],
            "B": list(range(fam.k)) if spec.indices is None else list(spec.indices),
            "kind": spec.kind,
        }
    )


def spec_from_json(text: str) -> MatroidSpec:
    data = json.loads(text)
    kind = data["kind"]
    fam = ConstraintFamily.of(data["n"], [mask_of(a) for a in data["A"]], data["b"])
    if kind == "full-uncrossed":
        return build_uncrossed(fam)
    if kind == "truncated":
        return build_truncated(fam, data["d"], data["tau"])
    if kind == "pairwise":
        return build_pairwise(fam, data["d"])
    if kind == "partition":
        if data.get("d") is not None:
            raise ValueError("partition instances carry no cardinality cap")
        return partition_matroid(fam.n, fam.A, fam.b)
    if kind == "family-MB":
        return family_mb_from_json(text).spec
    raise ValueError(f"unknown matroid kind {kind!r}")


def theorem_defaults(n: int, k: int, log_base: float = 2.0) -> dict:
    """Asymptotic choices d = n^(1/3), b = 8 log k, tau = d / (4 log k) (log base exposed)."""
    d = n ** (1 / 3)
    lg = math.log(k, log_base)
    return {"d": d, "b": 8 * lg, "tau": d / (4 * lg), "L": d / (2 * lg), "epsilon": 2 * lg / d, "log_base": log_base}


# ---------------------------------------------------------------------------
# verifiers


def _oracle_table(spec_or_oracle, n, limit):
    if isinstance(spec_or_oracle, MatroidSpec):
        return spec_or_oracle.independence_table(limit)
    if n is None:
        raise ValueError("ground size required for a raw oracle")
    if n > limit:
        raise BudgetExceeded(f"n={n} exceeds exhaustive limit {limit}")
    return np.array([bool(spec_or_oracle(m)) for m in range(1 << n)])


def check_matroid_axioms(spec_or_oracle, n: int | None = None, limit: int = EXHAUSTIVE_LIMIT):
    """Exhaustively verify non-emptiness, downward closure and exchange.

    Returns ``(True, None)`` or ``(False, witness)``; for exchange the witness is
    ``(I, J)`` with ``|I| < |J|`` and no ``x in J - I`` such that ``I + x`` is
    independent.  Witnesses are the first in ascending (I, J) mask order.
    """
    if isinstance(spec_or_oracle, MatroidSpec):
        n = spec_or_oracle.n
    indep = _oracle_table(spec_or_oracle, n, limit)
    N = 1 << n
    if not indep[0]:
        return False, ("empty", None, None)
    idx = np.arange(N, dtype=np.int64)
    for x in range(n):
        bit = 1 << x
        has = (idx & bit) != 0
        bad = np.flatnonzero(has & indep & ~indep[idx ^ bit])
        if len(bad):
            s = int(bad[0])
            return False, ("downward-closure", s, s ^ bit)
    sizes = np.bitwise_count(idx).astype(np.int64)
    aug = np.zeros(N, dtype=np.int64)
    for x in range(n):
        bit = 1 << x
        ok = ((idx & bit) == 0) & indep[idx | bit]
        aug |= np.where(ok, bit, 0)
    ind_idx = np.flatnonzero(indep)
    ind_sizes = sizes[ind_idx]
    for I in ind_idx:
        cand = ind_idx[ind_sizes > sizes[I]]
        if not len(cand):
            continue
        stuck = (cand & ~int(I) & int(aug[I])) == 0
        if np.any(stuck):
            return False, ("exchange", int(I), int(cand[np.argmax(stuck)]))
    return True, None


def uncrossing_collection(spec: MatroidSpec, budget: int = UNCROSSING_BUDGET) -> dict[int, int]:
    """Constraint collection whose tight sets must uncross, with right-hand sides.

    Truncated-type specs are expanded to the full form where every index set
    with ``|J| >= tau`` carries right-hand side ``d``, plus the cap ``|I| <= d``.
    """
    if spec.kind in ("full-uncrossed", "partition", "custom"):
        return dict(spec.constraints)
    if spec.kind not in ("truncated", "pairwise"):
        raise ValueError(f"no uncrossing collection for kind {spec.kind!r}")
    fam = spec.family
    idx = list(range(fam.k)) if spec.indices is None else list(spec.indices)
    if (1 << len(idx)) > budget:
        raise BudgetExceeded(f"2^{len(idx)} index sets exceeds budget {budget}")
    pairs = [(full_mask(spec.n), spec.d)]
    for J, u, g in iter_unions(fam, len(idx), indices=idx):
        pairs.append((u, g if len(J) < spec.tau else spec.d))
    return dict(_dedupe(pairs))


def check_uncrossing(spec: MatroidSpec, n: int | None = None, limit: int = EXHAUSTIVE_LIMIT):
    """For every independent ``I`` and tight ``C1, C2``: ``C1 | C2`` is tight or ``C1 & C2`` is empty.

    Returns ``(True, None)`` or ``(False, (I, C1, C2))``.
    """
    n = spec.n if n is None else n
    coll = uncrossing_collection(spec)
    masks = list(coll)
    rhs = [coll[m] for m in masks]
    indep = spec.independence_table(limit)
    for I in np.flatnonzero(indep):
        I = int(I)
        tight = [c for c, r in zip(masks, rhs) if popcount(I & c) == r]
        tight_set = set(tight)
        for a in range(len(tight)):
            for b_ in range(a + 1, len(tight)):
                c1, c2 = tight[a], tight[b_]
                if c1 & c2 and (c1 | c2) not in tight_set:
                    return False, (I, c1, c2)
    return True, None


# ---------------------------------------------------------------------------
# gross substitutes


@dataclass
class GSResult:
    passed: bool
    trials_run: int
    witness: tuple | None = None


def demand_sets(values: np.ndarray, subset_matrix: np.ndarray, prices: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    util = values - subset_matrix @ prices
    return np.flatnonzero(util >= util.max() - tol)


def gross_substitutes_spot_check(
    f: SetFunction,
    trials: int,
    seed: int,
    grid: int = 8,
    max_price: float = 1.0,
    limit: int = EXHAUSTIVE_LIMIT,
) -> GSResult:
    """Sample ``p <= q`` on a dyadic price grid and test the demand condition.

    ``q`` raises a random non-empty subset of coordinates.  For every demanded
    set ``A`` at ``p`` some demanded set at ``q`` must contain the items of ``A``
    whose price did not change.  Stops at the first failure.
    """
    n = f.n
    vals = f.table(limit)
    M = all_subset_matrix(n).astype(np.float64)
    rng = np.random.default_rng(seed)
    for t in range(1, trials + 1):
        p = rng.integers(0, grid + 1, size=n) * (max_price / grid)
        raise_ = rng.random(n) < 0.5
        if not raise_.any():
            raise_[rng.integers(0, n)] = True
        q = p + raise_ * rng.integers(1, grid + 1, size=n) * (max_price / grid)
        Dp = demand_sets(vals, M, p)
        Dq = demand_sets(vals, M, q)
        unchanged = int(sum(1 << i for i in range(n) if not raise_[i]))
        for A in Dp:
            need = int(A) & unchanged
            if not np.any((Dq & need) == need):
                return GSResult(False, t, (p.tolist(), q.tolist(), int(A)))
    return GSResult(True, trials)
