"""Ground-set and set-function primitives.

Sets over ``[n] = {0, ..., n-1}`` are stored as Python ``int`` bitmasks where
element ``i`` is bit ``i``.  :class:`ElementSet` wraps a mask together with its
ground size; hot paths work on raw masks and boolean ``(m, n)`` matrices.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence

import numpy as np

EXHAUSTIVE_LIMIT = 16
MAX_WITNESSES = 10
TOL = 1e-9


class ConstructionError(ValueError):
    """Raised when a constructor's preconditions are violated."""


class BudgetExceeded(ValueError):
    """Raised when an exhaustive enumeration would exceed its configured budget."""


class NotSubmodularError(ValueError):
    """Raised when an operation requires a submodular input and gets something else."""


def popcount(mask: int) -> int:
    return mask.bit_count()


def mask_of(items: Iterable[int]) -> int:
    m = 0
    for i in items:
        m |= 1 << int(i)
    return m


def members(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def full_mask(n: int) -> int:
    return (1 << n) - 1


def masks_to_matrix(masks: Sequence[int], n: int) -> np.ndarray:
    """Boolean ``(len(masks), n)`` indicator matrix."""
    out = np.zeros((len(masks), n), dtype=bool)
    for r, m in enumerate(masks):
        for i in members(m):
            out[r, i] = True
    return out


def matrix_to_masks(X: np.ndarray) -> list[int]:
    weights = [1 << i for i in range(X.shape[1])]
    return [sum(w for w, bit in zip(weights, row) if bit) for row in X]


def all_subset_matrix(n: int) -> np.ndarray:
    """Indicator rows of all ``2**n`` subsets in binary-counter order."""
    idx = np.arange(1 << n, dtype=np.int64)
    return ((idx[:, None] >> np.arange(n)) & 1).astype(bool)


@dataclass(frozen=True, order=True)
class ElementSet:
    """A subset of ``{0, ..., n-1}``."""

    mask: int
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("ground size must be non-negative")
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError(f"mask {self.mask:#x} has members outside [0, {self.n})")

    @classmethod
    def of(cls, n: int, items: Iterable[int] = ()) -> "ElementSet":
        items = list(items)
        for i in items:
            if not 0 <= i < n:
                raise ValueError(f"element {i} outside ground set [0, {n})")
        return cls(mask_of(items), n)

    @classmethod
    def full(cls, n: int) -> "ElementSet":
        return cls(full_mask(n), n)

    def __len__(self) -> int:
        return popcount(self.mask)

    def __iter__(self) -> Iterator[int]:
        return iter(members(self.mask))

    def __contains__(self, i: int) -> bool:
        return bool(self.mask >> i & 1)

    def _other(self, other: "ElementSet") -> int:
        if other.n != self.n:
            raise ValueError("ground sizes differ")
        return other.mask

    def __or__(self, other):
        return ElementSet(self.mask | self._other(other), self.n)

    def __and__(self, other):
        return ElementSet(self.mask & self._other(other), self.n)

    def __sub__(self, other):
        return ElementSet(self.mask & ~self._other(other), self.n)

    def issubset(self, other: "ElementSet") -> bool:
        return self.mask & ~self._other(other) == 0

    def add(self, i: int) -> "ElementSet":
        return ElementSet.of(self.n, [*self, i])

    def indicator(self) -> np.ndarray:
        return np.array([(self.mask >> i) & 1 for i in range(self.n)], dtype=bool)

    def __repr__(self) -> str:
        return f"ElementSet({sorted(self)}, n={self.n})"


def as_mask(S, n: int | None = None) -> int:
    if isinstance(S, ElementSet):
        return S.mask
    if isinstance(S, (int, np.integer)):
        return int(S)
    return mask_of(S)


class SetFunction:
    """A deterministic map from subsets of ``[n]`` to reals.

    ``evaluator`` takes an int mask.  ``batch`` (optional) takes a boolean
    ``(m, n)`` matrix and returns ``m`` values; it must agree with
    ``evaluator``.  ``exact`` is an integer-valued path for integer kinds.
    """

    KINDS = ("coverage", "cut", "matroid-rank", "tabulated", "cardinality-profile")

    def __init__(
        self,
        n: int,
        evaluator: Callable[[int], float],
        kind: str,
        batch: Callable[[np.ndarray], np.ndarray] | None = None,
        exact: Callable[[int], int] | None = None,
        name: str | None = None,
    ):
        if kind not in self.KINDS:
            raise ValueError(f"unknown kind {kind!r}")
        self.n = n
        self.kind = kind
        self._eval = evaluator
        self._batch = batch
        self._exact = exact
        self.name = name or kind

    def __call__(self, S) -> float:
        return self.value(as_mask(S))

    def value(self, mask: int) -> float:
        return float(self._eval(mask))

    def exact(self, mask: int) -> int:
        if self._exact is None:
            raise TypeError(f"{self.kind} function has no exact integer path")
        return int(self._exact(mask))

    @property
    def is_integer(self) -> bool:
        return self._exact is not None

    def evaluate_many(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=bool)
        if self._batch is not None:
            return np.asarray(self._batch(X), dtype=np.float64)
        return np.array([self.value(m) for m in matrix_to_masks(X)], dtype=np.float64)

    def table(self, limit: int = EXHAUSTIVE_LIMIT) -> np.ndarray:
        """Values on all subsets in binary-counter order."""
        if self.n > limit:
            raise BudgetExceeded(f"tabulating n={self.n} exceeds exhaustive limit {limit}")
        if self._batch is not None:
            return self.evaluate_many(all_subset_matrix(self.n))
        return np.array([self.value(m) for m in range(1 << self.n)], dtype=np.float64)

    def __repr__(self) -> str:
        return f"SetFunction({self.name}, n={self.n})"


def _universe_masks(subsets, universe_size):
    masks = [as_mask(s) for s in subsets]
    if universe_size is None:
        universe_size = max((m.bit_length() for m in masks), default=0)
    for i, m in enumerate(masks):
        if m >> universe_size:
            raise ConstructionError(f"subset {i} has members outside universe [0, {universe_size})")
    return masks, universe_size


def make_coverage_function(subsets, weights=None, universe_size: int | None = None) -> SetFunction:
    """``f(I) = w(union of subsets[i] for i in I)``; unit weights by default."""
    masks, m = _universe_masks(subsets, universe_size)
    n = len(masks)
    cover = masks_to_matrix(masks, m) if m else np.zeros((n, 0), dtype=bool)
    if weights is None:
        w = np.ones(m)
    else:
        w = np.asarray(weights, dtype=np.float64)
        if w.shape != (m,):
            raise ConstructionError(f"expected {m} weights, got {w.shape}")
        if np.any(w < 0) or not np.all(np.isfinite(w)):
            raise ConstructionError("weights must be finite and non-negative")
    wlist = w.tolist()

    def union(mask):
        u = 0
        i = 0
        while mask:
            if mask & 1:
                u |= masks[i]
            mask >>= 1
            i += 1
        return u

    def evaluator(mask):
        return sum(wlist[j] for j in members(union(mask)))

    def batch(X):
        covered = (X.astype(np.float64) @ cover.astype(np.float64)) > 0
        return covered.astype(np.float64) @ w

    exact = (lambda mask: popcount(union(mask))) if weights is None else None
    return SetFunction(n, evaluator, "coverage", batch=batch, exact=exact)


def make_cut_function(edges, n: int) -> SetFunction:
    """``f(U)`` = number of edges with exactly one endpoint in ``U``."""
    E = []
    for u, v in edges:
        if u == v:
            raise ConstructionError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ConstructionError(f"edge ({u}, {v}) outside [0, {n})")
        E.append((int(u), int(v)))
    eu = np.array([e[0] for e in E], dtype=np.int64)
    ev = np.array([e[1] for e in E], dtype=np.int64)

    def exact(mask):
        return sum(((mask >> u) ^ (mask >> v)) & 1 for u, v in E)

    def batch(X):
        return (X[:, eu] != X[:, ev]).sum(axis=1)

    return SetFunction(n, exact, "cut", batch=batch, exact=exact)


def make_cardinality_profile(h: Sequence[float], n: int | None = None) -> SetFunction:
    """``f(S) = h[|S|]``."""
    h = np.asarray(h, dtype=np.float64)
    if n is None:
        n = len(h) - 1
    if len(h) != n + 1:
        raise ConstructionError(f"profile needs n+1={n + 1} values, got {len(h)}")
    if not np.all(np.isfinite(h)):
        raise ConstructionError("profile values must be finite")
    hl = h.tolist()
    integral = bool(np.all(h == np.round(h)))

    def evaluator(mask):
        return hl[popcount(mask)]

    def batch(X):
        return h[X.sum(axis=1)]

    exact = (lambda mask: int(hl[popcount(mask)])) if integral else None
    return SetFunction(n, evaluator, "cardinality-profile", batch=batch, exact=exact)


def make_tabulated(values: Sequence[float]) -> SetFunction:
    vals = np.asarray(values, dtype=np.float64)
    n = int(round(np.log2(len(vals)))) if len(vals) else -1
    if n < 0 or len(vals) != 1 << n:
        raise ConstructionError(f"table length {len(vals)} is not a power of two")
    if not np.all(np.isfinite(vals)):
        raise ConstructionError("table values must be finite")
    weights = 1 << np.arange(n, dtype=np.int64)

    def batch(X):
        return vals[X.astype(np.int64) @ weights]

    integral = bool(np.all(vals == np.round(vals)))
    exact = (lambda mask: int(vals[mask])) if integral else None
    return SetFunction(n, lambda mask: vals[mask], "tabulated", batch=batch, exact=exact)


def tabulate(f: SetFunction, limit: int = EXHAUSTIVE_LIMIT) -> SetFunction:
    return make_tabulated(f.table(limit))


def function_to_json(f: SetFunction, limit: int = EXHAUSTIVE_LIMIT) -> str:
    return json.dumps({"n": f.n, "values": f.table(limit).tolist()})


def function_from_json(text: str) -> SetFunction:
    data = json.loads(text)
    f = make_tabulated(data["values"])
    if f.n != data["n"]:
        raise ConstructionError(f"declared n={data['n']} but table implies n={f.n}")
    return f


# ---------------------------------------------------------------------------
# property checking


class Witness(NamedTuple):
    prop: str
    S: int
    T: int
    x: int | None


@dataclass
class PropertyReport:
    n: int
    normalized: bool
    nonnegative: bool
    monotone: bool
    submodular: bool
    lipschitz_constant: float
    integer_valued: bool
    submodular_marginal: bool
    submodular_lattice: bool
    exhaustive: bool
    witnesses: list[Witness] = field(default_factory=list)

    def witnesses_for(self, prop: str) -> list[Witness]:
        return [w for w in self.witnesses if w.prop == prop]

    @property
    def all_matroid_rank_properties(self) -> bool:
        return (
            self.normalized
            and self.nonnegative
            and self.monotone
            and self.submodular
            and self.integer_valued
            and self.lipschitz_constant <= 1 + TOL
        )


@dataclass(frozen=True)
class Sampled:
    trials: int
    seed: int


def _cap_witnesses(found: dict[str, list[Witness]]) -> list[Witness]:
    # one per failing property first, then fill in order
    out = [ws[0] for ws in found.values() if ws]
    for ws in found.values():
        for w in ws[1:]:
            if len(out) >= MAX_WITNESSES:
                return out
            out.append(w)
    return out[:MAX_WITNESSES]


def _submask_min(vals: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """For every mask T: min over S subset of T of vals[S], and the argmin S."""
    mn = vals.copy()
    arg = np.arange(len(vals), dtype=np.int64)
    idx = np.arange(len(vals), dtype=np.int64)
    for b in range(n):
        has = (idx >> b) & 1 == 1
        src = idx[has] ^ (1 << b)
        better = mn[src] < mn[has]
        tgt = idx[has][better]
        mn[tgt] = mn[src[better]]
        arg[tgt] = arg[src[better]]
    return mn, arg


def _exhaustive_report(vals: np.ndarray, n: int) -> PropertyReport:
    N = 1 << n
    idx = np.arange(N, dtype=np.int64)
    found: dict[str, list[Witness]] = {p: [] for p in ("normalized", "nonnegative", "monotone", "marginal", "lattice")}

    normalized = bool(abs(vals[0]) <= TOL)
    if not normalized:
        found["normalized"].append(Witness("normalized", 0, 0, None))
    neg = np.flatnonzero(vals < -TOL)
    for s in neg[:MAX_WITNESSES]:
        found["nonnegative"].append(Witness("nonnegative", int(s), int(s), None))

    lip = 0.0
    monotone = True
    marginal = True
    for x in range(n):
        bit = 1 << x
        base = idx[(idx & bit) == 0]
        marg = vals[base | bit] - vals[base]
        if len(marg):
            lip = max(lip, float(np.max(np.abs(marg))))
        bad = np.flatnonzero(marg < -TOL)
        if len(bad):
            monotone = False
            for j in bad[: MAX_WITNESSES - len(found["monotone"])]:
                s = int(base[j])
                found["monotone"].append(Witness("monotone", s, s | bit, x))
        # diminishing returns over all S subset of T not containing x: marg[T] <= min_{S<=T} marg[S]
        full = np.full(N, np.inf)
        full[base] = marg
        mn, arg = _submask_min(full, n)
        viol = np.flatnonzero(marg > mn[base] + TOL)
        if len(viol):
            marginal = False
            for j in viol[:MAX_WITNESSES]:
                t = int(base[j])
                found["marginal"].append(Witness("submodular", int(arg[t]), t, x))

    found["marginal"] = sorted(found["marginal"], key=lambda w: (w.T, w.x, w.S))[:MAX_WITNESSES]
    lattice = True
    for s in range(N):
        lhs = vals[s] + vals
        rhs = vals[s | idx] + vals[s & idx]
        bad = np.flatnonzero(lhs < rhs - TOL)
        if len(bad):
            lattice = False
            for t in bad[: max(0, MAX_WITNESSES - len(found["lattice"]))]:
                found["lattice"].append(Witness("submodular", s, int(t), None))
            if len(found["lattice"]) >= MAX_WITNESSES:
                break
    if marginal != lattice:
        raise AssertionError("submodularity verdicts from the marginal and lattice forms disagree")

    return PropertyReport(
        n=n,
        normalized=normalized,
        nonnegative=len(neg) == 0,
        monotone=monotone,
        submodular=marginal and lattice,
        lipschitz_constant=lip,
        integer_valued=bool(np.all(vals == np.round(vals))),
        submodular_marginal=marginal,
        submodular_lattice=lattice,
        exhaustive=True,
        witnesses=_cap_witnesses(found),
    )


def _sampled_report(f: SetFunction, trials: int, seed: int) -> PropertyReport:
    n = f.n
    rng = np.random.default_rng(seed)
    # 0: in S (and T), 1: in T only, 2: outside T
    choice = rng.integers(0, 3, size=(trials, n))
    S = choice == 0
    T = choice <= 1
    outside = ~T
    has_x = outside.any(axis=1)
    S, T, outside = S[has_x], T[has_x], outside[has_x]
    m = len(S)
    # pick x uniformly among elements outside T
    r = rng.random(m)
    cnt = outside.sum(axis=1)
    k = np.floor(r * cnt).astype(np.int64)
    cum = np.cumsum(outside, axis=1) - 1
    x = np.argmax((cum == k[:, None]) & outside, axis=1)
    Sx = S.copy()
    Sx[np.arange(m), x] = True
    Tx = T.copy()
    Tx[np.arange(m), x] = True

    fS, fT = f.evaluate_many(S), f.evaluate_many(T)
    fSx, fTx = f.evaluate_many(Sx), f.evaluate_many(Tx)
    f0 = f.value(0)
    found: dict[str, list[Witness]] = {p: [] for p in ("normalized", "nonnegative", "monotone", "marginal", "lattice")}

    def wit(key, rows, a, b, with_x):
        prop = "submodular" if key in ("marginal", "lattice") else key
        for r_ in rows[:MAX_WITNESSES]:
            sa = matrix_to_masks(a[r_: r_ + 1])[0]
            tb = matrix_to_masks(b[r_: r_ + 1])[0]
            found[key].append(Witness(prop, sa, tb, int(x[r_]) if with_x else None))

    normalized = bool(abs(f0) <= TOL)
    if not normalized:
        found["normalized"].append(Witness("normalized", 0, 0, None))
    neg_rows = np.flatnonzero(np.minimum.reduce([fS, fT, fSx, fTx]) < -TOL)
    nonneg = bool(f0 >= -TOL) and len(neg_rows) == 0
    wit("nonnegative", neg_rows, S, S, False)
    mono_rows = np.flatnonzero((fT < fS - TOL) | (fSx < fS - TOL) | (fTx < fT - TOL))
    wit("monotone", mono_rows, S, T, False)
    marginal_rows = np.flatnonzero(fTx - fT > fSx - fS + TOL)
    wit("marginal", marginal_rows, S, T, True)
    # lattice form on the incomparable pair (S+x, T): union T+x, intersection S
    lattice_rows = np.flatnonzero(fSx + fT < fTx + fS - TOL)
    wit("lattice", lattice_rows, Sx, T, False)
    lip = float(max(np.max(np.abs(fSx - fS), initial=0.0), np.max(np.abs(fTx - fT), initial=0.0)))
    marginal, lattice = len(marginal_rows) == 0, len(lattice_rows) == 0
    if marginal != lattice:
        raise AssertionError("submodularity verdicts from the marginal and lattice forms disagree")
    allv = np.concatenate([fS, fT, fSx, fTx])
    return PropertyReport(
        n=n,
        normalized=normalized,
        nonnegative=nonneg,
        monotone=len(mono_rows) == 0,
        submodular=marginal and lattice,
        lipschitz_constant=lip,
        integer_valued=bool(np.all(allv == np.round(allv))),
        submodular_marginal=marginal,
        submodular_lattice=lattice,
        exhaustive=False,
        witnesses=_cap_witnesses(found),
    )


def check_properties(f: SetFunction, mode="exhaustive", limit: int = EXHAUSTIVE_LIMIT) -> PropertyReport:
    """Check normalization, non-negativity, monotonicity, submodularity and Lipschitzness.

    ``mode`` is ``"exhaustive"`` or a :class:`Sampled` instance.  Submodularity is
    tested in both the diminishing-returns form and the lattice form
    ``f(S) + f(T) >= f(S|T) + f(S&T)``; the two verdicts must agree.
    """
    if isinstance(mode, Sampled):
        return _sampled_report(f, mode.trials, mode.seed)
    if mode != "exhaustive":
        raise ValueError(f"unknown mode {mode!r}")
    if f.n > limit:
        raise BudgetExceeded(f"exhaustive check refused: n={f.n} exceeds limit {limit}")
    return _exhaustive_report(f.table(limit), f.n)


def check_minimizer_lattice(f: SetFunction, limit: int = EXHAUSTIVE_LIMIT) -> tuple[bool, tuple[int, int] | None]:
    """True iff the global minimizers of a submodular ``f`` are closed under union and intersection."""
    report = check_properties(f, limit=limit)
    if not report.submodular:
        raise NotSubmodularError("minimizer lattice requires a submodular function")
    vals = f.table(limit)
    lo = vals.min()
    is_min = vals <= lo + TOL
    mins = np.flatnonzero(is_min)
    for a in mins:
        u = a | mins
        i = a & mins
        bad = np.flatnonzero(~is_min[u] | ~is_min[i])
        if len(bad):
            return False, (int(a), int(mins[bad[0]]))
    return True, None
