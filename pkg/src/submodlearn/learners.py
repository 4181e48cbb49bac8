"""Learners for non-negative monotone submodular targets.

Training data is a boolean matrix ``X`` (one row per sampled set) with a value
vector ``y``; lists of :class:`LabeledSample` are accepted everywhere and
converted on entry.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from .core import EXHAUSTIVE_LIMIT, BudgetExceeded, ElementSet, SetFunction, all_subset_matrix, as_mask, members

CASE1_CONST = 450.0
DEFAULT_MARGIN = 1e-6


class InfeasibleError(RuntimeError):
    """A separator that the theory guarantees could not be found."""


@dataclass(frozen=True)
class LabeledSample:
    set: ElementSet
    value: float

    def __post_init__(self):
        if not math.isfinite(self.value) or self.value < 0:
            raise ValueError(f"sample value must be finite and non-negative, got {self.value}")


@dataclass(frozen=True)
class PmacParams:
    epsilon: float
    delta: float
    alpha: float = 1.0
    ell: int = 1

    def __post_init__(self):
        if not (0 < self.epsilon < 1 and 0 < self.delta < 1):
            raise ValueError("epsilon and delta must lie in (0, 1)")
        if self.alpha < 1:
            raise ValueError("alpha must be at least 1")
        if self.ell < 1:
            raise ValueError("ell must be at least 1")


def product_sample_size(n: int, epsilon: float, delta: float) -> int:
    return math.ceil(n * math.log(n / delta) / epsilon + 12 * math.log(1 / delta))


def large_mean_sample_size(delta: float) -> int:
    return math.ceil(12 * math.log(1 / delta))


def separator_sample_size(n: int, epsilon: float, delta: float) -> int:
    return math.ceil(48 * n / epsilon * math.log(9 * n / (delta * epsilon)))


def vc_sample_size(dim: int, epsilon: float, delta: float) -> int:
    """Consistent-learner bound: all hypotheses with error >= epsilon are inconsistent w.p. 1 - delta."""
    return math.ceil((4 * dim * math.log(1 / epsilon) + 2 * math.log(2 / delta)) / epsilon)


def as_arrays(samples, n: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Normalize training data to ``(X, y)`` with ``X`` a bool matrix."""
    if isinstance(samples, tuple) and len(samples) == 2:
        X = np.asarray(samples[0], dtype=bool)
        y = np.asarray(samples[1], dtype=float)
    else:
        samples = list(samples)
        if not samples:
            raise ValueError("no training samples")
        n = samples[0].set.n if n is None else n
        X = np.zeros((len(samples), n), dtype=bool)
        for i, s in enumerate(samples):
            X[i, members(s.set.mask)] = True
        y = np.array([s.value for s in samples], dtype=float)
    if X.ndim != 2 or len(X) != len(y):
        raise ValueError("X must be (m, n) with one value per row")
    if len(y) == 0:
        raise ValueError("no training samples")
    if not np.all(np.isfinite(y)) or np.any(y < 0):
        raise ValueError("sample values must be finite and non-negative")
    return X, y


def _row_union(X: np.ndarray, rows: np.ndarray) -> np.ndarray:
    return X[rows].any(axis=0) if rows.any() else np.zeros(X.shape[1], dtype=bool)


def _bool_mask(v: np.ndarray) -> int:
    return sum(1 << int(i) for i in np.flatnonzero(v))


# ---------------------------------------------------------------------------
# hypotheses


@dataclass(frozen=True)
class Hypothesis:
    """One of ``constant``, ``null-subcube``, ``sqrt-linear`` or ``disjunction``.

    ``sqrt-linear`` evaluates ``sqrt(w . chi(S) / (scale * z))`` where ``scale``
    is ``n + 1`` (or ``alpha^2 (n + 1)`` for the robust learner).
    """

    kind: str
    n: int
    c: float = 0.0
    U: int = 0
    low: float = 0.0
    high: float = 1.0
    w: tuple[float, ...] = ()
    z: float = 1.0
    scale: float = 1.0
    zero_coords: int = 0
    X: int = 0
    _vec: np.ndarray = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.kind == "constant":
            if not self.c > 0:
                raise ValueError("constant hypothesis needs c > 0")
            vec = None
        elif self.kind == "null-subcube":
            vec = ~_mask_vector(self.U, self.n)
        elif self.kind == "sqrt-linear":
            if not self.z > 0:
                raise ValueError("sqrt-linear hypothesis needs z > 0")
            vec = np.asarray(self.w, dtype=float)
            if len(vec) != self.n or np.any(vec < 0):
                raise ValueError("w must be n non-negative reals")
            if np.any(vec[_mask_vector(self.zero_coords, self.n)] != 0):
                raise ValueError("w must vanish on zero_coords")
        elif self.kind == "disjunction":
            vec = _mask_vector(self.X, self.n)
        else:
            raise ValueError(f"unknown hypothesis kind {self.kind!r}")
        object.__setattr__(self, "_vec", vec)

    def __call__(self, S) -> float:
        return eval_hypothesis(self, S)

    def evaluate_many(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=bool)
        if self.kind == "constant":
            return np.full(len(X), self.c)
        if self.kind == "null-subcube":
            return np.where((X & self._vec).any(axis=1), self.high, self.low)
        if self.kind == "sqrt-linear":
            return np.sqrt(X.astype(float) @ self._vec / (self.scale * self.z))
        return (X & self._vec).any(axis=1).astype(float)

    def to_json(self) -> str:
        data = {"kind": self.kind, "n": self.n}
        if self.kind == "constant":
            data["c"] = self.c
        elif self.kind == "null-subcube":
            data.update(U=members(self.U), low=self.low, high=self.high)
        elif self.kind == "sqrt-linear":
            data.update(w=list(self.w), z=self.z, scale=self.scale, zero_coords=members(self.zero_coords))
        else:
            data["X"] = members(self.X)
        return json.dumps(data)

    @classmethod
    def from_json(cls, text: str) -> "Hypothesis":
        d = json.loads(text)
        kind, n = d["kind"], d["n"]
        if kind == "constant":
            return cls(kind, n, c=d["c"])
        if kind == "null-subcube":
            return cls(kind, n, U=as_mask(d["U"]), low=d["low"], high=d["high"])
        if kind == "sqrt-linear":
            return cls(kind, n, w=tuple(d["w"]), z=d["z"], scale=d["scale"], zero_coords=as_mask(d["zero_coords"]))
        if kind == "disjunction":
            return cls(kind, n, X=as_mask(d["X"]))
        raise ValueError(f"unknown hypothesis kind {kind!r}")


def _mask_vector(mask: int, n: int) -> np.ndarray:
    v = np.zeros(n, dtype=bool)
    v[members(mask)] = True
    return v


def constant(c: float, n: int) -> Hypothesis:
    return Hypothesis("constant", n, c=float(c))


def null_subcube(U: int, n: int, low: float = 0.0, high: float = 1.0) -> Hypothesis:
    return Hypothesis("null-subcube", n, U=U, low=float(low), high=float(high))


def disjunction(X: int, n: int) -> Hypothesis:
    return Hypothesis("disjunction", n, X=X)


def eval_hypothesis(h: Hypothesis, S) -> float:
    mask = as_mask(S)
    if h.kind == "constant":
        return h.c
    if h.kind == "null-subcube":
        return h.low if mask & ~h.U == 0 else h.high
    if h.kind == "sqrt-linear":
        return math.sqrt(sum(h.w[j] for j in members(mask)) / (h.scale * h.z))
    return 1.0 if mask & h.X else 0.0


# ---------------------------------------------------------------------------
# product distributions


def learn_product(samples, epsilon: float, case1_const: float = CASE1_CONST, eta: float = 1.0) -> Hypothesis:
    """Constant ``mu/4`` when the sample mean is large, else the null subcube of the zero samples."""
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    if eta <= 0:
        raise ValueError("eta must be positive")
    X, y = as_arrays(samples)
    n = X.shape[1]
    mu = float(y.mean())
    if mu >= case1_const * math.log(1 / epsilon):
        return constant(mu / 4, n)
    U = _bool_mask(_row_union(X, y == 0))
    return null_subcube(U, n, 0.0, eta)


def learn_product_eta(samples, epsilon: float, eta: float, case1_const: float = CASE1_CONST) -> Hypothesis:
    return learn_product(samples, epsilon, case1_const, eta)


# ---------------------------------------------------------------------------
# linear separation


@dataclass
class Separator:
    w: np.ndarray
    z: float
    margin: float
    lp_solves: int


def _solve_restricted(P: np.ndarray, labels: np.ndarray, free: np.ndarray):
    """Max-margin LP over normalized rows; returns (w_free, z, t)."""
    nf = int(free.sum())
    rows = labels[:, None] * np.hstack([P[:, :-1][:, free], -P[:, -1:]])
    # variables: w_free (nf), z, t ; maximize t
    A_ub = np.hstack([-rows, np.ones((len(rows), 1))])
    z_row = np.zeros((1, nf + 2))
    z_row[0, nf] = -1.0
    z_row[0, nf + 1] = 1.0
    A_ub = np.vstack([A_ub, z_row])
    b_ub = np.zeros(len(A_ub))
    A_eq = np.zeros((1, nf + 2))
    A_eq[0, : nf + 1] = 1.0
    c = np.zeros(nf + 2)
    c[-1] = -1.0
    bounds = [(0, None)] * (nf + 1) + [(None, 1.0)]
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=[1.0], bounds=bounds, method="highs")
    if res.status != 0:
        raise InfeasibleError(f"LP solver failed: {res.message}")
    x = res.x
    return x[:nf], float(x[nf]), float(x[nf + 1])


def solve_linear_feasibility(
    points: np.ndarray,
    labels: np.ndarray,
    zero_coords: int = 0,
    margin: float = DEFAULT_MARGIN,
    initial: int = 2000,
    batch: int = 2000,
) -> Separator | None:
    """Find ``u = (w, -z)`` with ``label * (u . x) >= margin * |x|``, ``w >= 0``, ``z > 0``, ``w = 0`` on ``zero_coords``.

    Solved as a max-margin LP with ``sum(w) + z = 1`` by constraint generation:
    the restricted optimum bounds the full one from above, so a restricted
    margin below ``margin`` proves infeasibility.  Returns ``None`` when infeasible.
    """
    if margin <= 0:
        raise ValueError("margin must be positive")
    P = np.asarray(points, dtype=float)
    labels = np.asarray(labels, dtype=float)
    if P.ndim != 2 or len(P) != len(labels):
        raise ValueError("points must be (m, n+1) with one label per row")
    n = P.shape[1] - 1
    free = ~_mask_vector(zero_coords, n)
    if len(P) == 0:
        w = np.zeros(n)
        return Separator(w, 1.0, math.inf, 0)
    P, inv = np.unique(P, axis=0, return_inverse=True)
    lab = np.zeros(len(P))
    # identical points with both labels cannot be separated
    np.add.at(lab, inv.ravel(), labels)
    counts = np.bincount(inv.ravel(), minlength=len(P))
    if np.any(np.abs(lab) != counts):
        return None
    labels = np.sign(lab)
    norms = np.linalg.norm(P, axis=1)
    norms[norms == 0] = 1.0
    Pn = P / norms[:, None]
    signed = labels[:, None] * np.hstack([Pn[:, :-1], -Pn[:, -1:]])
    active = np.zeros(len(P), dtype=bool)
    active[np.linspace(0, len(P) - 1, min(initial, len(P))).astype(int)] = True
    solves = 0
    while True:
        wf, z, t = _solve_restricted(Pn[active], labels[active], free)
        solves += 1
        if t < margin:
            return None
        w = np.zeros(n)
        w[free] = wf
        u = np.append(w, z)
        ratios = signed @ u
        worst = float(ratios.min())
        if worst >= margin:
            return Separator(w, z, worst, solves)
        bad = np.flatnonzero((ratios < margin) & ~active)
        if len(bad) == 0:
            # solver tolerance on active rows; nothing new to add
            return Separator(w, z, worst, solves) if worst > 0 else None
        bad = bad[np.argsort(ratios[bad])][:batch]
        active[bad] = True


def separator_points(X: np.ndarray, y: np.ndarray, heads: np.ndarray, scale: float) -> tuple[np.ndarray, np.ndarray]:
    """Heads: ``(chi, f^2)`` labelled +1.  Tails: ``(chi, scale * f^2)`` labelled -1."""
    sq = y**2
    last = np.where(heads, sq, scale * sq)
    P = np.hstack([X.astype(float), last[:, None]])
    labels = np.where(heads, 1.0, -1.0)
    return P, labels


def learn_general_robust(samples, alpha: float, seed: int, margin: float = DEFAULT_MARGIN) -> Hypothesis:
    """Linear-separator learner with factor ``alpha * sqrt(n + 1)`` for targets within factor alpha of submodular."""
    if alpha < 1:
        raise ValueError("alpha must be at least 1")
    X, y = as_arrays(samples)
    n = X.shape[1]
    zero = y == 0
    U0 = _bool_mask(_row_union(X, zero))
    if zero.all():
        return null_subcube(U0, n, 0.0, 1.0)
    Xp, yp = X[~zero], y[~zero]
    rng = np.random.default_rng(seed)
    heads = rng.integers(0, 2, size=len(yp)) == 1
    scale = alpha * alpha * (n + 1)
    P, labels = separator_points(Xp, yp, heads, scale)
    sep = solve_linear_feasibility(P, labels, U0, margin)
    if sep is None:
        raise InfeasibleError("no consistent separator; target is not (approximately) submodular")
    w = np.where(_mask_vector(U0, n), 0.0, np.maximum(sep.w, 0.0))
    return Hypothesis("sqrt-linear", n, w=tuple(float(v) for v in w), z=sep.z, scale=scale, zero_coords=U0)


def learn_general(samples, seed: int, margin: float = DEFAULT_MARGIN) -> Hypothesis:
    return learn_general_robust(samples, 1.0, seed, margin)


def lemma_witness(w_star: np.ndarray) -> np.ndarray:
    """The separator ``((n + 1/2) w*, -1)`` built from a sqrt-linear lower bound ``w*``."""
    n = len(w_star)
    return np.append((n + 0.5) * np.asarray(w_star, dtype=float), -1.0)


# ---------------------------------------------------------------------------
# boolean targets


def learn_boolean(samples) -> Hypothesis:
    """Disjunction elimination: drop every element of a zero-labelled set."""
    X, y = as_arrays(samples)
    n = X.shape[1]
    if np.any((y != 0) & (y != 1)):
        raise ValueError("boolean learner needs values in {0, 1}")
    if np.all(y == 0):
        return disjunction(0, n)
    empty = ~X.any(axis=1)
    if np.any(empty & (y == 1)):
        if np.any(y == 0):
            raise ValueError("f(empty) = 1 but some set has value 0: not monotone")
        return constant(1.0, n)
    keep = ~_row_union(X, y == 0)
    if np.any((y == 1) & ~(X & keep).any(axis=1)):
        raise ValueError("no monotone disjunction is consistent with the samples")
    return disjunction(_bool_mask(keep), n)


# ---------------------------------------------------------------------------
# sqrt-linear lower bound


def verify_sqrt_linear_bound(f: SetFunction, limit: int = EXHAUSTIVE_LIMIT):
    """Search ``w >= 0`` with ``w . chi(S) <= f(S)^2 <= n w . chi(S)`` for every non-empty ``S``.

    Returns ``(True, w)`` or ``(False, violated)`` where ``violated`` lists the
    subsets whose constraints cannot all be met (from a slack-minimizing LP).
    """
    n = f.n
    if n > limit:
        raise BudgetExceeded(f"n={n} exceeds exhaustive limit {limit}")
    vals = f.table(limit)
    if vals[0] != 0:
        return False, [0]
    M = all_subset_matrix(n)[1:].astype(float)
    sq = vals[1:] ** 2
    m = len(M)
    # rows:  M w <= sq   and   -n M w <= -sq
    A = np.vstack([M, -n * M])
    rhs = np.concatenate([sq, -sq])
    res = linprog(np.zeros(n), A_ub=A, b_ub=rhs, bounds=[(0, None)] * n, method="highs")
    if res.status == 0:
        w = res.x
        lin = M @ w
        tol = 1e-7 * (1 + sq)
        if np.all(lin <= sq + tol) and np.all(sq <= n * lin + n * tol):
            return True, w
    # phase one: minimize total slack to locate the conflicting subsets
    A1 = np.hstack([A, -np.eye(2 * m)])
    c = np.concatenate([np.zeros(n), np.ones(2 * m)])
    res = linprog(c, A_ub=A1, b_ub=rhs, bounds=[(0, None)] * (n + 2 * m), method="highs")
    slack = res.x[n:]
    bad = np.flatnonzero(slack > 1e-9)
    violated = sorted({int(i % m) + 1 for i in bad})
    return False, violated


# ---------------------------------------------------------------------------
# file formats


def samples_to_csv(X: np.ndarray, y: np.ndarray) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["set", "value"])
    for row, v in zip(X, y):
        wr.writerow([format(_bool_mask(row), "x"), repr(float(v))])
    return buf.getvalue()


def samples_from_csv(text: str, n: int) -> tuple[np.ndarray, np.ndarray]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ["set", "value"]:
        raise ValueError("sample file must start with header 'set,value'")
    X = np.zeros((len(rows) - 1, n), dtype=bool)
    y = np.zeros(len(rows) - 1)
    for i, (s, v) in enumerate(rows[1:]):
        mask = int(s, 16)
        if mask >> n:
            raise ValueError(f"row {i + 1}: set {s} outside ground set of size {n}")
        X[i, members(mask)] = True
        y[i] = float(v)
    return X, y
