import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from submodlearn.core import ElementSet, all_subset_matrix, make_cardinality_profile, mask_of
from submodlearn.experiments.corpus import small_matroid_corpus
from submodlearn.learners import (
    Hypothesis,
    InfeasibleError,
    LabeledSample,
    separator_points,
    separator_sample_size,
    constant,
    eval_hypothesis,
    lemma_witness,
    learn_boolean,
    learn_general,
    learn_general_robust,
    learn_product,
    learn_product_eta,
    null_subcube,
    samples_from_csv,
    samples_to_csv,
    solve_linear_feasibility,
    vc_sample_size,
    verify_sqrt_linear_bound,
)


def _rows(masks, n):
    X = np.zeros((len(masks), n), dtype=bool)
    for i, m in enumerate(masks):
        X[i] = [(m >> j) & 1 for j in range(n)]
    return X


def test_sample_sizes():
    assert separator_sample_size(30, 0.1, 0.1) == 146932
    assert vc_sample_size(20, 0.05, 0.05) == 4941


def test_product_learner_zero_samples_give_null_subcube():
    X = _rows([0b0011, 0b0100, 0], 5)
    h = learn_product((X, np.zeros(3)), 0.1)
    assert h.kind == "null-subcube" and h.U == 0b0111
    assert h(mask_of([0, 2])) == 0 and h(mask_of([3])) == 1


def test_product_learner_large_mean_constant():
    X = _rows([1, 2, 3], 4)
    # 1000 sits below 450 ln 10, so the constant branch needs a smaller constant here
    assert learn_product((X, np.full(3, 1000.0)), 0.1).kind == "null-subcube"
    h = learn_product((X, np.full(3, 1000.0)), 0.1, case1_const=400)
    assert h.kind == "constant" and h.c == 250
    assert learn_product((X, np.full(3, 1100.0)), 0.1).c == 275


def test_product_learner_threshold_is_inclusive():
    mu = 450 * math.log(10)
    h = learn_product((_rows([1], 2), np.array([mu])), 0.1)
    assert h.kind == "constant"
    h = learn_product((_rows([1], 2), np.array([mu * (1 - 1e-9)])), 0.1)
    assert h.kind == "null-subcube"


def test_eta_variant():
    X = _rows([1, 2], 3)
    assert learn_product_eta((X, np.zeros(2)), 0.1, 0.5).high == 0.5
    assert learn_product_eta((X, np.zeros(2)), 0.1, 1.0) == learn_product((X, np.zeros(2)), 0.1)


def test_separator_points():
    X = _rows([0b011], 3)
    P, lab = separator_points(X, np.array([2.0]), np.array([True]), 4.0)
    assert P[0].tolist() == [1, 1, 0, 4] and lab[0] == 1
    P, lab = separator_points(X, np.array([2.0]), np.array([False]), 2 * 2 * 4.0)
    assert P[0, -1] == 64 and lab[0] == -1


def test_linear_feasibility_examples():
    sep = solve_linear_feasibility(np.array([[1.0, 0, 0, 1]]), np.array([1.0]))
    assert sep is not None and sep.w[0] > sep.z
    same = np.array([[1.0, 0, 1], [1.0, 0, 1]])
    assert solve_linear_feasibility(same, np.array([1.0, -1.0])) is None


def test_lemma_witness_separates_free_rank_points():
    n = 6
    X = all_subset_matrix(n)[1:]
    y = X.sum(axis=1).astype(float)
    heads = np.random.default_rng(0).random(len(y)) < 0.5
    P, lab = separator_points(X, y, heads, n + 1)
    u = lemma_witness(np.ones(n))
    assert np.all(lab * (P @ u) > 0)


def _one_sided_ok(h, X, y, seed, alpha=1.0):
    nz = y > 0
    heads = np.random.default_rng(seed).integers(0, 2, size=int(nz.sum())) == 1
    hv = h.evaluate_many(X[nz])
    f = y[nz]
    factor = alpha * math.sqrt(X.shape[1] + 1)
    tol = 1e-9 * (1 + f)
    return np.all(f[heads] <= factor * hv[heads] + tol[heads]) and np.all(hv[~heads] <= f[~heads] + tol[~heads])


def test_learn_general_identity_n3():
    X = all_subset_matrix(3)
    y = X.sum(axis=1).astype(float)
    h = learn_general((X, y), seed=5)
    assert h.kind == "sqrt-linear"
    assert _one_sided_ok(h, X, y, 5)


def test_learn_general_all_zero():
    X = _rows([1, 2], 4)
    h = learn_general((X, np.zeros(2)), 0)
    assert h(0b0011) == 0 and h(0b0100) == 1


def test_robust_alpha_one_is_plain():
    X = all_subset_matrix(4)
    y = np.minimum(X.sum(axis=1), 2).astype(float)
    assert learn_general_robust((X, y), 1.0, 3) == learn_general((X, y), 3)


def test_robust_near_submodular_target():
    rng = np.random.default_rng(1)
    X = all_subset_matrix(5)
    base = np.minimum(X.sum(axis=1), 3).astype(float)
    y = base * rng.uniform(1, 1.5, size=len(base))
    h = learn_general_robust((X, y), 1.5, 9)
    assert _one_sided_ok(h, X, y, 9, alpha=1.5)


def test_learn_general_rejects_non_submodular_data():
    X = all_subset_matrix(4)
    y = (X.sum(axis=1) ** 4).astype(float)
    with pytest.raises(InfeasibleError):
        learn_general((X, y), 0)


def test_boolean_learner_examples():
    n = 6
    X = all_subset_matrix(n)
    y = (X[:, 0] | X[:, 2]).astype(float)
    h = learn_boolean((X, y))
    assert h.kind == "disjunction" and h.X == 0b101
    assert np.array_equal(h.evaluate_many(X), y)
    ones = _rows([0, 1, 3], n)
    assert learn_boolean((ones, np.ones(3))).kind == "constant"
    h = learn_boolean((ones, np.zeros(3)))
    assert not h.evaluate_many(X).any()


def test_eval_hypothesis_examples():
    assert eval_hypothesis(constant(5, 4), mask_of([1])) == 5
    h = null_subcube(mask_of([0, 1]), 4)
    assert h(mask_of([0])) == 0 and h(mask_of([2])) == 1
    n = 4
    sq = Hypothesis("sqrt-linear", n, w=(1.0,) * n, z=1 / (n + 1), scale=n + 1)
    assert sq(mask_of([0, 1, 3])) == pytest.approx(math.sqrt(3))
    assert sq(ElementSet.of(n, [2])) == pytest.approx(1.0)


def test_hypothesis_json_round_trip():
    for h in (constant(2, 3), null_subcube(5, 3, 0, 2), learn_boolean((_rows([1, 2], 3), np.array([0.0, 1.0])))):
        assert Hypothesis.from_json(h.to_json()) == h


def test_sqrt_linear_bound_examples():
    ok, w = verify_sqrt_linear_bound(make_cardinality_profile(np.arange(6)))
    assert ok
    ok, _ = verify_sqrt_linear_bound(make_cardinality_profile(np.minimum(np.arange(6), 1)))
    assert ok
    for entry in small_matroid_corpus(0):
        assert verify_sqrt_linear_bound(entry.f)[0], entry.name


def test_sqrt_linear_bound_reports_violations():
    ok, bad = verify_sqrt_linear_bound(make_cardinality_profile([0, 1, 10, 10]))
    assert not ok and bad


def test_labeled_sample_validation():
    LabeledSample(ElementSet.of(3, [1]), 2.0)
    with pytest.raises(ValueError):
        LabeledSample(ElementSet.of(3, [1]), -1.0)


def test_samples_as_list():
    samples = [LabeledSample(ElementSet.of(3, [0]), 1.0), LabeledSample(ElementSet.of(3, [0, 1]), 2.0)]
    h = learn_general(samples, 0)
    assert h.n == 3


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 2**8 - 1), min_size=1, max_size=40), st.lists(st.floats(0, 10), min_size=40, max_size=40))
def test_csv_round_trip(masks, vals):
    X = _rows(masks, 8)
    y = np.array(vals[: len(masks)])
    X2, y2 = samples_from_csv(samples_to_csv(X, y), 8)
    assert np.array_equal(X, X2) and np.array_equal(y, y2)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 7), st.integers(1, 7), st.integers(0, 2**31))
def test_general_learner_sandwich_on_uniform_rank(n, r, seed):
    X = all_subset_matrix(n)
    y = np.minimum(X.sum(axis=1), r).astype(float)
    h = learn_general((X, y), seed)
    assert _one_sided_ok(h, X, y, seed)
