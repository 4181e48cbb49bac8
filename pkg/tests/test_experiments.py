import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import binom

from submodlearn.core import Sampled, check_properties, make_cardinality_profile
from submodlearn.expanders import BipartiteNeighborhoods
from submodlearn.experiments.artifacts import write_artifacts
from submodlearn.experiments.characterization import characterization_curve
from submodlearn.experiments.concentration import (
    concentration_check,
    exact_profile_tails,
    mean_concentration_check,
)
from submodlearn.experiments.corpus import large_corpus, named_target, small_matroid_corpus
from submodlearn.experiments.distributions import (
    ProductDistribution,
    UniformFamilyDistribution,
    UniformSizeDistribution,
    sample_product,
)
from submodlearn.experiments.hardness import (
    constrained_min_demo,
    is_st_cut,
    path_graph,
    st_cut_instance,
    vertex_cover_instance,
)
from submodlearn.experiments.lower_bound import factor_miss, lower_bound_experiment, memorizing_learner
from submodlearn.experiments.pmac import pmac_evaluate, pmac_from_values, realized_factors
from submodlearn.matroids import build_family_MB


# distributions


def test_product_extremes():
    assert len(sample_product(ProductDistribution((0.0,) * 5), 1)) == 0
    assert len(sample_product(ProductDistribution((1.0,) * 5), 1)) == 5


def test_product_size_concentration():
    exact = binom.cdf(600, 1000, 0.5) - binom.cdf(399, 1000, 0.5)
    assert exact >= 0.999
    sizes = ProductDistribution.uniform(1000).sample_matrix(2000, 0).sum(axis=1)
    assert np.mean((sizes >= 400) & (sizes <= 600)) >= 0.999


def test_uniform_size_and_family():
    X = UniformSizeDistribution(10, 4).sample_matrix(50, 0)
    assert (X.sum(axis=1) == 4).all()
    fam = UniformFamilyDistribution.of(6, [{0, 1}, {2, 3, 4}])
    sizes = set(fam.sample_matrix(100, 0).sum(axis=1).tolist())
    assert sizes == {2, 3}


# concentration


def test_tail_check_trivial_at_zero():
    f = make_cardinality_profile(np.arange(11))
    assert concentration_check(f, ProductDistribution.uniform(10), 0.0, 2.0, 200, 0).passed


def test_identity_tails_match_binomial():
    n, trials = 1000, 20000
    f = make_cardinality_profile(np.arange(n + 1))
    r = concentration_check(f, ProductDistribution.uniform(n), 500.0, 4.0, trials, 3)
    assert r.passed
    lo, hi = exact_profile_tails(np.arange(n + 1), 0.5, 500.0, 4.0)
    assert hi == pytest.approx(binom.sf(499, n, 0.5))
    for emp, ex in ((r.low_tail, lo), (r.high_tail, hi)):
        assert abs(emp - ex) <= 4 * math.sqrt(ex * (1 - ex) / trials)


def test_mean_check_examples():
    n = 1000
    dist = ProductDistribution.uniform(n)
    r = mean_concentration_check(make_cardinality_profile(np.arange(n + 1)), dist, 0.5, 5000, 0)
    assert r.verdict == "pass"
    assert r.bound == pytest.approx(4 * math.exp(-0.25 * r.mean / 16))
    assert 4 * math.exp(-7.8125) == pytest.approx(1.62e-3, rel=1e-2)
    small = mean_concentration_check(make_cardinality_profile(np.arange(101)), ProductDistribution.uniform(100), 0.5, 500, 0)
    assert small.verdict == "not-applicable"
    const = mean_concentration_check(make_cardinality_profile(np.full(11, 1000.0)), ProductDistribution.uniform(10), 1.0, 500, 0)
    assert const.tail == 0 and const.verdict == "pass"


# pmac


def test_pmac_examples():
    f = make_cardinality_profile(np.arange(6))
    dist = ProductDistribution.uniform(5)
    assert pmac_evaluate(_ExactHypothesis(f), f, dist, 1.0, 500, 0).coverage == 1.0
    assert pmac_from_values(np.zeros(10), np.ones(10), 2.0).coverage == 0.0


class _ExactHypothesis:
    def __init__(self, f):
        self.f = f

    def evaluate_many(self, X):
        return self.f.evaluate_many(X)


def test_realized_factors():
    out = realized_factors(np.array([1.0, 2.0, 3.0, 0.0]), np.array([2.0, 2.0, 1.0, 0.0]))
    assert out.tolist() == [2.0, 1.0, math.inf, 1.0]


def test_pmac_learned_identity():
    from submodlearn.learners import separator_sample_size, learn_general

    n = 8
    f = make_cardinality_profile(np.arange(n + 1))
    dist = ProductDistribution.uniform(n)
    X = dist.sample_matrix(separator_sample_size(n, 0.1, 0.1), 0)
    h = learn_general((X, f.evaluate_many(X)), 0)
    assert pmac_evaluate(h, f, dist, math.sqrt(n + 1), 5000, 1).coverage >= 0.9


# characterization


def test_identity_curve_is_exact():
    c = characterization_curve(make_cardinality_profile(np.arange(31)), 20, 0)
    assert np.allclose(c.h_hat, np.arange(31))
    assert c.min_coverage == 1.0
    assert c.concavity_excess <= 0


def test_truncated_curve_matches_binomial_oracle():
    n, cap = 40, 10
    c = characterization_curve(make_cardinality_profile(np.minimum(np.arange(n + 1), cap)), 5, 0)
    for k in (5, 10, 20, 35):
        exact = float(np.sum(binom.pmf(np.arange(n + 1), n, k / n) * np.minimum(np.arange(n + 1), cap)))
        assert c.h_hat[k] == pytest.approx(exact)
    assert c.concavity_excess <= 0


def test_family_mb_curve_has_full_coverage():
    entry = [e for e in small_matroid_corpus(0) if e.name == "family-MB-rank"][0]
    c = characterization_curve(entry.f, 100, 0)
    assert c.min_coverage >= 0.9


# corpus


def test_small_corpus_is_matroid_rank():
    for e in small_matroid_corpus(0):
        assert check_properties(e.f).all_matroid_rank_properties, e.name


def test_large_corpus_sampled_properties():
    corpus = large_corpus(200, 0, mb_params=(16, 64, 6, 4, 2))
    assert len(corpus) >= 10
    for e in corpus:
        rep = check_properties(e.f, Sampled(200, 0))
        assert rep.monotone and rep.submodular and rep.lipschitz_constant <= 1 + 1e-9, e.name


def test_named_targets():
    for name in ("free", "uniform", "partition", "coverage"):
        assert named_target(name, 12, 0).n == 12
    with pytest.raises(ValueError):
        named_target("bogus", 5)


# lower bound


def test_factor_miss_threshold_inclusive():
    phi = math.sqrt(16 / 4)
    assert factor_miss(np.array([8.0]), np.array([16.0]), phi)[0]
    assert not factor_miss(np.array([9.0]), np.array([16.0]), phi)[0]
    assert factor_miss(np.array([0.0]), np.array([4.0]), phi)[0]


def test_full_training_allows_exact_memorizer():
    r = lower_bound_experiment(8, 64, 6, 3, 2, learner=memorizing_learner(3, 6), train_size=400, seed=1)
    assert r.train_coverage == 1.0 and r.miss_fraction == 0.0


def test_unseen_sets_are_missed_half_the_time():
    excess = [
        lower_bound_experiment(64, 256, 8, 6, 2, learner=memorizing_learner(6, 8), train_size=16, seed=s).excess
        for s in range(20)
    ]
    assert np.mean(excess) >= -3 * np.std(excess, ddof=1) / math.sqrt(20)


def test_single_value_misses_one_world():
    g = BipartiteNeighborhoods(2, 8, 4, ((0, 1, 2, 3), (4, 5, 6, 7)))
    low, high = build_family_MB(g, 2, 4, 2, [0, 1]), build_family_MB(g, 2, 4, 2, [])
    for v in (1.0, 2.0, math.sqrt(8), 4.0):
        misses = [factor_miss(np.array([v]), np.array([float(m.rank(m.A(0)))]), math.sqrt(2))[0] for m in (low, high)]
        assert any(misses)


# hardness


def test_constrained_min_examples():
    g = BipartiteNeighborhoods(2, 6, 3, ((0, 1, 2), (3, 4, 5)))
    r = constrained_min_demo(build_family_MB(g, 2, 3, 2, [0]))
    assert r.exhaustive and r.minimum == 2 == r.predicted
    r = constrained_min_demo(build_family_MB(g, 2, 3, 2, []))
    assert r.minimum == 3 == r.predicted


def test_st_cut_examples():
    edges, paths = path_graph(2, 6)
    assert len(edges) == 6 and all(len(p) == 3 for p in paths)
    assert is_st_cut(edges, (1 << paths[0][1]) | (1 << paths[1][2]))
    assert not is_st_cut(edges, 1 << paths[0][0])
    inst = st_cut_instance(2, 6, 0)
    assert inst.result.checked == 9 and inst.result.matches
    inst = st_cut_instance(2, 6, 0, B=())
    assert inst.result.minimum == 2


def test_vertex_cover_examples():
    inst = vertex_cover_instance(8, 0.2, seed=0)
    assert inst.result.checked == 16 and inst.oracle_agrees and inst.result.matches
    free = vertex_cover_instance(12, 0.2, k=0)
    assert free.result.minimum == 6
    inst = vertex_cover_instance(32, 0.2, seed=0)
    assert inst.ratio > 4 / 3 - 0.2


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**31))
def test_st_cut_transversals_are_cuts(seed):
    rng = np.random.default_rng(seed)
    edges, paths = path_graph(3, 9)
    picks = sum(1 << int(rng.choice(p)) for p in paths)
    assert is_st_cut(edges, picks)
    assert not is_st_cut(edges, picks & ~(1 << int(rng.choice([e for e in range(9) if picks >> e & 1]))))


# artifacts


def test_artifacts_are_reproducible(tmp_path):
    for sub in ("a", "b"):
        write_artifacts(tmp_path / sub, "demo", 7, {"n": 3}, {"ok": True}, {"rows": (["x", "y"], [[1, 2.5], [2, 3.0]])})
    a = (tmp_path / "a" / "demo_7_rows.csv").read_text()
    assert a == (tmp_path / "b" / "demo_7_rows.csv").read_text()
    manifest = json.loads((tmp_path / "a" / "demo_7_manifest.json").read_text())
    assert manifest["verdicts"] == {"ok": True} and manifest["csv"][0]["rows"] == 2
