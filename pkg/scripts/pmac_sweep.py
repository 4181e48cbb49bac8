"""Linear-separator learner coverage on several targets at the prescribed sample size."""
import argparse
import math

import numpy as np

from submodlearn.experiments.artifacts import write_artifacts
from submodlearn.experiments.corpus import TARGETS, named_target
from submodlearn.experiments.distributions import ProductDistribution
from submodlearn.experiments.pmac import pmac_evaluate
from submodlearn.learners import separator_sample_size, learn_general


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=30)
    ap.add_argument("--epsilon", type=float, default=0.1)
    ap.add_argument("--delta", type=float, default=0.1)
    ap.add_argument("--runs", type=int, default=10)
    ap.add_argument("--targets", nargs="+", default=list(TARGETS), choices=TARGETS)
    ap.add_argument("--test-size", type=int, default=10000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="runs")
    a = ap.parse_args()
    ell = separator_sample_size(a.n, a.epsilon, a.delta)
    alpha = math.sqrt(a.n + 1)
    rows = []
    for t_idx, name in enumerate(a.targets):
        for run in range(a.runs):
            rng = np.random.default_rng([a.seed, t_idx, run])
            f = named_target(name, a.n, int(rng.integers(2**32)))
            dist = ProductDistribution(tuple(rng.uniform(0.2, 0.8, size=a.n)))
            X = dist.sample_matrix(ell, rng)
            h = learn_general((X, f.evaluate_many(X)), int(rng.integers(2**32)))
            res = pmac_evaluate(h, f, dist, alpha, a.test_size, rng, a.epsilon)
            rows.append([name, run, res.coverage, res.factor_quantile])
        cov = [r[2] for r in rows if r[0] == name]
        print(f"{name:<10} mean coverage {np.mean(cov):.4f}  runs >= {1 - a.epsilon}: {sum(c >= 1 - a.epsilon for c in cov)}/{a.runs}")
    good = sum(r[2] >= 1 - a.epsilon for r in rows) / len(rows)
    verdicts = {"ell": ell, "alpha": alpha, "fraction_of_runs_passing": good}
    print(write_artifacts(a.out, "pmac-sweep", a.seed, vars(a), verdicts, {"runs": (["target", "run", "coverage", "factor_quantile"], rows)}))


if __name__ == "__main__":
    main()
