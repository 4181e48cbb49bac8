"""Miss fraction on planted sets versus training size, for the learner and a memorizing baseline."""
import argparse
import math

import numpy as np

from submodlearn.experiments.artifacts import write_artifacts
from submodlearn.experiments.lower_bound import lower_bound_experiment, memorizing_learner


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=256)
    ap.add_argument("--n", type=int, default=512)
    ap.add_argument("--d", type=int, default=16)
    ap.add_argument("--b", type=int, default=10)
    ap.add_argument("--tau", type=int, default=2)
    ap.add_argument("--train-sizes", type=int, nargs="+", default=[16, 64, 256])
    ap.add_argument("--runs", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="runs")
    a = ap.parse_args()
    rows = []
    for m in a.train_sizes:
        for label, learner in (("separator", None), ("memorizer", memorizing_learner(a.b, a.d))):
            ex = []
            for s in range(a.runs):
                kw = {"learner": learner} if learner else {}
                r = lower_bound_experiment(a.k, a.n, a.d, a.b, a.tau, train_size=m, seed=a.seed * 10007 + s, **kw)
                ex.append(r.excess)
                rows.append([m, label, s, r.train_coverage, r.miss_fraction, r.excess])
            se = np.std(ex, ddof=1) / math.sqrt(len(ex)) if len(ex) > 1 else 0.0
            print(f"train={m:>4} {label:<10} excess {np.mean(ex):+.3f} (SE {se:.3f})")
    header = ["train_size", "learner", "run", "train_coverage", "miss_fraction", "excess"]
    verdicts = {"min_mean_excess": min(np.mean([r[5] for r in rows if r[0] == m and r[1] == "separator"]) for m in a.train_sizes)}
    print(write_artifacts(a.out, "lower-bound-sweep", a.seed, vars(a), verdicts, {"runs": (header, rows)}))


if __name__ == "__main__":
    main()
