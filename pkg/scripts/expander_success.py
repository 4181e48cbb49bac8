"""Success frequency of the random expander construction over a grid of k."""
import argparse
import math

from submodlearn.expanders import sampling_hypotheses_hold, success_rate
from submodlearn.experiments.artifacts import write_artifacts


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ks", type=int, nargs="+", default=[8, 16, 32])
    ap.add_argument("--epsilon", type=float, default=0.5)
    ap.add_argument("--L", type=int, default=2)
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="runs")
    a = ap.parse_args()
    rows = []
    for k in a.ks:
        d = math.ceil(math.log(k) / a.epsilon)
        n = math.ceil(16 * a.L * d / a.epsilon)
        sr = success_rate(k, n, d, a.L, a.epsilon, a.trials, a.seed)
        target = 1 - 2 / k
        rows.append([k, n, d, sr.successes, sr.trials, sr.lower, target, sr.lower >= target])
        print(f"k={k:>3} n={n:>5} d={d:>2}  {sr.successes}/{sr.trials}  lower={sr.lower:.4f}  target={target:.4f}")
    verdicts = {"all_pass": all(r[-1] for r in rows), "hypotheses": all(sampling_hypotheses_hold(r[0], r[1], r[2], a.L, a.epsilon) for r in rows)}
    header = ["k", "n", "d", "successes", "trials", "wilson_lower", "target", "pass"]
    print(write_artifacts(a.out, "expander-success", a.seed, vars(a), verdicts, {"rates": (header, rows)}))


if __name__ == "__main__":
    main()
