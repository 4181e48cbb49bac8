"""Brute-force optima of the hardness instances against their predicted values."""
import argparse

from submodlearn.experiments.artifacts import write_artifacts
from submodlearn.experiments.hardness import ratio_threshold, st_cut_instance, vertex_cover_instance


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--vc-sizes", type=int, nargs="+", default=[8, 16, 24, 32])
    ap.add_argument("--epsilons", type=float, nargs="+", default=[0.2, 0.25])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="runs")
    a = ap.parse_args()
    cut_rows, vc_rows = [], []
    for d, n in ((2, 6), (3, 9), (3, 12), (4, 16)):
        for s in range(a.seeds):
            for B in (None, ()):
                inst = st_cut_instance(d, n, a.seed + s, B=B)
                r = inst.result
                cut_rows.append([d, n, s, len(inst.mb.B), r.minimum, r.predicted, r.checked, r.matches])
    for n in a.vc_sizes:
        for eps in a.epsilons:
            inst = vertex_cover_instance(n, eps, seed=a.seed)
            vc_rows.append([n, eps, inst.b, inst.d, inst.result.minimum, inst.ratio, ratio_threshold(eps), inst.ratio > ratio_threshold(eps)])
            print(f"vertex cover n={n:>2} eps={eps}: min {inst.result.minimum} (b={inst.b}, d={inst.d}) ratio {inst.ratio:.3f}")
    verdicts = {"stcut_matches": all(r[-1] for r in cut_rows), "vc_matches": all(r[4] == r[2] for r in vc_rows)}
    print(f"s-t cut instances matching prediction: {sum(r[-1] for r in cut_rows)}/{len(cut_rows)}")
    tables = {
        "stcut": (["d", "n", "run", "marked", "minimum", "predicted", "checked", "match"], cut_rows),
        "vertexcover": (["n", "epsilon", "b", "d", "minimum", "ratio", "threshold", "ratio_pass"], vc_rows),
    }
    print(write_artifacts(a.out, "hardness-sweep", a.seed, vars(a), verdicts, tables))


if __name__ == "__main__":
    main()
