"""Command-line entry point.

Every command takes ``--config PATH`` (JSON), ``--seed``, ``--out`` and
``--threads`` plus one flag per schema key; flags override the config file.
Exit status: 0 success, 1 a checked property was violated, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import learners as L
from .core import EXHAUSTIVE_LIMIT, check_properties, function_from_json
from .expanders import (
    ExpansionParams,
    sample_expander,
    sample_partitioned_expander,
    verify_expansion,
)
from .experiments import artifacts
from .experiments.characterization import characterization_curve
from .experiments.concentration import exact_profile_tails, mean_check_from_values, tail_check_from_values
from .experiments.corpus import TARGETS, large_corpus, named_target
from .experiments.distributions import ProductDistribution
from .experiments.hardness import constrained_min_demo, st_cut_instance, vertex_cover_instance
from .experiments.lower_bound import lower_bound_experiment
from .experiments.pmac import pmac_evaluate
from .matroids import (
    ConstraintFamily,
    build_family_MB,
    build_pairwise,
    build_truncated,
    build_uncrossed,
    check_matroid_axioms,
    check_uncrossing,
    family_mb_from_json,
    g_value,
    is_dtau_large,
    partition_matroid,
    spec_from_json,
    spec_to_json,
    theorem_defaults,
)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Key:
    type: type
    default: object
    help: str
    source: str = "artifact setting"


def _list(x):
    if isinstance(x, str):
        return json.loads(x)
    return list(x)


def _bool(x):
    if isinstance(x, bool):
        return x
    if str(x).lower() in ("1", "true", "yes"):
        return True
    if str(x).lower() in ("0", "false", "no"):
        return False
    raise ValueError(f"not a boolean: {x!r}")


SCHEMAS: dict[str, dict[str, Key]] = {
    "gen-matroid": {
        "kind": Key(str, "family-MB", "family-MB | full-uncrossed | truncated | pairwise | partition"),
        "n": Key(int, 512, "ground size"),
        "k": Key(int, 64, "number of planted sets (family-MB)"),
        "d": Key(int, 16, "planted set size and cardinality cap"),
        "b": Key(int, 10, "common capacity; theorem default is 8 log k", "matroid construction, b = 8 log k"),
        "tau": Key(int, 3, "truncation threshold; theorem default d / (4 log k)", "matroid construction, tau = d/(4 log k)"),
        "B": Key(str, "random", "marked indices as a JSON list, or 'random'"),
        "sets": Key(_list, None, "explicit sets A_i (JSON list of lists) for non family-MB kinds"),
        "caps": Key(_list, None, "explicit capacities b_i"),
        "log_base": Key(float, 2.0, "log base for theorem defaults", "planted-set proofs use k = 2^t"),
        "theorem_defaults": Key(_bool, False, "print the asymptotic defaults for n, k into the manifest"),
        "verify_L": Key(int, 4, "expansion check: largest left set"),
        "verify_epsilon": Key(float, 0.25, "expansion check: slack"),
    },
    "check-matroid": {
        "instance": Key(str, None, "matroid instance JSON path"),
        "limit": Key(int, EXHAUSTIVE_LIMIT, "exhaustive ground-size limit"),
    },
    "gen-expander": {
        "k": Key(int, 16, "left vertices"),
        "n": Key(int, 384, "right vertices"),
        "d": Key(int, 6, "left degree"),
        "L": Key(int, 2, "largest left set checked"),
        "epsilon": Key(float, 0.5, "expansion slack"),
        "partitioned": Key(_bool, False, "one neighbor per block of n/d right vertices"),
    },
    "learn": {
        "algorithm": Key(str, "general", "product | general | robust | boolean"),
        "samples": Key(str, None, "CSV of training samples (set,value); drawn from target when absent"),
        "target": Key(str, "free", f"target when sampling: {' | '.join(TARGETS)} or a tabulated JSON path"),
        "n": Key(int, 30, "ground size"),
        "p": Key(float, 0.5, "product-distribution inclusion probability"),
        "ell": Key(int, 0, "sample count; 0 selects the algorithm's bound", "linear-separator bound 48n/eps ln(9n/(delta eps))"),
        "epsilon": Key(float, 0.1, "accuracy"),
        "delta": Key(float, 0.1, "confidence"),
        "alpha": Key(float, 1.0, "robust learner: target is within factor alpha of submodular"),
        "eta": Key(float, 1.0, "product learner: minimum non-zero value"),
    },
    "evaluate": {
        "hypothesis": Key(str, None, "hypothesis JSON path"),
        "target": Key(str, "free", f"{' | '.join(TARGETS)} or a tabulated JSON path"),
        "p": Key(float, 0.5, "product-distribution inclusion probability"),
        "alpha": Key(float, 0.0, "sandwich factor; 0 selects sqrt(n+1)", "linear-separator learner factor sqrt(n+1)"),
        "test_size": Key(int, 10000, "fresh test draws"),
        "epsilon": Key(float, 0.1, "required coverage is 1 - epsilon"),
        "target_seed": Key(int, -1, "seed for random targets; -1 reuses --seed"),
    },
    "concentration": {
        "n": Key(int, 1000, "ground size of the profile functions"),
        "p": Key(float, 0.5, "inclusion probability"),
        "trials": Key(int, 10000, "draws per function"),
        "t_values": Key(_list, [1, 2, 3, 4], "t grid, with b the empirical median"),
        "alpha": Key(float, 1.0, "relative deviation for the mean tail", "mean tail needs E f >= 240/alpha"),
    },
    "characterize": {
        "n": Key(int, 120, "ground size of the profile functions"),
        "samples_per_k": Key(int, 200, "uniform draws per set size"),
        "epsilon": Key(float, 0.1, "band failure rate"),
        "c_low": Key(float, 400.0, "lower band constant", "small-h case of the characterization proof"),
        "c_high": Key(float, 2000.0, "upper band constant", "small-h case of the characterization proof"),
    },
    "lower-bound": {
        "k": Key(int, 256, "planted sets"),
        "n": Key(int, 512, "ground size"),
        "d": Key(int, 16, "planted set size"),
        "b": Key(int, 10, "low rank"),
        "tau": Key(int, 2, "truncation threshold"),
        "train_size": Key(int, 64, "training draws"),
        "runs": Key(int, 20, "independent runs"),
    },
    "hardness": {
        "problem": Key(str, "sfmcc", "sfmcc | stcut | vertexcover"),
        "n": Key(int, 12, "ground size"),
        "d": Key(int, 4, "planted set size / number of paths"),
        "k": Key(int, 4, "planted sets"),
        "b": Key(int, 2, "low rank"),
        "tau": Key(int, 2, "truncation threshold"),
        "B": Key(str, "random", "marked indices as a JSON list, or 'random'"),
        "epsilon": Key(float, 0.2, "vertex cover slack", "vertex cover: b = ceil((3+eps) n/8), d = n/2"),
    },
}

COMMON = {
    "seed": Key(int, 0, "64-bit seed, recorded in every manifest"),
    "out": Key(str, "runs", "output directory"),
    "threads": Key(int, 1, "worker cap (all commands run single-threaded)"),
}


def describe(command: str) -> str:
    if command not in SCHEMAS:
        raise UsageError(f"unknown command {command!r}")
    lines = [f"{command} parameters:"]
    for name, key in {**SCHEMAS[command], **COMMON}.items():
        lines.append(f"  {name:<18} default={key.default!r:<14} {key.help}  [{key.source}]")
    if command == "learn":
        lines.append("  sample-count formula: ell = ceil(48 n / eps * ln(9 n / (delta eps)))")
    if command == "gen-matroid":
        lines.append("  theorem defaults: d = n^(1/3), b = 8 log_base(k), tau = d / (4 log_base(k)); log_base defaults to 2")
    return "\n".join(lines)


def resolve_config(command: str, args: argparse.Namespace) -> dict:
    schema = {**SCHEMAS[command], **COMMON}
    cfg = {name: key.default for name, key in schema.items()}
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}")
        if not isinstance(data, dict):
            raise UsageError("config must be a JSON object")
        for name, value in data.items():
            if name not in schema:
                raise UsageError(f"unknown config key {name!r} for {command}")
            cfg[name] = value
    for name in schema:
        value = getattr(args, name, None)
        if value is not None:
            cfg[name] = value
    for name, value in cfg.items():
        if value is None:
            continue
        try:
            cfg[name] = schema[name].type(value)
        except (TypeError, ValueError) as exc:
            raise UsageError(f"bad value for {name!r}: {exc}")
    return cfg


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="submodlearn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for command, schema in SCHEMAS.items():
        p = sub.add_parser(command)
        p.add_argument("--config")
        for name, key in {**schema, **COMMON}.items():
            p.add_argument(f"--{name.replace('_', '-')}", dest=name, default=None, help=key.help)
        if command == "learn":
            p.add_argument("algorithm_pos", nargs="?", choices=("product", "general", "robust", "boolean"))
        if command == "hardness":
            p.add_argument("problem_pos", nargs="?", choices=("sfmcc", "stcut", "vertexcover"))
    d = sub.add_parser("describe")
    d.add_argument("name")
    return parser


# ---------------------------------------------------------------------------
# helpers


def _B(value: str, k: int, rng) -> list[int]:
    if value == "random":
        return np.flatnonzero(rng.random(k) < 0.5).tolist()
    try:
        B = json.loads(value)
    except json.JSONDecodeError:
        raise UsageError(f"B must be 'random' or a JSON list, got {value!r}")
    return [int(i) for i in B]


def _target(name: str, n: int, seed: int):
    if name in TARGETS:
        return named_target(name, n, seed)
    path = Path(name)
    if not path.exists():
        raise UsageError(f"unknown target {name!r}")
    return function_from_json(path.read_text())


def _finish(cfg, name, verdicts, tables=None, extra=None, ok=True) -> int:
    params = {k: v for k, v in cfg.items() if k not in ("out", "seed")}
    path = artifacts.write_artifacts(cfg["out"], name, cfg["seed"], params, verdicts, tables, extra)
    print(path)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# commands


def cmd_gen_matroid(cfg) -> int:
    rng = np.random.default_rng(cfg["seed"])
    out = Path(cfg["out"])
    out.mkdir(parents=True, exist_ok=True)
    extra = {}
    if cfg["theorem_defaults"]:
        extra["theorem_defaults"] = theorem_defaults(cfg["n"], cfg["k"], cfg["log_base"])
    kind = cfg["kind"]
    try:
        if kind == "family-MB":
            graph = sample_expander(cfg["k"], cfg["n"], cfg["d"], cfg["seed"])
            exp = verify_expansion(graph, ExpansionParams(cfg["d"], cfg["verify_L"], cfg["verify_epsilon"]))
            B = _B(cfg["B"], cfg["k"], rng)
            mb = build_family_MB(graph, cfg["b"], cfg["d"], cfg["tau"], B)
            text = mb.to_json()
            verdicts = {"constructed": True, "expansion_verified": exp.ok, "worst_J": list(exp.worst_J)}
        else:
            if cfg["sets"] is None or cfg["caps"] is None:
                raise UsageError(f"kind {kind} needs 'sets' and 'caps'")
            fam = ConstraintFamily.of(cfg["n"], cfg["sets"], cfg["caps"])
            builders = {
                "full-uncrossed": lambda: build_uncrossed(fam),
                "truncated": lambda: build_truncated(fam, cfg["d"], cfg["tau"]),
                "pairwise": lambda: build_pairwise(fam, cfg["d"]),
                "partition": lambda: partition_matroid(fam.n, fam.A, fam.b),
            }
            if kind not in builders:
                raise UsageError(f"unknown matroid kind {kind!r}")
            text = spec_to_json(builders[kind]())
            verdicts = {"constructed": True}
    except ValueError as exc:
        verdicts = {"constructed": False, "error": str(exc)}
        if kind == "family-MB":
            fam = ConstraintFamily.of(cfg["n"], graph.masks(), cfg["b"])
            ok, J = is_dtau_large(fam, cfg["d"], cfg["tau"], indices=B)
            if not ok:
                verdicts["violating_J"] = list(J)
                verdicts["g_J"] = g_value(fam, J)
        elif kind == "truncated":
            ok, J = is_dtau_large(fam, cfg["d"], cfg["tau"])
            if not ok:
                verdicts["violating_J"] = list(J)
        return _finish(cfg, "gen-matroid", verdicts, extra=extra, ok=False)
    path = out / f"matroid_{cfg['seed']}.json"
    path.write_text(text + "\n")
    extra["instance"] = path.name
    return _finish(cfg, "gen-matroid", verdicts, extra=extra)


def cmd_check_matroid(cfg) -> int:
    if not cfg["instance"]:
        raise UsageError("check-matroid needs --instance")
    text = Path(cfg["instance"]).read_text()
    kind = json.loads(text).get("kind")
    try:
        if kind == "family-MB":
            mb = family_mb_from_json(text)
            spec = mb.spec
        else:
            mb = None
            spec = spec_from_json(text)
    except ValueError as exc:
        return _finish(cfg, "check-matroid", {"parsed": False, "error": str(exc)}, ok=False)
    verdicts: dict = {"parsed": True, "n": spec.n}
    ok = True
    if spec.n <= cfg["limit"]:
        ax, wit = check_matroid_axioms(spec, limit=cfg["limit"])
        verdicts["axioms"] = ax
        verdicts["axiom_witness"] = wit
        ok &= ax
        try:
            un, uw = check_uncrossing(spec)
            verdicts["uncrossing"] = un
            verdicts["uncrossing_witness"] = uw
            ok &= un
        except ValueError as exc:
            verdicts["uncrossing"] = f"skipped: {exc}"
        rep = check_properties(spec.rank_function(), limit=cfg["limit"])
        verdicts["rank_properties"] = rep.all_matroid_rank_properties
        ok &= rep.all_matroid_rank_properties
    else:
        verdicts["axioms"] = f"skipped: n={spec.n} exceeds limit {cfg['limit']}"
    if mb is not None:
        bad = [i for i in range(mb.k) if mb.rank(mb.A(i)) != (mb.b if i in set(mb.B) else mb.d)]
        verdicts["rank_dichotomy"] = not bad
        verdicts["dichotomy_failures"] = bad[:10]
        ok &= not bad
    return _finish(cfg, "check-matroid", verdicts, ok=bool(ok))


def cmd_gen_expander(cfg) -> int:
    k, n, d = cfg["k"], cfg["n"], cfg["d"]
    try:
        if cfg["partitioned"]:
            g = sample_partitioned_expander(k, n, d, cfg["seed"])
        else:
            g = sample_expander(k, n, d, cfg["seed"])
    except ValueError as exc:
        raise UsageError(str(exc))
    res = verify_expansion(g, ExpansionParams(d, cfg["L"], cfg["epsilon"]))
    out = Path(cfg["out"])
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"expander_{cfg['seed']}.json"
    path.write_text(g.to_json() + "\n")
    verdicts = {"expansion": res.ok, "worst_J": list(res.worst_J), "worst_size": res.worst_size,
                "worst_ratio": res.worst_ratio, "checked": res.checked}
    return _finish(cfg, "gen-expander", verdicts, extra={"graph": path.name}, ok=res.ok)


def cmd_learn(cfg) -> int:
    algo = cfg["algorithm"]
    if algo not in ("product", "general", "robust", "boolean"):
        raise UsageError(f"unknown algorithm {algo!r}")
    n, seed = cfg["n"], cfg["seed"]
    rng = np.random.default_rng(seed)
    if cfg["samples"]:
        X, y = L.samples_from_csv(Path(cfg["samples"]).read_text(), n)
    else:
        f = _target(cfg["target"], n, seed)
        ell = cfg["ell"] or {
            "product": L.product_sample_size(n, cfg["epsilon"], cfg["delta"]),
            "boolean": L.vc_sample_size(n, cfg["epsilon"], cfg["delta"]),
        }.get(algo, L.separator_sample_size(n, cfg["epsilon"], cfg["delta"]))
        X = ProductDistribution.uniform(n, cfg["p"]).sample_matrix(ell, rng)
        y = f.evaluate_many(X)
    learn_seed = int(rng.integers(2**63))
    try:
        if algo == "product":
            h = L.learn_product((X, y), cfg["epsilon"], eta=cfg["eta"])
        elif algo == "general":
            h = L.learn_general((X, y), learn_seed)
        elif algo == "robust":
            h = L.learn_general_robust((X, y), cfg["alpha"], learn_seed)
        else:
            h = L.learn_boolean((X, y))
    except (ValueError, L.InfeasibleError) as exc:
        return _finish(cfg, f"learn-{algo}", {"learned": False, "error": str(exc)}, ok=False)
    out = Path(cfg["out"])
    out.mkdir(parents=True, exist_ok=True)
    hpath = out / f"hypothesis_{algo}_{seed}.json"
    hpath.write_text(h.to_json() + "\n")
    rows = ((format(sum(1 << int(i) for i in np.flatnonzero(r)), "x"), repr(float(v))) for r, v in zip(X, y))
    return _finish(
        cfg, f"learn-{algo}", {"learned": True, "kind": h.kind, "samples": len(y)},
        tables={"samples": (["set", "value"], rows)}, extra={"hypothesis": hpath.name},
    )


def cmd_evaluate(cfg) -> int:
    if not cfg["hypothesis"]:
        raise UsageError("evaluate needs --hypothesis")
    h = L.Hypothesis.from_json(Path(cfg["hypothesis"]).read_text())
    n = h.n
    tseed = cfg["seed"] if cfg["target_seed"] < 0 else cfg["target_seed"]
    f = _target(cfg["target"], n, tseed)
    alpha = cfg["alpha"] or math.sqrt(n + 1)
    res = pmac_evaluate(h, f, ProductDistribution.uniform(n, cfg["p"]), alpha, cfg["test_size"], cfg["seed"], cfg["epsilon"])
    ok = res.coverage >= 1 - cfg["epsilon"]
    verdicts = {"coverage": res.coverage, "factor_quantile": res.factor_quantile, "alpha": alpha, "pass": ok}
    return _finish(cfg, "evaluate", verdicts, ok=ok)


def cmd_concentration(cfg) -> int:
    rows, ok = [], True
    rng = np.random.default_rng(cfg["seed"])
    for e in large_corpus(cfg["n"], cfg["seed"]):
        X = ProductDistribution.uniform(e.f.n, cfg["p"]).sample_matrix(cfg["trials"], rng)
        v = e.f.evaluate_many(X)
        b = float(np.median(v))
        for t in cfg["t_values"]:
            r = tail_check_from_values(v, b, float(t))
            exact = ""
            if e.profile is not None:
                lo, hi = exact_profile_tails(e.profile, cfg["p"], b, float(t))
                exact = lo * hi
            ok &= r.passed
            rows.append([e.name, "product-tail", b, t, r.lhs_product, r.bound, r.standard_error, exact, r.passed])
        m = mean_check_from_values(v, cfg["alpha"])
        ok &= m.verdict != "fail"
        rows.append([e.name, "mean-tail", m.mean, cfg["alpha"], m.tail, m.bound, m.standard_error, "", m.verdict])
    header = ["function", "check", "b_or_mean", "t_or_alpha", "empirical", "bound", "standard_error", "exact", "verdict"]
    return _finish(cfg, "concentration", {"all_pass": ok}, tables={"tails": (header, rows)}, ok=ok)


def cmd_characterize(cfg) -> int:
    rows, summary, ok = [], [], True
    for e in large_corpus(cfg["n"], cfg["seed"], mb_params=(32, 128, 8, 5, 2)):
        c = characterization_curve(e.f, cfg["samples_per_k"], cfg["seed"], cfg["epsilon"], cfg["c_low"], cfg["c_high"])
        good = c.min_coverage >= 1 - cfg["epsilon"] and c.concavity_excess <= 0
        ok &= good
        summary.append([e.name, e.f.n, c.min_coverage, c.max_second_diff, c.concavity_excess, c.c_needed, good])
        for k in range(e.f.n + 1):
            rows.append([e.name, k, c.h_hat[k], c.h_se[k], "" if k == 0 else c.coverage[k]])
    tables = {
        "curves": (["function", "k", "h_hat", "h_se", "coverage"], rows),
        "summary": (["function", "n", "min_coverage", "max_second_diff", "concavity_excess", "c_needed", "pass"], summary),
    }
    return _finish(cfg, "characterize", {"all_pass": ok}, tables=tables, ok=ok)


def cmd_lower_bound(cfg) -> int:
    rows = []
    seeds = np.random.SeedSequence(cfg["seed"]).generate_state(cfg["runs"], dtype=np.uint64)
    for s in seeds:
        r = lower_bound_experiment(cfg["k"], cfg["n"], cfg["d"], cfg["b"], cfg["tau"], train_size=cfg["train_size"], seed=int(s))
        rows.append([int(s), r.train_coverage, r.miss_fraction, r.unseen_miss_fraction, r.excess])
    ex = np.array([r[-1] for r in rows])
    se = float(ex.std(ddof=1) / math.sqrt(len(ex))) if len(ex) > 1 else 0.0
    ok = bool(ex.mean() >= -3 * se)
    verdicts = {"mean_excess": float(ex.mean()), "standard_error": se, "pass": ok}
    header = ["seed", "train_coverage", "miss_fraction", "unseen_miss_fraction", "excess"]
    return _finish(cfg, "lower-bound", verdicts, tables={"runs": (header, rows)}, ok=ok)


def cmd_hardness(cfg) -> int:
    prob = cfg["problem"]
    rng = np.random.default_rng(cfg["seed"])
    try:
        if prob == "sfmcc":
            for _ in range(100):
                graph = sample_expander(cfg["k"], cfg["n"], cfg["d"], int(rng.integers(2**63)))
                try:
                    mb = build_family_MB(graph, cfg["b"], cfg["d"], cfg["tau"], _B(cfg["B"], cfg["k"], rng))
                    break
                except ValueError:
                    continue
            else:
                return _finish(cfg, "hardness-sfmcc", {"constructed": False}, ok=False)
            res = constrained_min_demo(mb)
            verdicts = {"minimum": res.minimum, "predicted": res.predicted, "match": res.matches,
                        "exhaustive": res.exhaustive, "argmins": res.argmins}
            ok = res.matches
        elif prob == "stcut":
            B = None if cfg["B"] == "random" else _B(cfg["B"], cfg["k"], rng)
            inst = st_cut_instance(cfg["d"], cfg["n"], cfg["seed"], B=B, k=cfg["k"], b=cfg["b"], tau=cfg["tau"])
            res = inst.result
            verdicts = {"minimum": res.minimum, "predicted": res.predicted, "match": res.matches, "B": list(inst.mb.B)}
            ok = res.matches
        elif prob == "vertexcover":
            inst = vertex_cover_instance(cfg["n"], cfg["epsilon"], cfg["k"], cfg["seed"])
            res = inst.result
            ok = res.matches and (cfg["k"] == 0 or inst.ratio > 4 / 3 - cfg["epsilon"])
            verdicts = {"minimum": res.minimum, "predicted": res.predicted, "b": inst.b, "d": inst.d,
                        "ratio": inst.ratio, "threshold": 4 / 3 - cfg["epsilon"], "pass": ok}
        else:
            raise UsageError(f"unknown problem {prob!r}")
    except ValueError as exc:
        raise UsageError(str(exc))
    return _finish(cfg, f"hardness-{prob}", verdicts, ok=bool(ok))


COMMANDS = {
    "gen-matroid": cmd_gen_matroid,
    "check-matroid": cmd_check_matroid,
    "gen-expander": cmd_gen_expander,
    "learn": cmd_learn,
    "evaluate": cmd_evaluate,
    "concentration": cmd_concentration,
    "characterize": cmd_characterize,
    "lower-bound": cmd_lower_bound,
    "hardness": cmd_hardness,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "describe":
            print(describe(args.name))
            return 0
        if getattr(args, "algorithm_pos", None):
            args.algorithm = args.algorithm_pos
        if getattr(args, "problem_pos", None):
            args.problem = args.problem_pos
        cfg = resolve_config(args.command, args)
        return COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
