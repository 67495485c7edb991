"""Command-line front end.

Exit codes: 0 computed / holds, 1 property fails, 2 usage error,
3 budget or capacity exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import approximation, duality, generators, hom, ops, sparsity
from .errors import (ArgumentError, BudgetExceeded, CapacityError, ConstructionError,
                     HomlabError, ParseError, PreconditionError)
from .fileio import resolve, write_structure
from .named import NAME_HELP
from .structures import Digraph, Graph, Structure

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class _Usage(Exception):
    pass


def _shape(s: Structure) -> dict:
    out = {"order": s.n}
    if isinstance(s, Graph):
        out["edges"] = " ".join(f"{u}-{v}" for u, v in s.edges)
    elif isinstance(s, Digraph):
        out["arcs"] = " ".join(f"{u}>{v}" for u, v in s.arcs)
    else:
        for (name, _), ts in zip(s.sig.symbols, s.relations):
            out[f"rel_{name}"] = " ".join("(" + ",".join(map(str, t)) + ")" for t in sorted(ts))
    return out


def _prefixed(prefix: str, s: Structure) -> dict:
    return {f"{prefix}_{k}" if k != "order" else f"{prefix}_order": v for k, v in _shape(s).items()}


def _fmt(v):
    if isinstance(v, float) and v == float("inf"):
        return "inf"
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return " ".join(map(str, v))
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _jsonable(v):
    if isinstance(v, float) and v == float("inf"):
        return "inf"
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, tuple):
        return list(v)
    return v


def _cfg(args) -> hom.HomSearchConfig:
    if args.budget is not None:
        return hom.HomSearchConfig(node_budget=args.budget)
    return hom.HomSearchConfig()


def _universe(spec: str, seed):
    kind = spec.split(":", 1)[0]
    if generators._ALIASES.get(kind, kind) == "random_high_girth" and "seed=" not in spec:
        if seed is None:
            raise ArgumentError("randomised universes need --seed or seed=<n>")
        spec = f"{spec},seed={seed}"
    return generators.enumerate_sample(generators.GeneratorSpec.parse(spec))


def _maybe_write(args, s: Structure, report: dict):
    if getattr(args, "out", None):
        write_structure(args.out, s)
        report["written"] = args.out


# --- verbs ------------------------------------------------------------------------

def cmd_hom(args, cfg):
    a, b = resolve(args.source), resolve(args.target)
    w = hom.hom_exists(a, b, cfg)
    if w is None:
        return EXIT_FAIL, {"hom": "none"}
    return EXIT_OK, {"hom": "found", "map": list(w.map)}


def cmd_count(args, cfg):
    return EXIT_OK, {"count": hom.hom_count(resolve(args.source), resolve(args.target), cfg)}


def cmd_core(args, cfg):
    a = resolve(args.graph)
    res = hom.core(a, cfg)
    report = {"core_order": res.core.n, "image": list(res.image), "retraction": list(res.retraction.map)}
    report.update(_prefixed("core", res.core))
    _maybe_write(args, res.core, report)
    return EXIT_OK, report


def cmd_chromatic(args, cfg):
    g = _as_graph(resolve(args.graph))
    return EXIT_OK, {"chi": hom.chromatic_number(g, cfg), "omega": hom.clique_number(g, cfg)}


def _as_graph(s):
    if not isinstance(s, Graph):
        raise ArgumentError("this command needs an undirected graph")
    return s


def cmd_girth(args, cfg):
    g = _as_graph(resolve(args.graph))
    return EXIT_OK, {"girth": sparsity.girth(g), "odd_girth": sparsity.odd_girth(g)}


def cmd_treedepth(args, cfg):
    return EXIT_OK, {"treedepth": sparsity.tree_depth(_as_graph(resolve(args.graph)))}


def cmd_chit(args, cfg):
    g = _as_graph(resolve(args.graph))
    col = sparsity.low_td_coloring(g, args.t)
    exact = g.n <= sparsity.CHI_T_CAP and args.t <= sparsity.CHI_T_MAX_T
    return EXIT_OK, {"chi_t": col.color_count, "t": args.t, "exact": exact, "coloring": list(col.colors)}


def cmd_grade(args, cfg):
    g = _as_graph(resolve(args.graph))
    value = sparsity.grade(g, sparsity.DepthParam(args.s), args.measure, args.max_order, cfg)
    return EXIT_OK, {"grade": value, "measure": args.measure, "s": args.s, "max_order": args.max_order}


def cmd_subdivide(args, cfg):
    g = ops.subdivide(_as_graph(resolve(args.graph)), args.k)
    report = _shape(g)
    _maybe_write(args, g, report)
    return EXIT_OK, report


def cmd_product(args, cfg):
    a, b = resolve(args.a), resolve(args.b)
    p = ops.categorical_product(a, b)
    if isinstance(a, Graph) and isinstance(b, Graph):
        p = Graph.from_structure(p)
    report = _shape(p)
    _maybe_write(args, p, report)
    return EXIT_OK, report


def cmd_gaifman(args, cfg):
    g = ops.gaifman(resolve(args.structure))
    report = _shape(g)
    _maybe_write(args, g, report)
    return EXIT_OK, report


def cmd_incidence(args, cfg):
    g = ops.incidence(resolve(args.structure))
    report = _shape(g)
    _maybe_write(args, g, report)
    return EXIT_OK, report


def _read_job(path):
    job = {"family": [], "dual": None, "universe": None, "budget": None}
    base = Path(path).parent
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise ArgumentError(f"cannot read job file {path}: {exc.strerror}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "family":
            job["family"].extend(_job_path(base, p) for p in rest.split())
        elif key == "dual":
            job["dual"] = _job_path(base, rest)
        elif key == "universe":
            job["universe"] = rest
        elif key == "budget":
            if not rest.isdigit():
                raise ParseError("budget must be a positive integer", line=lineno, path=str(path))
            job["budget"] = int(rest)
        else:
            raise ParseError(f"unknown job key {key!r}", line=lineno, path=str(path))
    return job


def _job_path(base, p):
    cand = base / p
    return str(cand) if cand.exists() else p


def _duality_inputs(args):
    job = _read_job(args.job) if args.job else {"family": [], "dual": None, "universe": None, "budget": None}
    family = args.family or job["family"]
    dual = args.dual or job["dual"]
    universe = args.universe or job["universe"]
    if not family or universe is None:
        raise _Usage("need a family and a universe (flags or job file)")
    budget = args.budget if args.budget is not None else job["budget"]
    cfg = hom.HomSearchConfig(node_budget=budget) if budget else hom.HomSearchConfig()
    return [resolve(f) for f in family], (resolve(dual) if dual else None), _universe(universe, args.seed), cfg


def _verdict_report(v, elapsed):
    report = {"verdict": "holds" if v.holds else "fails", "scope": v.scope}
    if not v.holds:
        report["direction"] = v.direction
        report.update(_prefixed("counterexample", v.counterexample))
        if v.witness is not None:
            report["witness"] = list(v.witness.map)
    if "family_to_dual" in v.details:
        report["family_maps_to_dual"] = bool(v.details["family_to_dual"])
    report["time_s"] = round(elapsed, 3)
    return report


def cmd_duality_verify(args, cfg):
    family, dual, universe, cfg = _duality_inputs(args)
    if dual is None:
        raise _Usage("duality-verify needs a dual")
    t0 = time.perf_counter()
    v = duality.verify_duality(duality.DualityInstance(family, dual), universe, cfg)
    return (EXIT_OK if v.holds else EXIT_FAIL), _verdict_report(v, time.perf_counter() - t0)


def cmd_duality_minimize(args, cfg):
    family, dual, universe, cfg = _duality_inputs(args)
    if dual is None:
        raise _Usage("duality-minimize needs a dual")
    inst = duality.minimize_family(duality.DualityInstance(family, dual), universe, cfg)
    report = {"scope": universe.description, "family_size": len(inst.family)}
    for i, f in enumerate(inst.family):
        report.update(_prefixed(f"member{i}", f))
    return EXIT_OK, report


def cmd_dual_construct(args, cfg):
    family, _, universe, cfg = _duality_inputs(args)
    t = args.t if args.t is not None else max(f.n for f in family) + 1
    d = duality.dual_construct(family, universe, t, cfg)
    report = {"scope": universe.description, "t": t}
    report.update(_prefixed("dual", d))
    _maybe_write(args, d, report)
    return EXIT_OK, report


def cmd_approx(args, cfg):
    a = resolve(args.structure)
    res, trace = approximation.quotient_approximation(a, args.t, cfg)
    report = {"t": args.t, "colors": trace.coloring.color_count, "forward": list(res.forward.map)}
    report.update(_prefixed("approx", res.approx))
    if args.trace:
        report["trace"] = trace.to_text()
    _maybe_write(args, res.approx, report)
    return EXIT_OK, report


def cmd_theta(args, cfg):
    a = resolve(args.structure)
    res = approximation.theta_oracle(a, args.t, args.max_order, cfg)
    if res is None:
        return EXIT_FAIL, {"theta": "not found", "max_order": args.max_order}
    report = {"theta": res.order, "t": args.t, "forward": list(res.forward.map)}
    report.update(_prefixed("approx", res.approx))
    return EXIT_OK, report


def cmd_generate(args, cfg):
    sample = _universe(args.spec, args.seed)
    report = {"scope": sample.description, "count": len(sample), "flags": sorted(sample.flags)}
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for i, m in enumerate(sample):
            write_structure(out / f"{i:05d}.g", m)
        report["written"] = str(out)
    return EXIT_OK, report


def cmd_ghrv(args, cfg):
    inst = duality.ghrv_instance(args.k)
    universe = generators.enumerate_sample(generators.GeneratorSpec("all_digraphs", args.max_order))
    t0 = time.perf_counter()
    v = duality.verify_duality(inst, universe, cfg)
    report = {"k": args.k}
    report.update(_verdict_report(v, time.perf_counter() - t0))
    return (EXIT_OK if v.holds else EXIT_FAIL), report


def cmd_experiment_oddgirth(args, cfg):
    sample = _universe(args.universe, args.seed)
    v, h = generators.odd_girth_criterion_experiment(sample, args.g, args.t, cfg)
    report = _verdict_report(v, 0.0)
    report.pop("time_s")
    report.update(_prefixed("dual", h))
    return (EXIT_OK if v.holds else EXIT_FAIL), report


# --- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON object")
    common.add_argument("--budget", type=int, help="search node budget (default: $HOMLAB_BUDGET)")
    common.add_argument("--seed", type=int, help="seed for randomised universes")

    p = argparse.ArgumentParser(prog="homlab", description="Homomorphisms, sparsity and restricted dualities.",
                                epilog="Graph arguments are file paths or built-in names: " + NAME_HELP)
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    for name, fn, h in (("hom", cmd_hom, "find a homomorphism"), ("count", cmd_count, "count homomorphisms")):
        sp = verb(name, fn, h)
        sp.add_argument("source")
        sp.add_argument("target")
    for name, fn, h in (("core", cmd_core, "core and retraction"), ("chromatic", cmd_chromatic, "chromatic and clique number"),
                        ("girth", cmd_girth, "girth and odd girth"), ("treedepth", cmd_treedepth, "exact tree-depth")):
        sp = verb(name, fn, h)
        sp.add_argument("graph")
        if name == "core":
            sp.add_argument("--out")
    sp = verb("chit", cmd_chit, "low tree-depth colouring")
    sp.add_argument("graph")
    sp.add_argument("--t", type=int, required=True)
    sp = verb("grade", cmd_grade, "shallow topological minor grade")
    sp.add_argument("graph")
    sp.add_argument("--s", type=int, required=True, help="max internal vertices per edge (2p)")
    sp.add_argument("--measure", choices=("omega", "chi", "avg_degree"), required=True)
    sp.add_argument("--max-order", type=int, default=sparsity.MINOR_CAP)
    sp = verb("subdivide", cmd_subdivide, "k-subdivision")
    sp.add_argument("graph")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--out")
    sp = verb("product", cmd_product, "categorical product")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--out")
    for name, fn in (("gaifman", cmd_gaifman), ("incidence", cmd_incidence)):
        sp = verb(name, fn, f"{name} graph")
        sp.add_argument("structure")
        sp.add_argument("--out")
    for name, fn, h in (("duality-verify", cmd_duality_verify, "verify a restricted duality"),
                        ("duality-minimize", cmd_duality_minimize, "minimise a forbidden family"),
                        ("dual-construct", cmd_dual_construct, "construct a restricted dual")):
        sp = verb(name, fn, h)
        sp.add_argument("job", nargs="?", help="job file with family/dual/universe/budget lines")
        sp.add_argument("--family", nargs="+")
        sp.add_argument("--dual")
        sp.add_argument("--universe")
        if name == "dual-construct":
            sp.add_argument("--t", type=int)
            sp.add_argument("--out")
    sp = verb("approx", cmd_approx, "quotient t-approximation")
    sp.add_argument("structure")
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--trace", action="store_true")
    sp.add_argument("--out")
    sp = verb("theta", cmd_theta, "exact Theta^t by enumeration")
    sp.add_argument("structure")
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--max-order", type=int, default=5)
    sp = verb("generate", cmd_generate, "enumerate a class sample")
    sp.add_argument("spec")
    sp.add_argument("--out-dir")
    sp = verb("ghrv", cmd_ghrv, "verify the path/tournament duality")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--max-order", type=int, default=4)
    sp = verb("experiment-oddgirth", cmd_experiment_oddgirth, "odd-girth dual experiment")
    sp.add_argument("--universe", required=True)
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--t", type=int)
    return p


def _emit(report: dict, as_json: bool, out) -> None:
    if as_json:
        out.write(json.dumps({k: _jsonable(v) for k, v in report.items()}, sort_keys=False) + "\n")
        return
    for k, v in report.items():
        text = _fmt(v)
        if "\n" in text:
            out.write(f"{k}: |\n")
            out.write("".join(f"  {line}\n" for line in text.splitlines()))
        else:
            out.write(f"{k}: {text}\n")


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.budget is not None and args.budget <= 0:
            raise ArgumentError("--budget must be positive")
        code, report = args.fn(args, _cfg(args))
    except (BudgetExceeded, CapacityError) as exc:
        code, report = EXIT_BUDGET, {"error": "resource", "message": str(exc)}
    except (_Usage, ArgumentError, ParseError, PreconditionError) as exc:
        code, report = EXIT_USAGE, {"error": "usage", "message": str(exc)}
    except ConstructionError as exc:
        code, report = EXIT_FAIL, {"error": "construction", "message": str(exc)}
    except HomlabError as exc:
        code, report = EXIT_FAIL, {"error": type(exc).__name__, "message": str(exc)}
    if "error" in report and not args.json:
        err.write(f"homlab: {report['message']}\n")
    _emit(report, args.json, out)
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))
