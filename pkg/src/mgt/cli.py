"""Command-line front end: exact results as canonical rationals, JSON, or CSV."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import fileio
from .circuit import resistance, voltage
from .errors import InputError, MgtError
from .graph import MetrizedGraph, PointOnGraph, normalize, subdivide_uniform
from .integration import apq_direct
from .optimize import family_scan, minimize_tau, scan_violations
from .ops import (
    add_edge,
    c_tower,
    contract_edge,
    da_n,
    delete_edge,
    identify_points,
    immerse_any,
    union_one_point,
    union_two_points,
)
from .rational import format_float, format_scalar, parse_scalar
from .suite import GraphGenerator, run_graph_checks, run_suite
from .tau import apq_checked, apq_identity, canonical_measure, lower_bound_suite, tau_edge_sum, tau_gradient

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_INPUT = 3


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.run(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MgtError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mgt", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    def cmd(name, run, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(run=run)
        return p

    p = cmd("tau", _run_tau, help="tau invariant of a graph")
    p.add_argument("file")
    p.add_argument("--per-edge", action="store_true")
    p.add_argument("--base", type=int, default=0)
    _output_flags(p)

    p = cmd("resistance", _run_resistance, help="effective resistance between two points")
    p.add_argument("file")
    p.add_argument("p")
    p.add_argument("q")
    _output_flags(p)

    p = cmd("voltage", _run_voltage, help="voltage j_x(p,q)")
    p.add_argument("file")
    p.add_argument("x")
    p.add_argument("p")
    p.add_argument("q")
    _output_flags(p)

    p = cmd("apq", _run_apq, help="the voltage integral between two vertices")
    p.add_argument("file")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--method", choices=("direct", "identity", "both"), default="identity")
    _output_flags(p)

    p = cmd("mucan", _run_mucan, help="canonical measure: vertex masses and edge densities")
    p.add_argument("file")
    _output_flags(p)

    p = cmd("gradient", _run_gradient, help="exact tau derivatives in each edge length")
    p.add_argument("file")
    _output_flags(p)

    p = cmd("bounds", _run_bounds, help="evaluate the closed-form tau bounds")
    p.add_argument("file")
    _output_flags(p)

    p = cmd("verify", _run_verify, help="run the identity suite")
    p.add_argument("file", nargs="?")
    p.add_argument("--suite", default="all", help="all or comma-separated identity ids")
    p.add_argument("--random", action="store_true")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--json", action="store_true")

    p = cmd("minimize", _run_minimize, help="projected gradient descent on edge lengths")
    p.add_argument("file")
    p.add_argument("--iters", type=int, default=500)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--restarts", type=int, default=0)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--json", action="store_true")

    p = cmd("scan", _run_scan, help="closed-form family scan, CSV on stdout")
    p.add_argument("--family", required=True, choices=("complete", "banana", "necklace", "circle"))
    p.add_argument("--params", default="", help="key=lo..hi or key=a,b,c (family specific)")

    p = cmd("op", _run_op, help="apply a tau-transforming operation")
    p.add_argument("name", choices=(
        "delete", "contract", "identify", "add-edge", "union1", "union2",
        "da-n", "subdivide", "immerse", "tower",
    ))
    p.add_argument("args", nargs="*")
    p.add_argument("-o", "--out", default=None)
    p.add_argument("--json", action="store_true")
    return parser


def _output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true")
    p.add_argument("--float", action="store_true", dest="as_float")


def _load(path: str) -> MetrizedGraph:
    return fileio.load_graph(path)


def _fmt(args, value) -> str:
    return format_float(value) if getattr(args, "as_float", False) else format_scalar(value)


def _parse_point(text: str) -> PointOnGraph:
    if ":" in text:
        edge, offset = text.split(":", 1)
        return (int(edge), parse_scalar(offset))
    return int(text)


def _run_tau(args) -> int:
    g = _load(args.file)
    report = tau_edge_sum(g, args.base)
    if args.json:
        doc = {
            "tau": format_scalar(report.tau),
            "length": format_scalar(report.total_length),
            "genus": report.genus,
            "per_edge": [
                {"edge": i, "contribution": format_scalar(c), "R": format_scalar(res)}
                for i, c, res in report.per_edge
            ],
        }
        print(json.dumps(doc))
        return EXIT_OK
    print(_fmt(args, report.tau))
    if args.per_edge:
        for i, c, res in report.per_edge:
            print(f"edge {i}: contribution {_fmt(args, c)} R {format_scalar(res)}")
    return EXIT_OK


def _run_resistance(args) -> int:
    g = _load(args.file)
    value = resistance(g, _parse_point(args.p), _parse_point(args.q))
    print(json.dumps({"resistance": format_scalar(value)}) if args.json else _fmt(args, value))
    return EXIT_OK


def _run_voltage(args) -> int:
    g = _load(args.file)
    value = voltage(g, _parse_point(args.x), _parse_point(args.p), _parse_point(args.q))
    print(json.dumps({"voltage": format_scalar(value)}) if args.json else _fmt(args, value))
    return EXIT_OK


def _run_apq(args) -> int:
    g = _load(args.file)
    if args.method == "direct":
        value = apq_direct(g, args.p, args.q)
    elif args.method == "identity":
        value = apq_identity(g, args.p, args.q) if args.p != args.q else Fraction(0)
    else:
        value = apq_checked(g, args.p, args.q)
    print(json.dumps({"apq": format_scalar(value)}) if args.json else _fmt(args, value))
    return EXIT_OK


def _run_mucan(args) -> int:
    g = _load(args.file)
    mu = canonical_measure(g)
    if args.json:
        print(json.dumps({
            "vertex_masses": [[v, format_scalar(m)] for v, m in mu.vertex_masses],
            "edge_densities": [[i, format_scalar(d)] for i, d in mu.edge_densities],
            "total_mass": format_scalar(mu.total_mass(g)),
        }))
        return EXIT_OK
    for v, m in mu.vertex_masses:
        print(f"vertex {v}: mass {_fmt(args, m)}")
    for i, d in mu.edge_densities:
        print(f"edge {i}: density {_fmt(args, d)}")
    print(f"total mass: {_fmt(args, mu.total_mass(g))}")
    return EXIT_OK


def _run_gradient(args) -> int:
    g = _load(args.file)
    grad = tau_gradient(g)
    if args.json:
        print(json.dumps({
            "gradient": [format_scalar(x) for x in grad.entries],
            "bridges": list(grad.bridge_edges),
        }))
        return EXIT_OK
    for i, x in enumerate(grad.entries):
        flag = " (bridge)" if i in grad.bridge_edges else ""
        print(f"edge {i}: {_fmt(args, x)}{flag}")
    return EXIT_OK


def _run_bounds(args) -> int:
    g = _load(args.file)
    checks = lower_bound_suite(g)
    if args.json:
        print(json.dumps([{
            "bound": c.bound, "applicable": c.applicable, "reason": c.reason,
            "lhs": format_scalar(c.lhs) if c.lhs is not None else None,
            "rhs": format_scalar(c.rhs) if c.rhs is not None else None,
            "relation": c.relation, "holds": c.holds,
        } for c in checks]))
        return EXIT_OK
    for c in checks:
        if not c.applicable:
            print(f"{c.bound}: skipped ({c.reason})")
        else:
            verdict = "ok" if c.holds else "VIOLATED"
            print(f"{c.bound}: {format_scalar(c.lhs)} {c.relation} {format_scalar(c.rhs)} {verdict}")
    return EXIT_OK if all(c.holds is not False for c in checks) else EXIT_CHECK_FAILED


def _run_verify(args) -> int:
    wanted = None if args.suite == "all" else args.suite.split(",")
    seed = args.seed if args.seed is not None else int(os.environ.get("MGT_SEED", "1"))
    if args.random:
        results = run_suite(GraphGenerator(seed=seed), args.count,
                            identities=wanted)
    elif args.file:
        import random as _random

        g = _load(args.file)
        results = run_graph_checks(args.file, g, _random.Random(f"mgt-checks:{seed}:0"),
                                   set(wanted) if wanted else None)
    else:
        print("error: need a FILE or --random", file=sys.stderr)
        return EXIT_USAGE
    failures = [r for r in results if r.status == "fail"]
    if args.json:
        print(json.dumps([{
            "identity": r.identity, "graph": r.graph, "status": r.status,
            "lhs": str(r.lhs), "rhs": str(r.rhs), "reason": r.reason,
        } for r in results]))
    else:
        for r in results:
            line = f"{r.status.upper():5} {r.identity:28} {r.graph}"
            if r.status == "skip":
                line += f"  ({r.reason})"
            elif r.status == "fail":
                line += f"  lhs={r.lhs} rhs={r.rhs} {r.reason}"
            print(line)
        passes = sum(1 for r in results if r.status == "pass")
        skips = sum(1 for r in results if r.status == "skip")
        print(f"{passes} passed, {skips} skipped, {len(failures)} failed")
    return EXIT_CHECK_FAILED if failures else EXIT_OK


def _run_minimize(args) -> int:
    import random as _random

    from .optimize import search_topology

    g = _load(args.file)
    seed = args.seed if args.seed is not None else int(os.environ.get("MGT_SEED", "0"))
    states = [minimize_tau(g, None, args.iters, args.tol)]
    search_size = search_topology(g).ecount  # bridges are contracted away first
    rng = _random.Random(f"mgt-minimize:{seed}")
    for _ in range(args.restarts):
        start = [rng.random() + 0.01 for _ in range(search_size)]
        total = sum(start)
        states.append(minimize_tau(g, [x / total for x in start], args.iters, args.tol))
    best = min(states, key=lambda s: s.tau)
    if args.json:
        print(json.dumps({
            "tau": best.tau,
            "lengths": list(best.lengths),
            "iterations": best.iteration,
            "converged": best.converged,
            "pinned": list(best.pinned),
            "exact_tau": format_scalar(best.exact_tau),
            "exact_lengths": [format_scalar(x) for x in best.exact_lengths],
        }))
        return EXIT_OK
    print(f"tau = {best.tau!r} after {best.iteration} iterations"
          + ("" if best.converged else " (not converged)"))
    print("lengths:", " ".join(repr(x) for x in best.lengths))
    if best.pinned:
        print("pinned at floor (contraction candidates):", list(best.pinned))
    print(f"exact re-evaluation: tau = {format_scalar(best.exact_tau)}")
    return EXIT_OK


def _parse_params(text: str) -> dict:
    params: dict = {}
    if not text:
        return params
    for part in text.split(";"):
        key, _, raw = part.partition("=")
        key = key.strip()
        raw = raw.strip()
        if ".." in raw:
            lo, hi = raw.split("..", 1)
            params[key] = range(int(lo), int(hi) + 1)
        else:
            values = [parse_scalar(x) for x in raw.split(",")]
            params[key] = [int(x) if x.denominator == 1 else x for x in values]
    return params


def _run_scan(args) -> int:
    rows = family_scan(args.family, _parse_params(args.params))
    print("family,params,tau,ratio")
    for row in rows:
        print(f"{row.family},{row.params},{format_scalar(row.tau)},{format_scalar(row.ratio)}")
    bad = scan_violations(rows)
    if bad:
        for row in bad:
            print(f"CONJECTURE VIOLATION: {row.family} {row.params} ratio {row.ratio}",
                  file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _run_op(args) -> int:
    name = args.name
    a = args.args
    try:
        if name == "delete":
            result, g = _single(a, 1, delete_edge, int)
        elif name == "contract":
            result, g = _single(a, 1, contract_edge, int)
        elif name == "identify":
            result, g = _single(a, 2, identify_points, int, int)
        elif name == "add-edge":
            result, g = _single(a, 3, add_edge, int, int, parse_scalar)
        elif name == "da-n":
            result, g = _single(a, 1, da_n, int)
        elif name == "subdivide":
            g = _load(a[1])
            result = None
            built = subdivide_uniform(g, int(a[0]))
        elif name == "union1":
            g = _load(a[2])
            g2 = _load(a[3])
            result = union_one_point(g, int(a[0]), g2, int(a[1]))
        elif name == "union2":
            g = _load(a[4])
            g2 = _load(a[5])
            result = union_two_points(g, g2, (int(a[0]), int(a[1])), (int(a[2]), int(a[3])))
        elif name == "immerse":
            g = _load(a[0])
            beta = _load(a[1])
            result = immerse_any(g, [(beta, int(a[2]), int(a[3]))] * g.ecount)
        elif name == "tower":
            g = _load(a[3])
            result = c_tower(normalize(g), int(a[0]), int(a[1]), int(a[2]))
        else:  # pragma: no cover
            raise MgtError(name)
    except (IndexError, ValueError) as exc:
        print(f"error: bad arguments for op {name}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if result is not None:
        built = result.graph
    actual = tau_edge_sum(built).tau
    predicted = result.predicted_tau if result is not None else None
    if args.json:
        print(json.dumps({
            "predicted_tau": format_scalar(predicted) if predicted is not None else None,
            "tau": format_scalar(actual),
            "vertices": built.vcount,
            "edges": built.ecount,
            "formula": result.formula_id if result is not None else None,
        }))
    else:
        if predicted is not None:
            agree = "agree" if predicted == actual else "DISAGREE"
            print(f"predicted tau: {format_scalar(predicted)} ({agree})")
        print(f"tau: {format_scalar(actual)}  (v={built.vcount}, e={built.ecount})")
    if args.out:
        fileio.save_graph(args.out, built)
    if predicted is not None and predicted != actual:
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _single(a, argc, fn, *converters):
    g = _load(a[argc])
    converted = [conv(x) for conv, x in zip(converters, a[:argc])]
    return fn(g, *converted), g


if __name__ == "__main__":
    sys.exit(main())
