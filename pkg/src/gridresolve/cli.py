"""Command-line interface.

Exit codes: 0 predicate true / success, 1 predicate false, 2 usage error,
3 invalid input or exceeded budget. Every command prints one JSON report
tagged ``"schema": "gridresolve/1"``.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time

from gridresolve.characterize import construct_k_minimal, construct_staircase_max
from gridresolve.enumeration import DEFAULT_BUDGET, Mode, certify_bound, enumerate_minimals
from gridresolve.errors import ConstructionError, InputError, ResourceError
from gridresolve.grid import Grid, vertex_set
from gridresolve.resolve import all_locally_resolved, is_minimal, is_resolving, unresolved_pairs
from gridresolve.solver import Algorithm, minimality_by_weights, solve_min_weight

SCHEMA = "gridresolve/1"

_GRID_RE = re.compile(r"^\s*(\d+)\s*[xX×]\s*(\d+)\s*$")
_VERTEX_RE = re.compile(r"^\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*$")


def parse_grid(text):
    match = _GRID_RE.match(text)
    if not match:
        raise InputError(f"grid must look like WxH, got {text!r}")
    return Grid(int(match.group(1)), int(match.group(2)))


def parse_set(g, text):
    """Parse ``"(x,y);(x,y)"`` into a canonical VertexSet on ``g``."""
    parts = [p for p in text.split(";") if p.strip()]
    vertices = []
    for part in parts:
        match = _VERTEX_RE.match(part)
        if not match:
            raise InputError(f"vertex must look like (x,y), got {part.strip()!r}")
        vertices.append((int(match.group(1)), int(match.group(2))))
    return vertex_set(g, vertices)


def format_set(s):
    return ";".join(f"({x},{y})" for x, y in s)


def load_weights(g, source):
    if source == "unit":
        return [1] * g.size
    try:
        with open(source, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read weights file {source}: {exc}") from None
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA or not isinstance(doc.get("weights"), dict):
        raise InputError(f'weights file must be {{"schema": "{SCHEMA}", "weights": {{"x,y": w, ...}}}}')
    weights = {}
    for key, value in doc["weights"].items():
        match = _VERTEX_RE.match(f"({key})")
        if not match:
            raise InputError(f"weight key must look like x,y, got {key!r}")
        v = g.check((int(match.group(1)), int(match.group(2))))
        if v in weights:
            raise InputError(f"duplicate weight for {v}")
        weights[v] = value
    return weights


# commands ------------------------------------------------------------------


def cmd_check(args, g):
    s = parse_set(g, args.set)
    resolving = is_resolving(g, s)
    if args.minimal:
        query, value = "minimal", is_minimal(g, s)
    elif args.local:
        query, value = "locally_resolved", all_locally_resolved(g, s)
    else:
        query, value = "resolving", resolving
    result = {"set": format_set(s), "query": query, "value": value, "resolving": resolving}
    if not resolving:
        pairs = unresolved_pairs(g, s)
        shown = pairs if args.witness else pairs[:1]
        result["witness"] = [[format_set([u]), format_set([v])] for u, v in shown]
        result["unresolved_count"] = len(pairs)
    return (0 if value else 1), result


def _catalog_payload(catalog):
    return {
        "k_max": catalog.k_max,
        "mode": catalog.mode.value,
        "histogram": {str(k): c for k, c in sorted(catalog.histogram.items())},
        "minimals": [format_set(s) for s in catalog.minimals],
    }


def cmd_enumerate(args, g):
    if args.certify:
        certified = certify_bound(g, budget=args.budget)
        return (0 if certified else 1), {"certify": True, "bound": 2 * g.n - 2, "certified": certified}
    k_max = args.kmax if args.kmax is not None else 2 * g.n
    catalog = enumerate_minimals(g, k_max, Mode(args.mode), budget=args.budget)
    result = _catalog_payload(catalog)
    if args.out:
        doc = {"schema": SCHEMA, "grid": _grid_payload(g), **result}
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(doc, indent=2) + "\n")
    return 0, result


def cmd_solve(args, g):
    if args.minimality is not None:
        s = parse_set(g, args.minimality)
        verdict = minimality_by_weights(g, s)
        return 0, {"set": format_set(s), "verdict": verdict.value}
    weights = load_weights(g, args.weights)
    sol = solve_min_weight(g, weights, Algorithm(args.algo), budget=args.budget)
    return 0, {
        "algorithm": args.algo,
        "weights": args.weights,
        "chosen": format_set(sol.chosen),
        "objective": sol.objective,
        "proof": sol.proof.value,
        "nodes": sol.nodes,
    }


def cmd_construct(args, g):
    s = construct_staircase_max(g) if args.k is None else construct_k_minimal(g, args.k)
    return 0, {"k": len(s), "set": format_set(s), "minimal": True}


# plumbing ------------------------------------------------------------------


def _grid_payload(g):
    return {"width": g.width, "height": g.height}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--no-timing", action="store_true", help="omit elapsed_ms for byte-stable output")

    parser = argparse.ArgumentParser(prog="gridresolve", description="Resolving sets of grid graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="test a landmark set")
    p.add_argument("grid", help="WxH")
    p.add_argument("set", help='landmarks, e.g. "(0,0);(2,0)"')
    which = p.add_mutually_exclusive_group()
    which.add_argument("--minimal", action="store_true", help="query inclusion-minimality")
    which.add_argument("--local", action="store_true", help="query local resolution at every vertex")
    p.add_argument("--witness", action="store_true", help="list every unresolved pair")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("enumerate", parents=[common], help="catalogue minimal resolving sets")
    p.add_argument("grid")
    p.add_argument("--kmax", type=int, default=None, help="largest cardinality (default 2n)")
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.PURE_ORACLE.value)
    p.add_argument("--out", help="also write the catalogue JSON here")
    p.add_argument("--certify", action="store_true", help="certify the 2n-2 cardinality bound")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("solve", parents=[common], help="minimum-weight resolving set")
    p.add_argument("grid")
    p.add_argument("--weights", default="unit", help='"unit" or a weights JSON file')
    p.add_argument("--algo", choices=[a.value for a in Algorithm], default=Algorithm.BRANCH_BOUND.value)
    p.add_argument("--minimality", metavar="SET", help="classify SET with the weight trick instead")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("construct", parents=[common], help="build a k-minimal")
    p.add_argument("grid")
    p.add_argument("--k", type=int, default=None, help="cardinality (default 2n-2)")
    p.set_defaults(func=cmd_construct)
    return parser


def _emit(report, fmt, out):
    if fmt == "json":
        out.write(json.dumps(report) + "\n")
        return
    for key, value in report.items():
        if isinstance(value, dict):
            for k2, v2 in value.items():
                out.write(f"{key}.{k2}: {json.dumps(v2)}\n")
        else:
            out.write(f"{key}: {json.dumps(value)}\n")


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    start = time.perf_counter()
    report = {"schema": SCHEMA, "command": args.command}
    try:
        g = parse_grid(args.grid)
        report["grid"] = _grid_payload(g)
        code, result = args.func(args, g)
        report["result"] = result
    except (InputError, ResourceError, ConstructionError) as exc:
        code = 3
        report["error"] = str(exc)
        if isinstance(exc, ResourceError) and exc.count is not None:
            report["count"] = exc.count
        print(f"gridresolve: {exc}", file=sys.stderr)
    if not args.no_timing:
        report["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    _emit(report, args.format, out)
    return code
