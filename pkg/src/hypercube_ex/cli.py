"""Command-line entry point.

Every subcommand prints one JSON document ``{"command", "result", "manifest"}``
(or a CSV table with ``--format csv``, manifest then goes to stderr).

Exit codes: 0 ok, 1 verification failure, 2 invalid parameters, 3 resource limit.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import re
import statistics
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .bounds import literature_exponents, theorem1_pipeline
from .construct import lll_report, make_params, mono_cycle_stats, run_construction
from .cube import build_qn, dump_edge_list, load_edge_list
from .cycles import census, check_counting_bound, enumerate_cycles
from .errors import Budget, InvalidParameterError, ResourceLimitError, VerificationError
from .exact import ex_cube, ex_graph
from .hypergraph import (
    SimpleGraph, cycle_graph, dump_hypergraph, lemma4_pipeline, load_hypergraph,
    star_count, two_lift,
)
from .partite import GroundLabels, Representation, build_representation, verify_representation

EXIT_OK, EXIT_VERIFY, EXIT_PARAM, EXIT_RESOURCE = 0, 1, 2, 3


class Failed(Exception):
    """Carries a result payload for a run that completed but did not verify."""

    def __init__(self, payload):
        super().__init__("verification failed")
        self.payload = payload


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _float_list(text: str) -> list[float]:
    return [float(t) for t in text.split(",") if t.strip()]


def _read(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    return Path(path).read_text()


def named_graph(spec: str) -> SimpleGraph:
    """``C<m>``, ``P<m>`` (m vertices), ``K<m>``, ``K<s>,<t>``, or a file path."""
    m = re.fullmatch(r"([CPK])(\d+)(?:,(\d+))?", spec)
    if m is None:
        return load_hypergraph(Path(spec).read_text(), rank=2)
    kind, a, b = m.group(1), int(m.group(2)), m.group(3)
    if kind == "C":
        if a < 3:
            raise InvalidParameterError("cycles need at least 3 vertices")
        return cycle_graph(a)
    if kind == "P":
        return SimpleGraph(((i, i + 1) for i in range(1, a)), range(1, a + 1))
    if b is not None:
        t = int(b)
        return SimpleGraph((i, a + j) for i in range(1, a + 1) for j in range(1, t + 1))
    return SimpleGraph((i, j) for i in range(1, a + 1) for j in range(i + 1, a + 1))


# ---------------------------------------------------------------------------
# handlers: each returns a JSON-able payload or a list of CSV rows


def cmd_rep_build(args, budget):
    labels = None
    if args.labels:
        vals = _int_list(args.labels)
        k = (args.ell - 1) // 2
        if len(vals) != args.ell:
            raise InvalidParameterError(f"--labels needs {args.ell} values: a,b,x_1..x_{k-1},y_0..y_{k-1}")
        labels = GroundLabels(vals[0], vals[1], tuple(vals[2:k + 1]), tuple(vals[k + 1:]))
    return build_representation(args.ell, args.n, labels).as_dict()


def cmd_rep_verify(args, budget):
    doc = json.loads(_read(args.input))
    if isinstance(doc, dict) and "result" in doc and "a_seq" not in doc:
        doc = doc["result"]
    report = verify_representation(Representation.from_dict(doc), raise_on_failure=False)
    if not report.passed:
        raise Failed(report.as_dict())
    return report.as_dict()


def cmd_cycles_count(args, budget):
    c = census(args.n, args.two_ell, budget)
    return {
        "n": c.n, "two_ell": c.two_ell, "N": c.total, "x": c.x,
        "uniform": c.uniform, "identity_holds": c.identity_holds(),
        "edges": len(c.per_edge), "incidences": c.edge_total,
    }


def cmd_cycles_enumerate(args, budget):
    g = load_edge_list(_read(args.graph)) if args.graph else build_qn(args.n)
    found = enumerate_cycles(g, args.two_ell, args.limit, budget)
    return {
        "dim": g.dim, "two_ell": args.two_ell, "count": len(found),
        "witnesses": [w.to_edge_list() for w in found],
    }


def cmd_cycles_check_bound(args, budget):
    return [row.as_dict() for row in check_counting_bound(_int_list(args.n_range), args.two_ell, budget)]


def _construct_one(n, ell, c, seed, num_colors, budget):
    params = make_params(n, ell, c, seed, num_colors)
    return run_construction(params, budget)


def cmd_construct(args, budget):
    ns = _int_list(args.sweep_n) if args.sweep_n else [args.n]
    cs = _float_list(args.sweep_c) if args.sweep_c else [args.c]
    sweep = len(ns) > 1 or len(cs) > 1 or args.format == "csv"
    rows = []
    failed = False
    for n in ns:
        for c in cs:
            results = [
                _construct_one(n, args.ell, c, args.seed + t, args.num_colors, budget)
                for t in range(args.trials)
            ]
            failed |= not all(r.certified for r in results)
            if args.trials == 1 and not sweep:
                payload = results[0].as_dict()
                if args.emit_edges:
                    payload["edge_list"] = dump_edge_list(results[0].kept_edges)
                if args.mono_trials:
                    payload["mono"] = mono_cycle_stats(results[0].params, args.mono_trials, budget).as_dict()
                if failed:
                    raise Failed(payload)
                return payload
            p = results[0].params
            rows.append({
                "n": n, "ell": args.ell, "c": c, "num_colors": p.num_colors, "p": p.p,
                "trials": args.trials,
                "certified": sum(r.certified for r in results),
                "median_kept": statistics.median(len(r.kept_edges) for r in results),
                "median_deletions": statistics.median(r.deletions for r in results),
                "median_density_ratio": statistics.median(r.density_ratio for r in results),
                "half_p_edges": 0.5 * p.p * n * 2 ** (n - 1),
            })
    if failed:
        raise Failed(rows)
    return rows


def cmd_lll(args, budget):
    cs = _float_list(args.sweep_c) if args.sweep_c else [args.c]
    rows = []
    for c in cs:
        params = make_params(args.n, args.ell, c, 0)
        rows.append({"n": args.n, "ell": args.ell, "c": c, "p": params.p,
                     **lll_report(params, budget.limit if args.budget else 2_000_000).as_dict()})
    return rows if (args.sweep_c or args.format == "csv") else rows[0]


def cmd_exact_graph(args, budget):
    res = ex_graph(args.n, named_graph(args.pattern), cap=args.cap, method=args.method, budget=budget)
    out = res.as_dict()
    out["witness"] = [list(e) for e in res.witness]
    return out


def cmd_exact_cube(args, budget):
    return ex_cube(args.n, args.two_ell, cap=args.cap, method=args.method, budget=budget).as_dict()


def cmd_bounds(args, budget):
    out = {"literature": [r.as_dict() for r in literature_exponents(args.ell)]}
    if args.ell >= 7 and args.ell % 2:
        out["pipeline"] = theorem1_pipeline(args.ell).as_dict()
        out["final"] = out["pipeline"]["final"]
    if args.format == "csv":
        return out["literature"]
    return out


def cmd_lift_build(args, budget):
    h = named_graph(args.graph)
    g = two_lift(h)
    return {"vertices": sorted(g.vertices), "edges": [list(e) for e in g.sorted_edges()],
            "file": dump_hypergraph(g)}


def cmd_lift_extract(args, budget):
    g = load_hypergraph(_read(args.input), rank=3)
    out = {"stars": star_count(g).as_dict()}
    if args.target:
        res = lemma4_pipeline(g, named_graph(args.target), budget=budget)
        out["pipeline"] = res.as_dict()
    return out


def _bounds_text(payload) -> str:
    lines = []
    if "pipeline" in payload:
        p = payload["pipeline"]
        lines.append(f"ell = {p['ell']}")
        for key in ("gamma", "sigma", "alpha_exp", "final"):
            lines.append(f"  {key:<10}{p[key]}")
    lines.append(f"{'bound':<28}{'kind':<7}exponent")
    for row in payload["literature"]:
        lines.append(f"{row['name']:<28}{row['kind']:<7}{row['exponent']}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hypercube-ex", description=__doc__.splitlines()[0])
    ap.add_argument("--budget", type=int, default=None, help="work-unit budget for searches")
    ap.add_argument("--format", choices=("json", "csv", "text"), default="json")
    # the same flags are accepted after the subcommand too
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)

    def leaf(group, name):
        return group.add_parser(name, parents=[common])

    rep = sub.add_parser("rep").add_subparsers(dest="action", required=True)
    p = leaf(rep, "build")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--labels", help="a,b,x_1..x_{k-1},y_0..y_{k-1}")
    p.set_defaults(func=cmd_rep_build)
    p = leaf(rep, "verify")
    p.add_argument("--input", default="-")
    p.set_defaults(func=cmd_rep_verify)

    cyc = sub.add_parser("cycles").add_subparsers(dest="action", required=True)
    p = leaf(cyc, "count")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--two-ell", type=int, required=True)
    p.set_defaults(func=cmd_cycles_count)
    p = leaf(cyc, "enumerate")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--graph", help="edge-list file (default: full Q_n)")
    p.add_argument("--two-ell", type=int, required=True)
    p.add_argument("--limit", type=int, default=None)
    p.set_defaults(func=cmd_cycles_enumerate)
    p = leaf(cyc, "check-bound")
    p.add_argument("--n-range", required=True, help="comma-separated n values")
    p.add_argument("--two-ell", type=int, required=True)
    p.set_defaults(func=cmd_cycles_check_bound)

    p = leaf(sub, "construct")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--ell", type=int, default=2)
    p.add_argument("--c", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1, help="runs with seeds seed..seed+trials-1")
    p.add_argument("--num-colors", type=int, default=None)
    p.add_argument("--sweep-n", help="comma-separated n values")
    p.add_argument("--sweep-c", help="comma-separated c values")
    p.add_argument("--mono-trials", type=int, default=0)
    p.add_argument("--emit-edges", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = leaf(sub, "lll-report")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--c", type=float, default=0.5)
    p.add_argument("--sweep-c", help="comma-separated c values")
    p.set_defaults(func=cmd_lll)

    ex = sub.add_parser("exact").add_subparsers(dest="action", required=True)
    p = leaf(ex, "graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pattern", required=True, help="C4, P3, K3, K2,3 or an 'n=' edge file")
    p.add_argument("--cap", type=int, default=9)
    p.add_argument("--method", choices=("transversal", "subsets"), default="transversal")
    p.set_defaults(func=cmd_exact_graph)
    p = leaf(ex, "cube")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--two-ell", type=int, required=True)
    p.add_argument("--cap", type=int, default=4)
    p.add_argument("--method", choices=("transversal", "subsets"), default="transversal")
    p.set_defaults(func=cmd_exact_cube)

    p = leaf(sub, "bounds")
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=cmd_bounds)

    lift = sub.add_parser("lift").add_subparsers(dest="action", required=True)
    p = leaf(lift, "build")
    p.add_argument("--graph", required=True, help="bipartite graph: name (C4, K2,3) or edge file")
    p.set_defaults(func=cmd_lift_build)
    p = leaf(lift, "extract")
    p.add_argument("--input", default="-", help="3-graph file")
    p.add_argument("--target", help="graph to find inside the densest two-lift")
    p.set_defaults(func=cmd_lift_extract)
    return ap


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _manifest(args, started, payload) -> dict:
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("func",)}
    return {
        "subcommand": " ".join(x for x in (args.command, getattr(args, "action", None)) if x),
        "params": params,
        "seed": getattr(args, "seed", None),
        "version": __version__,
        "started": started,
        "finished": datetime.now(timezone.utc).isoformat(),
        "output_digest": hashlib.sha256(_canonical(payload).encode()).hexdigest(),
    }


def _emit(args, payload, manifest, out, err) -> None:
    if args.format == "csv" and isinstance(payload, list):
        buf = io.StringIO()
        if payload:
            w = csv.DictWriter(buf, fieldnames=list(payload[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(payload)
        out.write(buf.getvalue())
        err.write(json.dumps({"manifest": manifest}, sort_keys=True) + "\n")
    elif args.format == "text" and args.func is cmd_bounds:
        out.write(_bounds_text(payload))
    else:
        doc = {"command": manifest["subcommand"], "result": payload, "manifest": manifest}
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    started = datetime.now(timezone.utc).isoformat()
    try:
        budget = Budget(args.budget, args.command)
        payload = args.func(args, budget)
        code = EXIT_OK
    except Failed as exc:
        payload, code = exc.payload, EXIT_VERIFY
    except VerificationError as exc:
        err.write(f"verification failed: {exc}\n")
        return EXIT_VERIFY
    except (InvalidParameterError, ValueError, json.JSONDecodeError, FileNotFoundError) as exc:
        err.write(f"invalid parameters: {exc}\n")
        return EXIT_PARAM
    except ResourceLimitError as exc:
        err.write(f"resource limit: {exc}\n")
        return EXIT_RESOURCE
    _emit(args, payload, _manifest(args, started, payload), out, err)
    return code


if __name__ == "__main__":
    sys.exit(main())
