"""``ccfc`` command-line front end.

Exit codes: 0 pass or SAT, 1 property violated, 2 usage or input error,
3 UNSAT, 4 search budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable

from . import csp
from .circular import CircularColoring, solve_circular
from .errors import BudgetExceeded, CCFCError, UnknownSuite
from .fractional import solve_fractional
from .gadgets import (
    CenterKind,
    MultiSpec,
    NecklaceSpec,
    build_devos_wheel,
    build_five_color_reduction,
    build_Fv,
    build_hp,
    build_multi,
    build_necklace,
    build_nonprime_gadget,
    build_odd_counterexample,
    d_ck_replace_all,
    d_ck_replace_edge,
)
from .graph import Graph, cycle_spectrum, girth, graph_hash, graph_to_dict, load, odd_girth, to_dot
from .verify import SUITES, UnsatCertificate, certify_non_colorable, named_graph, pipeline_five_color, run_verify

PRECOLOR_FORMAT = "ccfc-precolor/1"
SOLUTION_FORMAT = "ccfc-solution/1"

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE, EXIT_UNSAT, EXIT_BUDGET = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


# -- parameter parsing ---------------------------------------------------------------

def parse_params(items: list[str] | None) -> dict[str, Any]:
    """``key=value`` pairs; values are read as JSON when possible, else kept as text."""
    out = {}
    for item in items or []:
        key, sep, raw = item.partition("=")
        if not sep or not key:
            raise UsageError(f"expected key=value, got {item!r}")
        try:
            out[key] = json.loads(raw)
        except json.JSONDecodeError:
            out[key] = raw
    return out


def read_graph(ref: str) -> Graph:
    """A graph JSON file, or a built-in name such as ``K4`` or ``C5``."""
    path = Path(ref)
    if path.exists():
        return load(path)
    try:
        return named_graph(ref)
    except CCFCError:
        raise UsageError(f"no graph file or built-in graph named {ref!r}") from None


def _need(params: dict, *keys: str) -> list:
    missing = [k for k in keys if k not in params]
    if missing:
        raise UsageError(f"missing parameters: {', '.join(missing)}")
    return [params[k] for k in keys]


def _arms(k: int, text: str) -> tuple[NecklaceSpec, ...]:
    return tuple(NecklaceSpec.parse(k, part) for part in str(text).split(";"))


def _offsets(value) -> tuple[int, ...]:
    if isinstance(value, list):
        return tuple(int(v) for v in value)
    return tuple(int(v) for v in str(value).split(","))


def _edge(value) -> tuple[int, int]:
    u, v = value if isinstance(value, list) else str(value).split(",")
    return int(u), int(v)


def _bull(k: int, t: int, arm: str) -> Graph:
    return build_multi(MultiSpec.bull(k, t, NecklaceSpec.parse(k, str(arm))))


def _fv(t: int, arm: str, k: int) -> Graph:
    return build_Fv(t, NecklaceSpec.parse(k, str(arm)), k)


GADGETS: dict[str, tuple[str, Callable[[dict], Graph]]] = {
    "thread": ("k, length", lambda p: build_necklace(NecklaceSpec.thread(*_need(p, "k", "length")))),
    "necklace": ("k, links (e.g. E,C1,E)",
                 lambda p: build_necklace(NecklaceSpec.parse(p["k"], str(_need(p, "k", "links")[1])))),
    "multi": ("k, arms (necklaces separated by ';')",
              lambda p: build_multi(MultiSpec(p["k"], _arms(*_need(p, "k", "arms"))))),
    "crown": ("k, arms, offsets (e.g. 0,1,2)",
              lambda p: build_multi(MultiSpec(p["k"], _arms(*_need(p, "k", "arms")), CenterKind.CYCLE,
                                              _offsets(_need(p, "offsets")[0])))),
    "bull": ("k, t, arm", lambda p: _bull(*_need(p, "k", "t", "arm"))),
    "replace-edge": ("graph, edge (u,v), d, k", lambda p: d_ck_replace_edge(
        read_graph(str(_need(p, "graph")[0])), _edge(_need(p, "edge")[0]), *_need(p, "d", "k"))),
    "replace-all": ("graph, d, k", lambda p: d_ck_replace_all(read_graph(str(_need(p, "graph")[0])),
                                                              *_need(p, "d", "k"))),
    "nonprime": ("s, t, m", lambda p: build_nonprime_gadget(*_need(p, "s", "t", "m"))),
    "devos": ("p", lambda p: build_devos_wheel(*_need(p, "p"))),
    "hp": ("p", lambda p: build_hp(*_need(p, "p"))),
    "five-color": ("graph", lambda p: build_five_color_reduction(read_graph(str(_need(p, "graph")[0])))),
    "odd-cex": ("k, t", lambda p: build_odd_counterexample(*_need(p, "k", "t"))),
    "fv": ("t, arm, k", lambda p: _fv(*_need(p, "t", "arm", "k"))),
}


# -- output ------------------------------------------------------------------------

def _emit(args, payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def _emit_dot(args, g: Graph) -> None:
    if args.dot:
        Path(args.dot).write_text(to_dot(g))


def _coloring_json(col) -> dict:
    if isinstance(col, CircularColoring):
        return {str(v): c for v, c in sorted(col.assignment.items())}
    return {str(v): sets for v, sets in col.sets().items()}


def read_precoloring(path: str, g: Graph, mode: str, k: int) -> dict[int, Any]:
    data = json.loads(Path(path).read_text())
    if data.get("format") != PRECOLOR_FORMAT:
        raise UsageError(f"precoloring must carry format {PRECOLOR_FORMAT!r}")
    if data.get("mode") != mode:
        raise UsageError(f"precoloring mode {data.get('mode')!r} does not match {mode!r}")
    if data.get("k") != k:
        raise UsageError(f"precoloring k={data.get('k')} does not match --k {k}")
    out = {}
    for key, value in data.get("assignments", {}).items():
        v = g.resolve(int(key) if key.lstrip("-").isdigit() else key)
        out[v] = value if mode == "circular" else set(value)
    return out


# -- subcommands --------------------------------------------------------------------

def cmd_gadget(args) -> int:
    if args.list:
        for name, (params, _) in GADGETS.items():
            print(f"{name:13s} {params}")
        return EXIT_OK
    if args.name not in GADGETS:
        raise UsageError(f"unknown gadget {args.name!r}; choose from {', '.join(GADGETS)}")
    g = GADGETS[args.name][1](parse_params(args.params))
    _emit(args, graph_to_dict(g))
    _emit_dot(args, g)
    return EXIT_OK


def cmd_solve(args) -> int:
    g = read_graph(args.graph)
    if args.mode == "circular":
        d = (args.k - 1) // 2 if args.d is None else args.d
        pre = read_precoloring(args.precolor, g, "circular", args.k) if args.precolor else None
        res = solve_circular(g, args.k, d, pre, budget=args.budget)
        b = None
    else:
        if args.d is not None:
            raise UsageError("--d applies to circular solving only")
        pre = read_precoloring(args.precolor, g, "fractional", args.k) if args.precolor else None
        res = solve_fractional(g, args.k, pre, budget=args.budget)
        d, b = None, (args.k - 1) // 2
    payload = {
        "format": SOLUTION_FORMAT,
        "mode": args.mode,
        "k": args.k,
        "d": d,
        "b": b,
        "result": "SAT" if res.sat else "UNSAT",
        "nodes_explored": res.nodes_explored,
        "search_order": res.search_order,
    }
    if res.sat:
        payload["assignments"] = _coloring_json(res.coloring)
    _emit(args, payload)
    _emit_dot(args, g)
    if args.cert and not res.sat:
        cert = UnsatCertificate(graph_hash(g), args.mode, args.k, d, b, res.nodes_explored, res.search_order)
        Path(args.cert).write_text(json.dumps(cert.to_dict(), indent=2, sort_keys=True) + "\n")
    return EXIT_OK if res.sat else EXIT_UNSAT


def cmd_spectrum(args) -> int:
    g = read_graph(args.graph)
    spec = cycle_spectrum(g, args.max_len, budget=args.budget)
    gi, og = girth(g), odd_girth(g)
    _emit(args, {
        "max_length": spec.max_length,
        "present_lengths": sorted(spec.present_lengths),
        "girth": gi if gi != float("inf") else None,
        "odd_girth": og if og != float("inf") else None,
    })
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.list or not args.suite:
        for name, entry in SUITES.items():
            defaults = ", ".join(f"{k}={json.dumps(v)}" for k, v in entry.defaults.items())
            print(f"{name:14s} {entry.description}  [{defaults}]")
        return EXIT_OK
    report = run_verify(args.suite, parse_params(args.params), seed=args.seed)
    _emit(args, report.to_dict())
    print(report.summary(), file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_VIOLATED


def cmd_certify(args) -> int:
    g = read_graph(args.graph)
    outcome = certify_non_colorable(g, args.mode, args.k, args.d, budget=args.budget)
    if outcome.unsat:
        _emit(args, outcome.certificate.to_dict())
        return EXIT_UNSAT
    _emit(args, {"result": "SAT", "mode": args.mode, "k": args.k, "witness": _coloring_json(outcome.witness)})
    return EXIT_OK


def cmd_five_color(args) -> int:
    g = read_graph(args.graph)
    out = pipeline_five_color(g, budget=args.budget)
    if out is None:
        _emit(args, {"result": "UNSAT"})
        return EXIT_UNSAT
    _emit(args, {"result": "SAT", "colors": {str(v): c for v, c in sorted(out.colors.items())},
                 "reduction_vertices": out.reduction.n})
    _emit_dot(args, out.reduction)
    return EXIT_OK


# -- parser ------------------------------------------------------------------------

def _global_flags(parser: argparse.ArgumentParser, top: bool) -> None:
    # repeated on every subparser so the flags work on either side of the command
    default = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    parser.add_argument("--seed", type=int, default=default(0), help="PRNG seed for sampled suites")
    parser.add_argument("--budget", type=int, default=default(csp.DEFAULT_BUDGET), help="search node budget")
    parser.add_argument("--out", default=default(None), help="write JSON output here instead of stdout")
    parser.add_argument("--dot", default=default(None), help="also write the graph as DOT")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ccfc", description=__doc__.splitlines()[0])
    _global_flags(parser, top=True)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        _global_flags(p, top=False)
        p.set_defaults(func=func)
        return p

    p = add("gadget", cmd_gadget, "build a gadget graph")
    p.add_argument("name", nargs="?", help="gadget name (see --list)")
    p.add_argument("--params", nargs="*", metavar="KEY=VALUE")
    p.add_argument("--list", action="store_true", help="list gadgets and their parameters")

    p = add("solve", cmd_solve, "decide colorability, optionally extending a precoloring")
    p.add_argument("mode", choices=["circular", "fractional"])
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--precolor")
    p.add_argument("--cert", help="write an UNSAT certificate here")

    p = add("spectrum", cmd_spectrum, "report girth and the cycle lengths present up to a bound")
    p.add_argument("--graph", required=True)
    p.add_argument("--max-len", type=int, required=True)

    p = add("verify", cmd_verify, "run a verification suite")
    p.add_argument("suite", nargs="?")
    p.add_argument("--params", nargs="*", metavar="KEY=VALUE")
    p.add_argument("--list", action="store_true")

    p = add("certify", cmd_certify, "certify that a graph has no coloring")
    p.add_argument("--graph", required=True)
    p.add_argument("--mode", choices=["circular", "fractional"], required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int)

    p = add("five-color", cmd_five_color, "5-color a graph through the C_5 reduction")
    p.add_argument("--graph", required=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"ccfc: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, UnknownSuite, CCFCError, OSError, json.JSONDecodeError, TypeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"ccfc: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
