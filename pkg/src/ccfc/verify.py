"""Verification suites, non-colorability certificates and the five-color pipeline.

Each suite is a registered runner that checks one family of properties over
an exhaustive or seeded-random set of cases and returns a
:class:`VerificationReport`.
"""
from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

from . import csp
from .circular import (
    AvailableSet,
    CircularColoring,
    check_circular,
    crown_guarantee,
    cycle_precolor_feasible,
    extend_crown_ck,
    extend_necklace_ck,
    inverse_transfer,
    propagate_necklace,
    solve_circular,
    transfer_to_replacement,
)
from .errors import BadParams, HypothesisViolated, InvalidInput, UnknownSuite
from .fractional import (
    FractionalColoring,
    _bull_center,
    check_fractional,
    color_cycle_fractional,
    compute_MN,
    cycle_intersection_required,
    extend_bull_fractional,
    extend_necklace_fractional,
    feasible_overlap,
    certify_Fv_extension,
    necklace_overlaps,
    overlap,
    path_bound,
    solve_fractional,
    solve_fractional_domains,
    subset_values,
)
from .gadgets import (
    CYCLE,
    EDGE,
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
    component_without,
    d_ck_replace_all,
    necklace_layout,
)
from .graph import (
    Graph,
    build_graph,
    complete_graph,
    cycle_graph,
    cycle_spectrum,
    girth,
    graph_hash,
    induced_subgraph,
    is_two_connected,
    path_graph,
)

REPORT_FORMAT = "ccfc-report/1"
CERT_FORMAT = "ccfc-cert/1"


# -- reports ------------------------------------------------------------------------

def _canonical(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, default=str)


@dataclass
class VerificationReport:
    suite: str
    parameters: dict
    seed: int
    cases_total: int = 0
    cases_passed: int = 0
    failures: list[dict] = field(default_factory=list)
    notes: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return self.cases_passed == self.cases_total

    def case(self, inputs: Any, expected: Any, got: Any) -> bool:
        self.cases_total += 1
        if expected == got:
            self.cases_passed += 1
            return True
        self.failures.append({"input": inputs, "expected": expected, "got": got})
        return False

    def check(self, inputs: Any, ok: bool, detail: Any = None) -> bool:
        return self.case(inputs, True, True if ok else (detail if detail is not None else False))

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "format": REPORT_FORMAT,
            "suite": self.suite,
            "parameters": self.parameters,
            "seed": self.seed,
            "cases_total": self.cases_total,
            "cases_passed": self.cases_passed,
            "failures": sorted(self.failures, key=lambda f: _canonical(f["input"])),
            "notes": self.notes,
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 6)
        return json.loads(_canonical(out))

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.suite}: {self.cases_passed}/{self.cases_total} cases in {self.wall_time:.2f}s"


@dataclass(frozen=True)
class Suite:
    runner: Callable[[VerificationReport, dict, random.Random], None]
    defaults: Mapping[str, Any]
    description: str


SUITES: dict[str, Suite] = {}


def suite(name: str, description: str, **defaults):
    def register(fn):
        SUITES[name] = Suite(fn, defaults, description)
        return fn
    return register


def run_verify(name: str, params: Mapping[str, Any] | None = None, seed: int = 0) -> VerificationReport:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    entry = SUITES[name]
    params = dict(params or {})
    unknown = set(params) - set(entry.defaults)
    if unknown:
        raise BadParams(f"suite {name} has no parameters {sorted(unknown)}; known: {sorted(entry.defaults)}")
    merged = {**entry.defaults, **params}
    report = VerificationReport(name, merged, seed)
    start = time.perf_counter()
    entry.runner(report, merged, random.Random(seed))
    report.wall_time = time.perf_counter() - start
    return report


# -- certificates ---------------------------------------------------------------------

@dataclass(frozen=True)
class UnsatCertificate:
    graph_hash: str
    mode: str
    k: int
    d: int | None
    b: int | None
    nodes_explored: int
    search_order: str
    result: str = "UNSAT"

    def to_dict(self) -> dict:
        return {
            "format": CERT_FORMAT,
            "graph_hash": self.graph_hash,
            "mode": self.mode,
            "k": self.k,
            "d": self.d,
            "b": self.b,
            "nodes_explored": self.nodes_explored,
            "search_order": self.search_order,
            "result": self.result,
        }


@dataclass(frozen=True)
class CertifyOutcome:
    certificate: UnsatCertificate | None
    witness: CircularColoring | FractionalColoring | None

    @property
    def unsat(self) -> bool:
        return self.certificate is not None


def certify_non_colorable(
    g: Graph, mode: str, k: int, d: int | None = None, budget: int = csp.DEFAULT_BUDGET
) -> CertifyOutcome:
    """Run the exhaustive solver; a certificate on UNSAT, a witness coloring otherwise."""
    if mode == "circular":
        d = (k - 1) // 2 if d is None else d
        res = solve_circular(g, k, d, budget=budget)
        b = None
    elif mode == "fractional":
        res = solve_fractional(g, k, budget=budget)
        b, d = (k - 1) // 2, None
    else:
        raise BadParams(f"unknown mode {mode!r}")
    if res.sat:
        return CertifyOutcome(None, res.coloring)
    cert = UnsatCertificate(graph_hash(g), mode, k, d, b, res.nodes_explored, res.search_order)
    return CertifyOutcome(cert, None)


@dataclass(frozen=True)
class FiveColoring:
    colors: dict[int, int]
    reduction: Graph
    nodes_explored: int


def pipeline_five_color(g: Graph, budget: int = csp.DEFAULT_BUDGET) -> FiveColoring | None:
    """Properly 5-color ``g`` through a C_5-coloring of its reduction graph.

    Returns ``None`` if the reduction has no C_5-coloring.
    """
    f = build_five_color_reduction(g)
    res = solve_circular(f, 5, 2, budget=budget)
    if not res.sat:
        return None
    colors = {v: res.coloring[v] for v in range(g.n)}
    if any(colors[u] == colors[v] for u, v in g.edges):
        raise InvalidInput("projected colors are not a proper coloring")
    return FiveColoring(colors, f, res.nodes_explored)


def named_graph(name: str) -> Graph:
    """``K<n>``, ``C<n>``, ``P<n>`` (path on n vertices) or ``E<n>`` (edgeless)."""
    kind, num = name[:1].upper(), name[1:]
    if not num.isdigit():
        raise BadParams(f"unknown graph name {name!r}")
    n = int(num)
    makers = {"K": complete_graph, "C": cycle_graph, "P": path_graph, "E": lambda n: build_graph(n, [])}
    if kind not in makers:
        raise BadParams(f"unknown graph name {name!r}")
    return makers[kind](n)


# -- helpers ---------------------------------------------------------------------------

def _odd(k: int, what: str = "k") -> None:
    if k < 3 or k % 2 == 0:
        raise BadParams(f"{what} must be odd and >= 3, got {k}")


def _all_colorings(g: Graph, compat, domains):
    return list(csp.enumerate_all(g, compat, domains))


def _ck_compat(k: int):
    from .circular import circular_compat
    return circular_compat(k, (k - 1) // 2)


def _random_graph(rng: random.Random, max_n: int, max_m: int) -> Graph:
    n = rng.randint(1, max_n)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    m = rng.randint(0, min(max_m, len(pairs)))
    return build_graph(n, rng.sample(pairs, m))


def _random_necklace(rng: random.Random, k: int, max_links: int) -> NecklaceSpec:
    alphabet = [EDGE] + [CYCLE(i) for i in range(k - 1)]
    return NecklaceSpec(k, tuple(rng.choice(alphabet) for _ in range(rng.randint(1, max_links))))


def _anchors(layout) -> list[int]:
    return [layout[0].start] + [pl.end for pl in layout]


def _necklace_specs(k: int, max_links: int, alphabet=None):
    alphabet = alphabet or [EDGE] + [CYCLE(i) for i in range(k - 1)]
    for n in range(1, max_links + 1):
        for links in itertools.product(alphabet, repeat=n):
            yield NecklaceSpec(k, links)


def _specs_at_distance(k: int, dist: int, alphabet) -> list[NecklaceSpec]:
    out = []

    def rec(prefix, left):
        if left == 0:
            out.append(NecklaceSpec(k, tuple(prefix)))
            return
        for link in alphabet:
            if link.length(k) <= left:
                rec(prefix + [link], left - link.length(k))

    rec([], dist)
    return out


def _links(text_or_list, k: int):
    if isinstance(text_or_list, str):
        return list(NecklaceSpec.parse(k, text_or_list).links)
    return [EDGE if tok == "E" else CYCLE(int(str(tok)[1:])) for tok in text_or_list]


# -- circular suites -------------------------------------------------------------------

@suite("lemma-2.1", "cycle precoloring criterion vs enumeration of all C_k-colorings of C_k", k=[5, 7])
def _cycle_criterion_suite(rep: VerificationReport, p: dict, rng) -> None:
    ks = p["k"] if isinstance(p["k"], list) else [p["k"]]
    for k in ks:
        _odd(k)
        g = cycle_graph(k)
        sols = _all_colorings(g, _ck_compat(k), [(1 << k) - 1] * k)
        rep.notes.setdefault("colorings_of_cycle", {})[str(k)] = len(sols)
        seen = {(i, j, s[i], s[j]) for s in sols for i in range(k) for j in range(k)}
        for i, j, ci, cj in itertools.product(range(k), repeat=4):
            rep.case({"k": k, "i": i, "j": j, "ci": ci, "cj": cj},
                     (i, j, ci, cj) in seen, cycle_precolor_feasible(k, i, j, ci, cj))


@suite("prop-2.2", "C_k-colorability is preserved by d-C_k-replacement of every edge",
       graphs=50, max_vertices=8, max_edges=12, pairs=[[1, 5], [2, 5], [2, 7], [3, 7]])
def _replacement_suite(rep: VerificationReport, p: dict, rng: random.Random) -> None:
    sat_count = 0
    for gi in range(p["graphs"]):
        g = _random_graph(rng, p["max_vertices"], p["max_edges"])
        for d, k in p["pairs"]:
            half = (k - 1) // 2
            base = solve_circular(g, k, half)
            h = d_ck_replace_all(g, d, k)
            rep.case({"graph": gi, "n": g.n, "edges": g.sorted_edges(), "d": d, "k": k},
                     base.sat, solve_circular(h, k, half).sat)
            if base.sat:
                sat_count += 1
                h2, lifted = transfer_to_replacement(g, base.coloring, d)
                back = inverse_transfer(g, lifted, d)
                rep.check({"graph": gi, "d": d, "k": k, "check": "transfer"},
                          check_circular(h2, lifted) and back.assignment == base.coloring.assignment)
    rep.notes["sat_instances"] = sat_count


@suite("prop-2.3", "nonprime gadget admits no C_k-coloring and has girth k", s=3, t=3, m=10)
def _nonprime_suite(rep: VerificationReport, p: dict, rng) -> None:
    s, t, m = p["s"], p["t"], p["m"]
    k = s * t
    g = build_nonprime_gadget(s, t, m)
    res = solve_circular(g, k, (k - 1) // 2)
    rep.notes["nodes_explored"] = res.nodes_explored
    rep.case({"s": s, "t": t, "m": m, "check": "unsat"}, False, res.sat)
    rep.case({"check": "girth"}, k, girth(g))
    spec = cycle_spectrum(g, m * s)
    rep.case({"check": "spectrum", "max_len": m * s}, [k], sorted(spec.present_lengths))
    rep.case({"check": "plain_edges"}, m * k + 1, len(g.edges))


@suite("prop-2.4", "W_p and H_p are not C_p-colorable; girth and cycle spectrum of H_p", p=5)
def _wheel_suite(rep: VerificationReport, params: dict, rng) -> None:
    p = params["p"]
    w, h = build_devos_wheel(p), build_hp(p)
    rw, rh = solve_circular(w, p, (p - 1) // 2), solve_circular(h, p, (p - 1) // 2)
    rep.notes.update(W_nodes=rw.nodes_explored, H_nodes=rh.nodes_explored, H_vertices=h.n)
    rep.case({"graph": "W", "check": "unsat"}, False, rw.sat)
    rep.case({"graph": "H", "check": "unsat"}, False, rh.sat)
    rep.case({"graph": "W", "check": "girth"}, 2 * p - 3, girth(w))
    rep.case({"graph": "W", "check": "two_connected"}, True, is_two_connected(w))
    rep.case({"graph": "H", "check": "girth"}, p, girth(h))
    top = (2 * p - 3) * (p - 1) // 2 - 1
    rep.case({"graph": "H", "check": "spectrum", "max_len": top}, [p],
             sorted(cycle_spectrum(h, top).present_lengths))


@suite("prop-2.6", "five-coloring through a C_5-coloring of the reduction", graph="K4")
def _five_color_suite(rep: VerificationReport, p: dict, rng) -> None:
    names = p["graph"] if isinstance(p["graph"], list) else [p["graph"]]
    for name in names:
        g = named_graph(name)
        out = pipeline_five_color(g)
        ok = out is not None and all(out.colors[u] != out.colors[v] for u, v in g.edges)
        rep.check({"graph": name, "check": "proper"}, ok)
        f = build_five_color_reduction(g)
        if g.edges:
            rep.case({"graph": name, "check": "girth"}, 5, girth(f))
            rep.case({"graph": name, "check": "spectrum", "max_len": 17}, [5],
                     sorted(cycle_spectrum(f, 17).present_lengths))


@suite("lemma-3.2", "necklace reachable sets vs enumeration; long necklaces always extend",
       p=[5, 7], specs=200, max_links=8)
def _necklace_propagation_suite(rep: VerificationReport, params: dict, rng: random.Random) -> None:
    ps = params["p"] if isinstance(params["p"], list) else [params["p"]]
    for p in ps:
        _odd(p, "p")
        compat = _ck_compat(p)
        for si in range(params["specs"]):
            spec = _random_necklace(rng, p, params["max_links"])
            g, layout = necklace_layout(spec)
            anchors = _anchors(layout)
            domains = [(1 << p) - 1] * g.n
            domains[anchors[0]] = 1
            reach = [set() for _ in anchors]
            for sol in csp.enumerate_all(g, compat, domains):
                for i, a in enumerate(anchors):
                    reach[i].add(sol[a])
            sets = propagate_necklace(spec, AvailableSet.of(p, [0]))
            key = {"p": p, "spec": str(spec)}
            rep.case({**key, "check": "reachable"}, [sorted(r) for r in reach], [sorted(s) for s in sets])
            rep.check({**key, "check": "size_bound"},
                      all(len(s) >= min(i + 1, p) for i, s in enumerate(sets)))
            if spec.s >= p - 2:
                good = True
                for cx, cy in itertools.product(range(p), repeat=2):
                    col = extend_necklace_ck(spec, p, cx, cy)
                    if col is None or not check_circular(g, col) or (col[anchors[0]], col[anchors[-1]]) != (cx, cy):
                        good = False
                rep.check({**key, "check": "long_extends"}, good)


def _arm_realizations(k: int, n_links: int) -> list[NecklaceSpec]:
    """A fixed set of realizations of an arm with ``n_links`` links."""
    patterns = [
        [EDGE] * n_links,
        [CYCLE(1)] * n_links,
        [EDGE if i % 2 == 0 else CYCLE(k - 3) for i in range(n_links)],
    ]
    out = []
    for links in patterns:
        spec = NecklaceSpec(k, tuple(links))
        if spec not in out:
            out.append(spec)
    return out


@suite("lemma-3.3", "necklaces and crowns with enough internal anchors extend every precoloring",
       p=5, t=3, offsets=[[0, 1, 2], [0, 1, 3], [0, 2, 4]], solver_check_every=50)
def _crown_suite(rep: VerificationReport, params: dict, rng) -> None:
    p, t = params["p"], params["t"]
    _odd(p, "p")
    profiles = [ks for ks in itertools.product(range(p - 1), repeat=t)
                if sum(ks) >= (p - 2) * t - p + 1 and list(ks) == sorted(ks)]
    counter = 0
    for ks in profiles:
        for r in range(3):
            arms = []
            for ki in ks:
                reals = _arm_realizations(p, ki + 1)
                arms.append(reals[r % len(reals)])
            centers = [(CenterKind.VERTEX, ())] + [(CenterKind.CYCLE, tuple(o)) for o in params["offsets"]]
            for kind, offs in centers:
                spec = MultiSpec(p, tuple(arms), kind, offs)
                g = build_multi(spec)
                assert crown_guarantee(spec, p)
                ends = [g.landmark(f"y{i}") for i in range(1, t + 1)]
                key = {"profile": list(ks), "realization": r, "center": kind.value, "offsets": list(offs)}
                bad = []
                for colors in itertools.product(range(p), repeat=t):
                    col = extend_crown_ck(spec, p, colors)
                    ok = col is not None and check_circular(g, col) and all(col[e] == c for e, c in zip(ends, colors))
                    if not ok:
                        bad.append(list(colors))
                    counter += 1
                    if params["solver_check_every"] and counter % params["solver_check_every"] == 0:
                        res = solve_circular(g, p, (p - 1) // 2, dict(zip(ends, colors)))
                        rep.check({**key, "colors": list(colors), "check": "solver"}, res.sat)
                rep.case({**key, "check": "all_extend"}, [], bad)
    rep.notes["profiles"] = [list(ks) for ks in profiles]
    rep.notes["precolorings_checked"] = counter


# -- fractional suites -----------------------------------------------------------------

def _path_colorings(k: int, order: int):
    """All fractional (k:(k-1)/2)-colorings of the path on ``order`` vertices."""
    vals = subset_values(k, (k - 1) // 2)
    def rec(prefix):
        if len(prefix) == order:
            yield prefix
            return
        for v in vals:
            if not v & prefix[-1]:
                yield from rec(prefix + [v])
    for v in vals:
        yield from rec([v])


def _ks(value) -> list[int]:
    ks = value if isinstance(value, list) else [value]
    for k in ks:
        _odd(k)
    return ks


@suite("lemma-4.1", "path overlap bounds vs exhaustive path colorings", k=[5, 7])
def _path_bound_suite(rep: VerificationReport, p: dict, rng) -> None:
    for k in _ks(p["k"]):
        vals = subset_values(k, (k - 1) // 2)
        for t in range(2, k + 1):
            bound = path_bound(t, k)
            if k <= 5:
                seen = {overlap(c[0], c[-1]) for c in _path_colorings(k, t)}
            else:
                # every overlap class of endpoint pairs, decided by the oracle
                g = path_graph(t)
                seen = set()
                for sx, sy in itertools.product(vals, repeat=2):
                    if t == 2 and sx & sy:
                        continue
                    if overlap(sx, sy) in seen:
                        continue
                    if solve_fractional(g, k, {0: sx, t - 1: sy}).sat:
                        seen.add(overlap(sx, sy))
            key = {"k": k, "t": t, "bound": [bound.kind.value, bound.value]}
            rep.case({**key, "check": "admits"}, [], sorted(o for o in seen if not bound.admits(o)))
            extreme = min(seen) if bound.kind.value == "lower" else max(seen)
            rep.case({**key, "check": "attained"}, bound.value, extreme)


@suite("lemma-4.2", "cycle precoloring criterion and explicit cycle coloring vs oracle", k=[5, 7])
def _cycle_overlap_suite(rep: VerificationReport, p: dict, rng) -> None:
    for k in _ks(p["k"]):
        half = (k - 1) // 2
        vals = subset_values(k, half)
        # palette symmetry lets k > 5 fix the first set
        firsts = vals if k <= 5 else vals[:1]
        g = cycle_graph(k)
        for dist in range(half + 1):
            req = cycle_intersection_required(k, dist)
            for sx, sy in itertools.product(firsts, vals):
                key = {"k": k, "dist": dist, "sx": sorted(csp.bits(sx)), "sy": sorted(csp.bits(sy))}
                if dist == 0:
                    oracle = sx == sy
                elif dist == 1 and sx & sy:
                    oracle = False
                else:
                    oracle = solve_fractional(g, k, {0: sx, dist: sy}).sat
                rep.case({**key, "check": "criterion"}, oracle, overlap(sx, sy) == req)
                col = color_cycle_fractional(k, sx, sy, dist)
                built = col is not None and check_fractional(g, col) and col[0] == sx and col[dist] == sy
                rep.case({**key, "check": "construction"}, oracle, built)


@suite("prop-4.4", "the M/N bounds are integral with 0 <= M <= N", k_max=31)
def _mn_bounds_suite(rep: VerificationReport, p: dict, rng) -> None:
    bad_parity = 0
    for k in range(3, p["k_max"] + 1, 2):
        half = (k - 1) // 2
        for s in range(1, half + 1):
            cases = [(t, False) for t in range(s + 1, s + (k + 1) // 2 + 1)]
            cases.append((s + (k + 3) // 2, True))
            for t, case2 in cases:
                eff = s + (k + 1) // 2 if case2 else t
                for ell in feasible_overlap(k, eff).values():
                    r = compute_MN(k, s, t, ell, case2)
                    ok = 0 <= r.M <= r.N
                    rep.check({"k": k, "s": s, "t": t, "ell": ell, "case2": case2}, ok, [r.M, r.N])
                    if not case2 and t <= (k + 1) // 2:
                        if t % 2 and s % 2:
                            want = (s - 1) // 2
                        elif t % 2:
                            want = (t - s - 1) // 2
                        elif s % 2:
                            want = 0
                        else:
                            want = (k - 1 - t) // 2
                        if (r.M, r.N) != (want, want):
                            bad_parity += 1
                            rep.case({"k": k, "s": s, "t": t, "check": "parity_table"}, [want, want], [r.M, r.N])
    rep.notes["parity_table_mismatches"] = bad_parity


@suite("lemma-4.3-4.5", "constructive necklace extension inside the overlap interval", k=5, max_links=3)
def _necklace_interval_suite(rep: VerificationReport, p: dict, rng) -> None:
    k = p["k"]
    _odd(k)
    vals = subset_values(k, (k - 1) // 2)
    outside_extendable = 0
    for spec in _necklace_specs(k, p["max_links"]):
        g = build_necklace(spec)
        y = g.landmark("y")
        dist = spec.distance
        interval = feasible_overlap(k, dist)
        exact = necklace_overlaps(spec)
        failures = []
        declined_wrongly = []
        for sx, sy in itertools.product(vals, repeat=2):
            col = extend_necklace_fractional(spec, sx, sy)
            if overlap(sx, sy) in interval:
                if col is None or not check_fractional(g, col) or col[0] != sx or col[y] != sy:
                    failures.append([sorted(csp.bits(sx)), sorted(csp.bits(sy))])
            elif col is not None:
                declined_wrongly.append([sorted(csp.bits(sx)), sorted(csp.bits(sy))])
        key = {"spec": str(spec), "dist": dist}
        rep.case({**key, "check": "extends_inside"}, [], failures)
        rep.case({**key, "check": "declines_outside"}, [], declined_wrongly)
        # one oracle run per overlap class confirms the exact overlap set
        base = vals[0]
        oracle = set()
        for ell in range((k - 1) // 2 + 1):
            sy = next(v for v in vals if overlap(base, v) == ell)
            if g.has_edge(0, y) and base & sy:
                continue
            if solve_fractional(g, k, {0: base, y: sy}).sat:
                oracle.add(ell)
        rep.case({**key, "check": "oracle_overlaps"}, sorted(oracle), sorted(exact))
        rep.check({**key, "check": "interval_sufficient"}, set(interval.values()) <= oracle)
        if len(spec.links) == 1 and dist <= (k + 1) // 2:
            rep.case({**key, "check": "single_link_forced"}, sorted(interval.values()), sorted(oracle))
        outside_extendable += len(oracle - set(interval.values()))
    rep.notes["overlap_classes_extendable_outside_interval"] = outside_extendable


@suite("cor-4.7", "necklaces at distance >= k extend every precoloring", k=5, max_links=3)
def _long_necklace_suite(rep: VerificationReport, p: dict, rng) -> None:
    k = p["k"]
    _odd(k)
    vals = subset_values(k, (k - 1) // 2)
    count = 0
    for spec in _necklace_specs(k, p["max_links"]):
        if spec.distance < k:
            continue
        count += 1
        g = build_necklace(spec)
        y = g.landmark("y")
        bad = []
        for sx, sy in itertools.product(vals, repeat=2):
            col = extend_necklace_fractional(spec, sx, sy)
            if col is None or not check_fractional(g, col) or col[0] != sx or col[y] != sy:
                bad.append([sorted(csp.bits(sx)), sorted(csp.bits(sy))])
        rep.case({"spec": str(spec), "dist": spec.distance}, [], bad)
    rep.notes["necklaces"] = count


@suite("lemma-4.6", "bull-necklaces extend every precoloring with the required x-y overlap",
       k=5, pairs=[[1, 4], [1, 5], [2, 3], [2, 4]], links="E,C1", sample=0.05)
def _bull_suite(rep: VerificationReport, p: dict, rng: random.Random) -> None:
    k = p["k"]
    _odd(k)
    alphabet = _links(p["links"], k)
    vals = subset_values(k, (k - 1) // 2)
    fallback = oracle_runs = extended = 0
    for t, s in p["pairs"]:
        want = (k - 1 - 2 * t) // 2
        for arm in _specs_at_distance(k, s, alphabet):
            spec = MultiSpec.bull(k, t, arm)
            g = build_multi(spec)
            x, y, z = (g.landmark(n) for n in "xyz")
            bad = []
            for sx, sy, sz in itertools.product(vals, repeat=3):
                if overlap(sx, sy) != want:
                    continue
                if _bull_center(k, t, s, sx, sy, sz) is None:
                    fallback += 1
                col = extend_bull_fractional(spec, sx, sy, sz)
                ok = (col is not None and check_fractional(g, col)
                      and (col[x], col[y], col[z]) == (sx, sy, sz))
                if not ok:
                    bad.append([sorted(csp.bits(m)) for m in (sx, sy, sz)])
                extended += ok
                if rng.random() < p["sample"]:
                    oracle_runs += 1
                    res = solve_fractional(g, k, {x: sx, y: sy, z: sz})
                    rep.case({"t": t, "s": s, "arm": str(arm), "sets": [sorted(csp.bits(m)) for m in (sx, sy, sz)],
                              "check": "oracle"}, ok, res.sat)
            rep.case({"t": t, "s": s, "arm": str(arm), "check": "all_extend"}, [], bad)
        # the overlap hypothesis is enforced
        arm = NecklaceSpec.thread(k, s)
        wrong = next(v for v in vals if overlap(vals[0], v) != want)
        try:
            extend_bull_fractional(MultiSpec.bull(k, t, arm), vals[0], wrong, vals[0])
            raised = False
        except HypothesisViolated:
            raised = True
        rep.case({"t": t, "s": s, "check": "hypothesis_enforced"}, True, raised)
    rep.notes.update(center_fallbacks=fallback, oracle_runs=oracle_runs, precolorings_extended=extended)


@suite("claim-4.2-fv", "F_v configurations: forced overlap on the cycle, then bull extension",
       k=5, pairs=[[1, 4], [2, 3]], links="E,C1", samples=20)
def _fv_suite(rep: VerificationReport, p: dict, rng: random.Random) -> None:
    k = p["k"]
    _odd(k)
    alphabet = _links(p["links"], k)
    vals = subset_values(k, (k - 1) // 2)
    for t, s in p["pairs"]:
        for arm in _specs_at_distance(k, s, alphabet):
            fv = build_Fv(t, arm, k)
            x, y, z, v = (fv.landmark(n) for n in ("x", "y", "z", "v"))
            cycle = sorted(set(range(fv.n)) - set(component_without(fv, z, v)))
            base = solve_fractional(fv, k).coloring
            key = {"t": t, "s": s, "arm": str(arm)}
            for _ in range(p["samples"]):
                perm = list(range(k))
                rng.shuffle(perm)
                outer = {w: sum(1 << perm[c] for c in csp.bits(base[w])) for w in cycle}
                outer[z] = rng.choice(vals)
                rep.case({**key, "check": "forced_overlap"}, (k - 1 - 2 * t) // 2, overlap(outer[x], outer[y]))
                col = certify_Fv_extension(fv, k, FractionalColoring(k, outer))
                ok = col is not None and check_fractional(fv, col) and col[z] == outer[z]
                rep.check({**key, "outer_z": sorted(csp.bits(outer[z])), "check": "extends"}, ok)
    # below the threshold t + s >= k no guarantee is claimed
    t, s = 1, k - 2
    short = build_Fv(t, NecklaceSpec.thread(k, s), k)
    base = solve_fractional(short, k).coloring
    outer = {w: base[short.landmark(w)] for w in "xyz"}
    outer = {short.landmark(w): m for w, m in outer.items()}
    try:
        certify_Fv_extension(short, k, FractionalColoring(k, outer))
        raised = False
    except HypothesisViolated:
        raised = True
    rep.case({"t": t, "s": s, "check": "hypothesis_enforced"}, True, raised)


@suite("sec5-odd", "odd-girth construction: no fractional coloring; sets propagate along the y_i", k=5, t=3)
def _odd_girth_suite(rep: VerificationReport, p: dict, rng) -> None:
    k, t = p["k"], p["t"]
    g = build_odd_counterexample(k, t)
    half = (k - 1) // 2
    rep.case({"check": "order"}, 2 * t * k + 1, g.n)
    top = max(2 * t + 1, k)
    odd = sorted(c for c in cycle_spectrum(g, top).present_lengths if c % 2)
    rep.case({"check": "odd_cycles", "max_len": top}, [k], odd)
    res = solve_fractional(g, k)
    rep.notes["nodes_explored"] = res.nodes_explored
    rep.case({"check": "fractional_unsat"}, False, res.sat)
    rep.case({"check": "circular_unsat"}, False, solve_circular(g, k, half).sat)
    v = g.landmark("v")
    h, index = induced_subgraph(g, [w for w in range(g.n) if w != v])
    base = (1 << half) - 1
    vals = subset_values(k, half)
    rep.case({"check": "reduced_sat"}, True, solve_fractional(h, k).sat)
    for i in range(1, 2 * t):
        yi, yj = index[g.landmark(f"y{i}")], index[g.landmark(f"y{i + 1}")]
        same = solve_fractional_domains(h, k, {yi: [base], yj: [base]}).sat
        differ = solve_fractional_domains(h, k, {yi: [base], yj: [m for m in vals if m != base]}).sat
        rep.case({"i": i, "check": "equal_sets_extend"}, True, same)
        rep.case({"i": i, "check": "different_sets_impossible"}, False, differ)
