"""Circular ``(k, d)``-coloring and C_k-coloring.

A circular ``(k, d)``-coloring maps vertices to ``Z_k`` so that adjacent
colors sit at circular distance at least ``d``; the C_k-coloring case is
``d = (k - 1) / 2`` with ``k`` odd.

Besides the checker and the exact solver this module holds the constructive
pieces for necklaces and crowns built in :mod:`ccfc.gadgets`: the cycle
precoloring criterion, color transfer through the replacement operation,
reachable-set propagation along a necklace and the crown extension.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Mapping, Sequence

from . import csp
from .errors import (
    BadParams,
    BadSpec,
    ConstructionError,
    InconsistentPrecoloring,
    InvalidInput,
    ModulusMismatch,
    NotCoprime,
    PartialColoring,
)
from .gadgets import (
    CenterKind,
    Layout,
    MultiSpec,
    NecklaceSpec,
    multi_layout,
    necklace_layout,
    replace_all_layout,
)
from .graph import Graph


def circ_dist(a: int, b: int, k: int) -> int:
    diff = (a - b) % k
    return min(diff, k - diff)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % q for q in range(2, int(n**0.5) + 1))


@dataclass(frozen=True)
class CircularColoring:
    """``assignment`` maps vertex ids to residues; it may be partial."""

    k: int
    d: int
    assignment: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.d < 1 or self.k < 2 * self.d:
            raise InvalidInput(f"need 1 <= d and k >= 2d, got k={self.k}, d={self.d}")
        object.__setattr__(self, "assignment", dict(self.assignment))
        for v, c in self.assignment.items():
            if not 0 <= c < self.k:
                raise InvalidInput(f"color {c} of vertex {v} outside Z_{self.k}")

    @classmethod
    def ck(cls, k: int, assignment: Mapping[int, int] | None = None) -> "CircularColoring":
        if k % 2 == 0:
            raise InvalidInput(f"C_k-coloring needs odd k, got {k}")
        return cls(k, (k - 1) // 2, assignment or {})

    def __getitem__(self, v: int) -> int:
        return self.assignment[v]

    def __len__(self) -> int:
        return len(self.assignment)


def _edge_ok(a: int, b: int, k: int, d: int) -> bool:
    return circ_dist(a, b, k) >= d


def check_circular(g: Graph, col: CircularColoring) -> bool:
    missing = [v for v in range(g.n) if v not in col.assignment]
    if missing:
        raise PartialColoring(f"{len(missing)} vertices uncolored, first {missing[0]}")
    asg = col.assignment
    return all(_edge_ok(asg[u], asg[v], col.k, col.d) for u, v in g.edges)


@dataclass(frozen=True)
class SolveResult:
    sat: bool
    coloring: object | None
    nodes_explored: int
    revisions: int
    search_order: str = csp.SEARCH_ORDER_ID

    def __bool__(self) -> bool:
        return self.sat


def _validate_precoloring(g: Graph, assignment: Mapping[int, object], ok) -> None:
    for v in assignment:
        g.resolve(v)
    for u, v in g.edges:
        if u in assignment and v in assignment and not ok(assignment[u], assignment[v]):
            raise InconsistentPrecoloring(f"precolored edge ({u}, {v}) violates the constraint")


def circular_compat(k: int, d: int) -> list[int]:
    return [sum(1 << b for b in range(k) if circ_dist(a, b, k) >= d) for a in range(k)]


def solve_circular(
    g: Graph,
    k: int,
    d: int,
    pre: CircularColoring | Mapping[int, int] | None = None,
    budget: int = csp.DEFAULT_BUDGET,
    symmetry: bool = True,
) -> SolveResult:
    """Decide whether ``pre`` extends to a circular ``(k, d)``-coloring of ``g``.

    Without a precoloring the lowest vertex of every component is fixed to
    color 0, which loses nothing since rotating all colors preserves validity.
    """
    if isinstance(pre, CircularColoring):
        if (pre.k, pre.d) != (k, d):
            raise InvalidInput("precoloring parameters differ from (k, d)")
        assignment = pre.assignment
    else:
        assignment = dict(pre or {})
        CircularColoring(k, d, assignment)
    _validate_precoloring(g, assignment, lambda a, b: _edge_ok(a, b, k, d))
    full = (1 << k) - 1
    domains = [full] * g.n
    for v, c in assignment.items():
        domains[v] = 1 << c
    if not assignment and symmetry:
        for r in csp.symmetry_anchors(g):
            domains[r] = 1
    engine = csp.GraphCSP(g, circular_compat(k, d), budget)
    sol = engine.solve(domains)
    stats = engine.stats
    if sol is None:
        return SolveResult(False, None, stats.nodes, stats.revisions)
    col = CircularColoring(k, d, {v: m.bit_length() - 1 for v, m in enumerate(sol)})
    return SolveResult(True, col, stats.nodes, stats.revisions)


# -- cycles and the replacement operation -----------------------------------

def cycle_precolor_feasible(k: int, i: int, j: int, ci: int, cj: int) -> bool:
    """Whether colors ``ci`` at position ``i`` and ``cj`` at ``j`` of C_k extend.

    Positions are taken mod ``k``.  Every C_k-coloring of a k-cycle walks with
    a constant step of (k-1)/2 or (k+1)/2, which gives the test below.
    """
    diff = (ci - cj) % k
    gap = (i - j) % k
    return any(diff == (m * gap) % k for m in ((k - 1) // 2, (k + 1) // 2))


def _cycle_fill(k: int, cycle: Sequence[int], pos: int, c0: int, c1: int) -> dict[int, int] | None:
    """Color ``cycle`` (a k-cycle in order) with ``c0`` at index 0 and ``c1`` at ``pos``."""
    for m in ((k - 1) // 2, (k + 1) // 2):
        if (c0 + m * pos) % k == c1 % k:
            return {v: (c0 + m * j) % k for j, v in enumerate(cycle)}
    return None


def _check_ck_input(g: Graph, col: CircularColoring) -> None:
    if col.k % 2 == 0 or col.d != (col.k - 1) // 2:
        raise InvalidInput("expected a C_k-coloring with odd k and d = (k-1)/2")
    if set(col.assignment) != set(range(g.n)) or not check_circular(g, col):
        raise InvalidInput("input is not a valid C_k-coloring of its graph")


def transfer_to_replacement(g: Graph, col: CircularColoring, d: int) -> tuple[Graph, CircularColoring]:
    """Map a C_k-coloring of ``g`` to one of ``g`` with every edge d-C_k-replaced.

    Original vertices get ``d * color``; every replacement cycle is filled in
    with a constant step.
    """
    k = col.k
    if gcd(d, k) != 1:
        raise NotCoprime(f"gcd({d}, {k}) != 1")
    _check_ck_input(g, col)
    h, cycles = replace_all_layout(g, d, k)
    out = {v: (d * c) % k for v, c in col.assignment.items()}
    for cyc in cycles:
        fill = _cycle_fill(k, cyc, d, out[cyc[0]], out[cyc[d]])
        if fill is None:
            raise ConstructionError(f"replacement cycle at {cyc[0]}-{cyc[d]} cannot be filled")
        out.update(fill)
    return h, CircularColoring.ck(k, out)


def inverse_transfer(g: Graph, col: CircularColoring, d: int) -> CircularColoring:
    """Recover a C_k-coloring of ``g`` from one of its d-C_k-replacement.

    ``col`` needs to cover at least the original vertices ``0..g.n-1``.
    """
    k = col.k
    if gcd(d, k) != 1:
        raise NotCoprime(f"gcd({d}, {k}) != 1")
    if any(v not in col.assignment for v in range(g.n)):
        raise InvalidInput("coloring does not cover every original vertex")
    inv = pow(d, -1, k)
    phi = CircularColoring.ck(k, {v: (inv * col.assignment[v]) % k for v in range(g.n)})
    if not check_circular(g, phi):
        raise InvalidInput("input is not the restriction of a replacement-graph coloring")
    return phi


# -- reachable sets along necklaces ----------------------------------------

@dataclass(frozen=True)
class AvailableSet:
    """A subset of ``Z_k`` held as a bit set."""

    k: int
    members: int = 0

    def __post_init__(self):
        if self.members >> self.k:
            raise InvalidInput(f"members outside Z_{self.k}")

    @classmethod
    def of(cls, k: int, colors: Iterable[int]) -> "AvailableSet":
        return cls(k, sum(1 << (c % k) for c in set(c % k for c in colors)))

    def __iter__(self):
        return csp.bits(self.members)

    def __len__(self) -> int:
        return csp.popcount(self.members)

    def __contains__(self, c: int) -> bool:
        return bool(self.members >> (c % self.k) & 1)

    def to_set(self) -> set[int]:
        return set(self)

    def shift(self, o: int) -> "AvailableSet":
        o %= self.k
        full = (1 << self.k) - 1
        m = ((self.members << o) | (self.members >> (self.k - o))) & full
        return AvailableSet(self.k, m)

    def __or__(self, other: "AvailableSet") -> "AvailableSet":
        _same_modulus(self, other)
        return AvailableSet(self.k, self.members | other.members)

    def __and__(self, other: "AvailableSet") -> "AvailableSet":
        _same_modulus(self, other)
        return AvailableSet(self.k, self.members & other.members)

    def __repr__(self) -> str:
        return f"AvailableSet(k={self.k}, {sorted(self)})"


def _same_modulus(a: AvailableSet, b: AvailableSet) -> None:
    if a.k != b.k:
        raise ModulusMismatch(f"moduli differ: {a.k} vs {b.k}")


def sumset(a: AvailableSet, b: AvailableSet) -> AvailableSet:
    _same_modulus(a, b)
    out = 0
    for y in b:
        out |= a.shift(y).members
    return AvailableSet(a.k, out)


def link_offsets(spec: NecklaceSpec) -> list[int]:
    """Color step across each link, up to sign."""
    half = (spec.k - 1) // 2
    return [half * link.offset() for link in spec.links]


def _step(s: AvailableSet, o: int) -> AvailableSet:
    return AvailableSet(s.k, s.shift(o).members | s.shift(-o).members)


def propagate_necklace(spec: NecklaceSpec, start: AvailableSet) -> list[AvailableSet]:
    """Reachable color sets of the anchors ``x_0 .. x_{s+1}``."""
    if start.k != spec.k:
        raise ModulusMismatch(f"start set modulus {start.k} differs from {spec.k}")
    if not len(start):
        raise InvalidInput("start set is empty")
    out = [start]
    for o in link_offsets(spec):
        out.append(_step(out[-1], o))
    return out


def _backward_anchor_colors(
    spec: NecklaceSpec, sets: Sequence[AvailableSet], c_end: int
) -> list[int] | None:
    """Anchor colors ending in ``c_end``, each chosen as the lowest feasible residue."""
    p = spec.k
    if c_end % p not in sets[-1]:
        return None
    offs = link_offsets(spec)
    colors = [c_end % p]
    for i in range(len(offs) - 1, -1, -1):
        nxt = colors[-1]
        o = offs[i]
        cands = sets[i].members & ((1 << ((nxt - o) % p)) | (1 << ((nxt + o) % p)))
        if not cands:
            raise ConstructionError("backward selection left the reachable set")
        colors.append((cands & -cands).bit_length() - 1)
    colors.reverse()
    return colors


def _fill_layout(layout: Layout, p: int, anchors: Sequence[int], out: dict[int, int]) -> None:
    for pl, c0, c1 in zip(layout, anchors, anchors[1:]):
        out[pl.start] = c0
        out[pl.end] = c1
        if pl.is_edge:
            continue
        first, second = pl.threads
        cycle = [pl.start, *first, pl.end, *reversed(second)]
        fill = _cycle_fill(p, cycle, len(first) + 1, c0, c1)
        if fill is None:
            raise ConstructionError(f"cycle link {pl.start}-{pl.end} rejected its anchors")
        out.update(fill)


def _extend_layout(spec: NecklaceSpec, layout: Layout, c_start: int, c_end: int, out: dict[int, int]) -> bool:
    p = spec.k
    sets = propagate_necklace(spec, AvailableSet.of(p, [c_start]))
    anchors = _backward_anchor_colors(spec, sets, c_end)
    if anchors is None:
        return False
    _fill_layout(layout, p, anchors, out)
    return True


def _require_prime(p: int) -> None:
    if not is_prime(p) or p < 3:
        raise BadParams(f"p must be an odd prime, got {p}")


def extend_necklace_ck(spec: NecklaceSpec, p: int, cx: int, cy: int) -> CircularColoring | None:
    """Extend end colors ``cx``, ``cy`` to a C_p-coloring of the necklace.

    Returns ``None`` when no extension exists.  Vertex ids are those of
    :func:`ccfc.gadgets.build_necklace`.
    """
    _require_prime(p)
    if spec.k != p:
        raise BadParams(f"necklace modulus {spec.k} differs from p={p}")
    _, layout = necklace_layout(spec)
    out: dict[int, int] = {}
    if not _extend_layout(spec, layout, cx, cy, out):
        return None
    return CircularColoring.ck(p, out)


def _end_color_list(spec: MultiSpec, end_colors) -> list[int]:
    if isinstance(end_colors, Mapping):
        try:
            return [end_colors[f"y{i}"] for i in range(1, len(spec.arms) + 1)]
        except KeyError as exc:
            raise InvalidInput(f"missing end color {exc}") from None
    colors = list(end_colors)
    if len(colors) != len(spec.arms):
        raise InvalidInput(f"expected {len(spec.arms)} end colors, got {len(colors)}")
    return colors


def crown_guarantee(spec: MultiSpec, p: int) -> bool:
    """Whether the arm profile meets the sufficient condition for always extending."""
    ks = spec.profile
    t = len(ks)
    return max(ks) <= p - 2 and sum(ks) >= (p - 2) * t - p + 1


def extend_crown_ck(spec: MultiSpec, p: int, end_colors) -> CircularColoring | None:
    """Extend colors of the arm ends ``y1..yt`` over a necklace or crown.

    Each arm yields the exact set of colors its root may take; a vertex
    center takes the lowest common color, a central cycle is walked with a
    constant step chosen so that every attachment point lands in its set.
    Returns ``None`` when no extension exists.
    """
    _require_prime(p)
    if spec.k != p:
        raise BadParams(f"spec modulus {spec.k} differs from p={p}")
    if spec.center is CenterKind.BULL:
        raise BadSpec("bull-necklaces are not handled by the C_p extension")
    colors = _end_color_list(spec, end_colors)
    lay = multi_layout(spec)
    roots = []
    for arm, c in zip(spec.arms, colors):
        roots.append(propagate_necklace(arm.reversed(), AvailableSet.of(p, [c]))[-1])

    if spec.center is CenterKind.VERTEX:
        common = (1 << p) - 1
        for r in roots:
            common &= r.members
        if not common:
            return None
        root_colors = [(common & -common).bit_length() - 1] * len(roots)
        out: dict[int, int] = {}
    else:
        out = {}
        for m in ((p - 1) // 2, (p + 1) // 2):
            common = (1 << p) - 1
            for r, d in zip(roots, spec.offsets):
                common &= r.shift(-m * d).members
            if common:
                b = (common & -common).bit_length() - 1
                out = {v: (b + m * j) % p for j, v in enumerate(lay.cycle)}
                root_colors = [(b + m * d) % p for d in spec.offsets]
                break
        else:
            return None

    for arm, layout, rc, c in zip(spec.arms, lay.arms, root_colors, colors):
        if not _extend_layout(arm, layout, rc, c, out):
            raise ConstructionError("arm rejected a root color from its reachable set")
    return CircularColoring.ck(p, out)


# -- reducibility certification ----------------------------------------------

@dataclass
class ReducibilityReport:
    reducible: bool
    total: int
    consistent: int
    failures: list[dict[str, int]]
    nodes_explored: int = 0


def certify_reducible_ck(h: Graph, ends: Sequence[str], p: int, budget: int = csp.DEFAULT_BUDGET) -> ReducibilityReport:
    """Check that every consistent C_p-precoloring of ``ends`` extends over ``h``."""
    if p % 2 == 0 or p < 3:
        raise BadParams(f"p must be odd and >= 3, got {p}")
    ids = [h.landmark(name) for name in ends]
    d = (p - 1) // 2
    total = consistent = nodes = 0
    failures = []
    for combo in itertools.product(range(p), repeat=len(ids)):
        total += 1
        pre: dict[int, int] = {}
        clash = False
        for v, c in zip(ids, combo):
            if pre.get(v, c) != c:
                clash = True
            pre[v] = c
        if clash or any(h.has_edge(u, v) and not _edge_ok(pre[u], pre[v], p, d) for u in pre for v in pre if u < v):
            continue
        consistent += 1
        res = solve_circular(h, p, d, pre, budget)
        nodes += res.nodes_explored
        if not res.sat:
            failures.append(dict(zip(ends, combo)))
    return ReducibilityReport(not failures, total, consistent, failures, nodes)
