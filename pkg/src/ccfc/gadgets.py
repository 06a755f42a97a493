"""Constructors for the graph families used throughout the package.

A necklace is described symbolically by a :class:`NecklaceSpec`: a sequence of
links between consecutive anchors, each link either a plain edge or a
``k``-cycle made of a ``split``-thread and a ``(k - 2 - split)``-thread.
Building a spec also yields a *layout* (a tuple of :class:`PlacedLink`) that
records which vertex ids realise each link; the coloring modules work on
layouts so that they can color graphs produced here or parsed back out of a
larger graph.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BadOffset, BadParams, BadSpec, MissingEdge
from .graph import Graph, build_graph


# -- specs -----------------------------------------------------------------

@dataclass(frozen=True)
class Link:
    """``split is None`` is a plain edge; otherwise a ``k``-cycle link."""

    split: int | None = None

    @property
    def is_edge(self) -> bool:
        return self.split is None

    def length(self, k: int) -> int:
        """Distance contributed between the two anchors."""
        if self.split is None:
            return 1
        return min(self.split, k - 2 - self.split) + 1

    def offset(self) -> int:
        """Position of the far anchor along the first thread."""
        return 1 if self.split is None else self.split + 1

    def __str__(self) -> str:
        return "E" if self.split is None else f"C{self.split}"


EDGE = Link()


def CYCLE(split: int) -> Link:
    return Link(split)


@dataclass(frozen=True)
class NecklaceSpec:
    k: int
    links: tuple[Link, ...]

    def __post_init__(self):
        object.__setattr__(self, "links", tuple(self.links))
        if self.k < 3 or self.k % 2 == 0:
            raise BadSpec(f"modulus must be odd and >= 3, got {self.k}")
        if not self.links:
            raise BadSpec("a necklace needs at least one link")
        for link in self.links:
            if not isinstance(link, Link):
                raise BadSpec(f"not a link: {link!r}")
            if link.split is not None and not 0 <= link.split <= self.k - 2:
                raise BadSpec(f"split {link.split} outside 0..{self.k - 2}")

    @classmethod
    def parse(cls, k: int, text: str) -> "NecklaceSpec":
        """Parse ``"E,C1,E"`` style link lists (``E`` edge, ``C<split>`` cycle)."""
        links = []
        for tok in text.replace(" ", "").split(","):
            if tok.upper() == "E":
                links.append(EDGE)
            elif tok[:1].upper() == "C" and tok[1:].isdigit():
                links.append(CYCLE(int(tok[1:])))
            else:
                raise BadSpec(f"cannot parse link {tok!r}")
        return cls(k, tuple(links))

    @classmethod
    def thread(cls, k: int, length: int) -> "NecklaceSpec":
        return cls(k, (EDGE,) * length)

    @property
    def s(self) -> int:
        """Number of internal anchors."""
        return len(self.links) - 1

    @property
    def distance(self) -> int:
        return sum(link.length(self.k) for link in self.links)

    @property
    def is_thread(self) -> bool:
        return all(link.is_edge for link in self.links)

    def reversed(self) -> "NecklaceSpec":
        # CYCLE(split) seen from the other anchor still has a split-thread
        return NecklaceSpec(self.k, tuple(reversed(self.links)))

    def __str__(self) -> str:
        return ",".join(str(link) for link in self.links)


class CenterKind(enum.Enum):
    VERTEX = "vertex"
    CYCLE = "cycle"
    BULL = "bull"


@dataclass(frozen=True)
class MultiSpec:
    """Several necklace arms around a common center.

    Arms are oriented from the center outwards.  ``offsets`` gives, for a
    crown (``CenterKind.CYCLE``), the position on the central ``k``-cycle where
    each arm attaches.  A bull has three arms: two plain threads of
    ``bull_t`` edges (to ``x`` and ``y``) and one necklace (to ``z``).
    """

    k: int
    arms: tuple[NecklaceSpec, ...]
    center: CenterKind = CenterKind.VERTEX
    offsets: tuple[int, ...] = ()
    bull_t: int = 0

    def __post_init__(self):
        object.__setattr__(self, "arms", tuple(self.arms))
        object.__setattr__(self, "offsets", tuple(self.offsets))
        for arm in self.arms:
            if arm.k != self.k:
                raise BadSpec("every arm must share the multi-spec modulus")
        if self.center is CenterKind.BULL:
            if len(self.arms) != 3:
                raise BadSpec("a bull has exactly three arms")
            for arm in self.arms[:2]:
                if not arm.is_thread or len(arm.links) != self.bull_t:
                    raise BadSpec(f"bull side arms must be plain threads of {self.bull_t} edges")
            if self.bull_t < 1:
                raise BadSpec("bull_t must be at least 1")
        else:
            if len(self.arms) < 3:
                raise BadSpec("necklace and crown centers need at least three arms")
        if self.center is CenterKind.CYCLE:
            if len(self.offsets) != len(self.arms):
                raise BadSpec("a crown needs one offset per arm")
            for d in self.offsets:
                if not 0 <= d < self.k:
                    raise BadSpec(f"crown offset {d} outside 0..{self.k - 1}")

    @classmethod
    def bull(cls, k: int, t: int, arm: NecklaceSpec) -> "MultiSpec":
        side = NecklaceSpec.thread(k, t)
        return cls(k, (side, side, arm), CenterKind.BULL, bull_t=t)

    @property
    def profile(self) -> tuple[int, ...]:
        """Number of internal anchors of each arm."""
        return tuple(arm.s for arm in self.arms)


# -- layouts ---------------------------------------------------------------

@dataclass(frozen=True)
class PlacedLink:
    """A link realised on concrete vertex ids.

    ``threads`` lists the interior vertices of each ``start -> end`` route in
    order from ``start``; a plain edge is ``((),)``.
    """

    start: int
    end: int
    threads: tuple[tuple[int, ...], ...]

    @property
    def is_edge(self) -> bool:
        return len(self.threads) == 1

    def length(self) -> int:
        return min(len(t) for t in self.threads) + 1

    def cycle_order(self) -> list[int]:
        """The cycle read from ``start`` with ``end`` at distance ``length()``."""
        a, b = self.threads
        if len(a) > len(b):
            a, b = b, a
        return [self.start, *a, self.end, *reversed(b)]

    def link(self) -> Link:
        return EDGE if self.is_edge else CYCLE(len(self.threads[0]))


Layout = tuple[PlacedLink, ...]


def layout_distance(layout: Sequence[PlacedLink]) -> int:
    return sum(pl.length() for pl in layout)


def layout_vertices(layout: Sequence[PlacedLink]) -> list[int]:
    out = {layout[0].start}
    for pl in layout:
        out.add(pl.end)
        for th in pl.threads:
            out.update(th)
    return sorted(out)


class _Builder:
    def __init__(self, n: int = 0, edges: Iterable[tuple[int, int]] = ()):
        self.n = n
        self.edges: list[tuple[int, int]] = list(edges)
        self.landmarks: dict[str, int] = {}

    def new(self) -> int:
        self.n += 1
        return self.n - 1

    def path(self, a: int, b: int, interior: int) -> tuple[int, ...]:
        inner = tuple(self.new() for _ in range(interior))
        seq = (a, *inner, b)
        self.edges.extend(zip(seq, seq[1:]))
        return inner

    def necklace(self, spec: NecklaceSpec, start: int) -> Layout:
        placed = []
        cur = start
        for link in spec.links:
            if link.is_edge:
                nxt = self.new()
                self.edges.append((cur, nxt))
                placed.append(PlacedLink(cur, nxt, ((),)))
            else:
                first = tuple(self.new() for _ in range(link.split))
                nxt = self.new()
                seq = (cur, *first, nxt)
                self.edges.extend(zip(seq, seq[1:]))
                second = self.path(cur, nxt, spec.k - 2 - link.split)
                placed.append(PlacedLink(cur, nxt, (first, second)))
            cur = nxt
        return tuple(placed)

    def graph(self) -> Graph:
        return build_graph(self.n, self.edges, self.landmarks)


# -- necklaces and multi-armed configurations ------------------------------

def necklace_layout(spec: NecklaceSpec) -> tuple[Graph, Layout]:
    b = _Builder()
    x = b.new()
    layout = b.necklace(spec, x)
    b.landmarks.update(x=x, y=layout[-1].end)
    return b.graph(), layout


def build_necklace(spec: NecklaceSpec) -> Graph:
    return necklace_layout(spec)[0]


@dataclass(frozen=True)
class MultiLayout:
    graph: Graph
    arms: tuple[Layout, ...]
    center: int
    cycle: tuple[int, ...] = ()


def multi_layout(spec: MultiSpec) -> MultiLayout:
    b = _Builder()
    cycle: tuple[int, ...] = ()
    if spec.center is CenterKind.CYCLE:
        cycle = tuple(b.new() for _ in range(spec.k))
        b.edges.extend((cycle[i], cycle[(i + 1) % spec.k]) for i in range(spec.k))
        roots = [cycle[d] for d in spec.offsets]
        center = cycle[0]
        b.landmarks["y0"] = center
    else:
        center = b.new()
        roots = [center] * len(spec.arms)
    arms = tuple(b.necklace(arm, root) for arm, root in zip(spec.arms, roots))
    if spec.center is CenterKind.BULL:
        b.landmarks.update(v=center, x=arms[0][-1].end, y=arms[1][-1].end, z=arms[2][-1].end)
    else:
        if spec.center is CenterKind.VERTEX:
            b.landmarks["center"] = center
        for i, arm in enumerate(arms, 1):
            b.landmarks[f"y{i}"] = arm[-1].end
    return MultiLayout(b.graph(), arms, center, cycle)


def build_multi(spec: MultiSpec) -> Graph:
    return multi_layout(spec).graph


# -- replacement operations -------------------------------------------------

def _check_replace_params(d: int, k: int) -> None:
    if k < 3 or k % 2 == 0:
        raise BadParams(f"k must be odd and >= 3, got {k}")
    if not 1 <= d <= k - 1:
        raise BadOffset(f"offset d={d} outside 1..{k - 1}")


def _replace(b: _Builder, x: int, y: int, d: int, k: int) -> tuple[int, ...]:
    """Add a k-cycle v_0..v_{k-1} with v_0 = x, v_d = y; return it in order."""
    cyc = [x]
    for i in range(1, k):
        cyc.append(y if i == d else b.new())
    b.edges.extend((cyc[i], cyc[(i + 1) % k]) for i in range(k))
    return tuple(cyc)


def d_ck_replace_edge(g: Graph, e: tuple[int, int], d: int, k: int) -> Graph:
    _check_replace_params(d, k)
    x, y = e
    if not g.has_edge(x, y):
        raise MissingEdge(f"edge {e} not in graph")
    key = (min(x, y), max(x, y))
    b = _Builder(g.n, [f for f in g.sorted_edges() if f != key])
    b.landmarks.update(g.landmarks)
    _replace(b, x, y, d, k)
    return b.graph()


def replace_all_layout(g: Graph, d: int, k: int) -> tuple[Graph, list[tuple[int, ...]]]:
    """``G(d, k)`` together with the replacement cycle of each original edge.

    Edges are processed in sorted order, each ``(u, v)`` with ``u < v``
    mapped to ``v_0 = u`` and ``v_d = v``.
    """
    _check_replace_params(d, k)
    b = _Builder(g.n)
    b.landmarks.update(g.landmarks)
    cycles = [_replace(b, u, v, d, k) for u, v in g.sorted_edges()]
    return b.graph(), cycles


def d_ck_replace_all(g: Graph, d: int, k: int) -> Graph:
    return replace_all_layout(g, d, k)[0]


# -- named constructions ------------------------------------------------------

def build_nonprime_gadget(s: int, t: int, m: int) -> Graph:
    """An (m+1)-cycle z_0..z_m with every edge but z_m z_0 s-C_k-replaced, k = s*t."""
    k = s * t
    if s <= 1 or t < s or k % 2 == 0 or m <= k:
        raise BadParams(f"need 1 < s <= t, s*t odd and m > s*t; got s={s}, t={t}, m={m}")
    b = _Builder(m + 1)
    for i in range(m + 1):
        b.landmarks[f"z{i}"] = i
    for i in range(m):
        _replace(b, i, i + 1, s, k)
    b.edges.append((m, 0))
    return b.graph()


def build_devos_wheel(p: int) -> Graph:
    """A (2p-3)-cycle joined to a new center by internally disjoint (p-2)-paths."""
    if p < 5 or p % 2 == 0:
        raise BadParams(f"p must be odd and >= 5, got {p}")
    rim = 2 * p - 3
    b = _Builder()
    center = b.new()
    zs = [b.new() for _ in range(rim)]
    b.edges.extend((zs[i], zs[(i + 1) % rim]) for i in range(rim))
    for z in zs:
        b.path(center, z, p - 3)
    b.landmarks["center"] = center
    for i, z in enumerate(zs):
        b.landmarks[f"z{i}"] = z
    return b.graph()


def build_hp(p: int) -> Graph:
    return d_ck_replace_all(build_devos_wheel(p), (p - 1) // 2, p)


def subdivide(g: Graph, length: int) -> Graph:
    """Replace every edge by a path of ``length`` edges."""
    b = _Builder(g.n)
    b.landmarks.update(g.landmarks)
    for u, v in g.sorted_edges():
        b.path(u, v, length - 1)
    return b.graph()


def build_five_color_reduction(g: Graph) -> Graph:
    h = subdivide(g, 3)
    f = d_ck_replace_all(h, 2, 5) if h.edges else h
    lm = dict(g.landmarks)
    lm.update({f"g{v}": v for v in range(g.n)})
    return Graph(f.n, f.edges, lm)


def build_odd_counterexample(k: int, t: int) -> Graph:
    """2t k-cycles chained through their distinguished paths x_i y_i z_i, closed by v.

    Landmarks are ``x1..x{2t}``, ``y1..``, ``z1..`` and ``v``.
    """
    if k < 5 or k % 2 == 0 or t < 1:
        raise BadParams(f"need odd k >= 5 and t >= 1; got k={k}, t={t}")
    b = _Builder()
    xs, ys, zs = [], [], []
    for i in range(2 * t):
        cyc = [b.new() for _ in range(k)]
        b.edges.extend((cyc[j], cyc[(j + 1) % k]) for j in range(k))
        xs.append(cyc[0])
        ys.append(cyc[1])
        zs.append(cyc[2])
    for i in range(2 * t - 1):
        b.edges.extend([(xs[i], ys[i + 1]), (zs[i], ys[i + 1])])
    v = b.new()
    b.edges.extend([(v, xs[-1]), (v, zs[-1]), (v, ys[0])])
    for i in range(2 * t):
        b.landmarks[f"x{i + 1}"] = xs[i]
        b.landmarks[f"y{i + 1}"] = ys[i]
        b.landmarks[f"z{i + 1}"] = zs[i]
    b.landmarks["v"] = v
    return b.graph()


def build_Fv(t: int, arm: NecklaceSpec, k: int) -> Graph:
    """A bull with side threads of length t, closed into a k-cycle by an (x,y)-path."""
    if arm.k != k:
        raise BadParams("arm modulus differs from k")
    if not 1 <= t <= (k - 1) // 2:
        raise BadParams(f"t must lie in 1..{(k - 1) // 2}, got {t}")
    lay = multi_layout(MultiSpec.bull(k, t, arm))
    g = lay.graph
    b = _Builder(g.n, g.sorted_edges())
    b.landmarks.update(g.landmarks)
    b.path(g.landmark("x"), g.landmark("y"), k - 2 * t - 1)
    return b.graph()


# -- recovering layouts from graphs ----------------------------------------

def parse_necklace(g: Graph, start: int, end: int, k: int) -> Layout:
    """Recover the link layout of a necklace from ``start`` to ``end``.

    ``g`` must contain the necklace only.  From each anchor the forward block
    is a plain edge (one unvisited neighbour) or a ``k``-cycle (two); cycle
    routes are followed through degree-2 vertices to the far anchor.
    """
    visited = {start}
    cur = start
    placed: list[PlacedLink] = []
    while cur != end:
        fwd = [w for w in g.adj[cur] if w not in visited]
        if len(fwd) == 1:
            placed.append(PlacedLink(cur, fwd[0], ((),)))
            cur = fwd[0]
            visited.add(cur)
            continue
        if len(fwd) != 2:
            raise BadSpec(f"vertex {cur} does not start a necklace link")
        routes = []
        for first in fwd:
            route: list[int] = []
            prev, here = cur, first
            while here != end and g.degree(here) == 2:
                route.append(here)
                prev, here = here, next(w for w in g.adj[here] if w != prev)
            routes.append((tuple(route), here))
        (r1, e1), (r2, e2) = routes
        if e1 != e2 or len(r1) + len(r2) + 2 != k:
            raise BadSpec(f"block after {cur} is not a {k}-cycle link")
        placed.append(PlacedLink(cur, e1, (r1, r2)))
        visited.update(r1, r2)
        visited.add(e1)
        cur = e1
    if not placed:
        raise BadSpec("start and end coincide")
    return tuple(placed)


def component_without(g: Graph, root: int, removed: int) -> list[int]:
    """Vertices reachable from ``root`` in ``g - removed``."""
    seen = {root}
    stack = [root]
    while stack:
        u = stack.pop()
        for w in g.adj[u]:
            if w != removed and w not in seen:
                seen.add(w)
                stack.append(w)
    return sorted(seen)
