"""Simple undirected graphs with named landmark vertices.

Vertices are dense 0-based integers.  A :class:`Graph` is immutable; every
transform elsewhere in the package returns a new graph and appends new
vertices after the existing ids, so landmark ids survive construction.
"""
from __future__ import annotations

import hashlib
import json
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .errors import BadLandmark, BadParams, BadVertex, BudgetExceeded, DuplicateEdge, GraphError, InvalidEdge

GRAPH_FORMAT = "ccfc-graph/1"
INF = math.inf
DEFAULT_CYCLE_BUDGET = 10**8


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]
    landmarks: Mapping[str, int] = field(default_factory=dict)

    @property
    def vertex_count(self) -> int:
        return self.n

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def landmark(self, name: str) -> int:
        try:
            return self.landmarks[name]
        except KeyError:
            raise BadLandmark(f"no landmark named {name!r}") from None

    def resolve(self, v: int | str) -> int:
        """Accept either a vertex id or a landmark name."""
        if isinstance(v, str):
            return self.landmark(v)
        if not 0 <= v < self.n:
            raise BadVertex(f"vertex {v} not in graph of order {self.n}")
        return v

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)}, landmarks={dict(self.landmarks)})"


@dataclass(frozen=True)
class CycleSpectrum:
    max_length: int
    present_lengths: frozenset[int]
    steps: int = 0


def build_graph(
    n: int,
    edges: Iterable[tuple[int, int]],
    landmarks: Mapping[str, int] | None = None,
) -> Graph:
    if n < 0:
        raise InvalidEdge(f"negative vertex count {n}")
    seen: set[tuple[int, int]] = set()
    for u, v in edges:
        if u == v:
            raise InvalidEdge(f"self-loop at {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidEdge(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        e = (min(u, v), max(u, v))
        if e in seen:
            raise DuplicateEdge(f"edge {e} listed twice")
        seen.add(e)
    lm = dict(landmarks or {})
    for name, v in lm.items():
        if not isinstance(name, str) or not name:
            raise BadLandmark(f"landmark name {name!r} must be a non-empty string")
        if not (isinstance(v, int) and 0 <= v < n):
            raise BadLandmark(f"landmark {name!r} -> {v} is not a vertex")
    return Graph(n, frozenset(seen), lm)


def cycle_graph(k: int) -> Graph:
    return build_graph(k, [(i, (i + 1) % k) for i in range(k)])


def path_graph(order: int) -> Graph:
    return build_graph(order, [(i, i + 1) for i in range(order - 1)])


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def bfs_distances(g: Graph, source: int) -> list[float]:
    dist: list[float] = [INF] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if dist[w] == INF:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def distance(g: Graph, u: int | str, v: int | str) -> float:
    """Shortest-path length between ``u`` and ``v`` (``inf`` if disconnected)."""
    u, v = g.resolve(u), g.resolve(v)
    return bfs_distances(g, u)[v]


def girth(g: Graph) -> float:
    best: float = INF
    for root in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] >= best:
                break
            for w in g.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def odd_girth(g: Graph, max_len: int | None = None) -> float:
    spec = cycle_spectrum(g, max_len or max(g.n, 3))
    odd = [c for c in spec.present_lengths if c % 2]
    return min(odd) if odd else INF


def cycle_spectrum(g: Graph, max_len: int, budget: int = DEFAULT_CYCLE_BUDGET) -> CycleSpectrum:
    """Exact set of cycle lengths ``<= max_len``.

    Every simple cycle is enumerated from its smallest vertex ``s`` through
    vertices larger than ``s``; a path is abandoned as soon as its length plus
    the distance back to ``s`` (inside the allowed vertex set) exceeds
    ``max_len``.  ``budget`` bounds the number of path extensions.
    """
    if max_len < 3:
        raise BadParams("max_len must be at least 3")
    found: set[int] = set()
    steps = 0
    adj = g.adj
    for s in range(g.n):
        # distances back to s restricted to vertices >= s
        back = [INF] * g.n
        back[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if back[u] >= max_len:
                continue
            for w in adj[u]:
                if w > s and back[w] == INF:
                    back[w] = back[u] + 1
                    queue.append(w)
        on_path = [False] * g.n
        on_path[s] = True
        # iterative DFS; frames hold (vertex, length, next neighbour index)
        stack = [(s, 0, 0)]
        while stack:
            u, length, i = stack.pop()
            nbrs = adj[u]
            if i >= len(nbrs):
                on_path[u] = False
                continue
            stack.append((u, length, i + 1))
            w = nbrs[i]
            if w == s:
                if length >= 2:
                    found.add(length + 1)
                continue
            if w < s or on_path[w] or length + 1 + back[w] > max_len:
                continue
            steps += 1
            if steps > budget:
                raise BudgetExceeded(f"cycle enumeration exceeded {budget} steps", steps)
            on_path[w] = True
            stack.append((w, length + 1, 0))
        on_path[s] = False
    return CycleSpectrum(max_len, frozenset(found), steps)


def connected_components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for r in range(g.n):
        if seen[r]:
            continue
        seen[r] = True
        comp = [r]
        queue = deque([r])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def articulation_points(g: Graph) -> set[int]:
    disc = [-1] * g.n
    low = [0] * g.n
    cut: set[int] = set()
    timer = 0
    for root in range(g.n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        stack = [(root, -1, iter(g.adj[root]))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] < 0:
                    disc[w] = low[w] = timer
                    timer += 1
                    if u == root:
                        root_children += 1
                    stack.append((w, u, iter(g.adj[w])))
                    advanced = True
                    break
                if w != parent:
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[u])
                if p != root and low[u] >= disc[p]:
                    cut.add(p)
        if root_children > 1:
            cut.add(root)
    return cut


def is_two_connected(g: Graph) -> bool:
    if g.n < 3 or len(connected_components(g)) != 1:
        return False
    return not articulation_points(g)


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on ``keep``, relabelled densely in increasing id order."""
    order = sorted(set(keep))
    index = {v: i for i, v in enumerate(order)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    lm = {name: index[v] for name, v in g.landmarks.items() if v in index}
    return build_graph(len(order), edges, lm), index


# -- serialization ---------------------------------------------------------

def graph_to_dict(g: Graph) -> dict:
    return {
        "format": GRAPH_FORMAT,
        "n": g.n,
        "edges": [list(e) for e in g.sorted_edges()],
        "landmarks": dict(sorted(g.landmarks.items(), key=lambda kv: (kv[1], kv[0]))),
    }


def graph_from_dict(data: Mapping) -> Graph:
    if data.get("format") != GRAPH_FORMAT:
        raise GraphError(f"expected format {GRAPH_FORMAT!r}, got {data.get('format')!r}")
    edges = [(int(u), int(v)) for u, v in data["edges"]]
    return build_graph(int(data["n"]), edges, {str(k): int(v) for k, v in data.get("landmarks", {}).items()})


def dumps(g: Graph) -> str:
    return json.dumps(graph_to_dict(g), separators=(",", ":"))


def loads(text: str) -> Graph:
    return graph_from_dict(json.loads(text))


def save(g: Graph, path) -> None:
    with open(path, "w") as fh:
        json.dump(graph_to_dict(g), fh, indent=1)
        fh.write("\n")


def load(path) -> Graph:
    with open(path) as fh:
        return graph_from_dict(json.load(fh))


def graph_hash(g: Graph) -> str:
    return hashlib.sha256(dumps(g).encode()).hexdigest()


def to_dot(g: Graph, name: str = "G") -> str:
    names: dict[int, list[str]] = {}
    for label, v in g.landmarks.items():
        names.setdefault(v, []).append(label)
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        if v in names:
            label = ",".join(sorted(names[v]))
            lines.append(f'  {v} [label="{label}"];')
        else:
            lines.append(f"  {v};")
    for u, v in g.sorted_edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
