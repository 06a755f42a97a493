"""Exact search for graph CSPs with one symmetric relation on every edge.

Values are small integers ``0..V-1`` and domains are Python ints used as bit
sets.  ``compat[a]`` is the bit set of values allowed next to value ``a``.
Search maintains arc consistency, branches on the minimum-remaining-values
variable (lowest id on ties) with values in ascending order, and splits the
undecided variables into independent connected components whenever the
assigned ones disconnect them.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Sequence

from .errors import BudgetExceeded
from .graph import Graph

SEARCH_ORDER_ID = "mrv-lowid/asc/ac/components"
DEFAULT_BUDGET = 10**7


def bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass
class SearchStats:
    nodes: int = 0
    revisions: int = 0

    def as_dict(self) -> dict:
        return {"nodes_explored": self.nodes, "revisions": self.revisions}


class GraphCSP:
    def __init__(self, g: Graph, compat: Sequence[int], budget: int = DEFAULT_BUDGET):
        self.g = g
        self.adj = g.adj
        self.compat = list(compat)
        self.full = (1 << len(self.compat)) - 1
        self.budget = budget
        self.stats = SearchStats()
        self._support: dict[int, int] = {}

    def support(self, mask: int) -> int:
        sup = self._support.get(mask)
        if sup is None:
            sup = 0
            for a in bits(mask):
                sup |= self.compat[a]
            self._support[mask] = sup
        return sup

    def propagate(self, dom: list[int], queue: list[int]) -> bool:
        """Enforce arc consistency; ``queue`` holds vars whose domain shrank."""
        pending = set(queue)
        adj = self.adj
        while queue:
            x = queue.pop()
            pending.discard(x)
            sup = self.support(dom[x])
            for y in adj[x]:
                self.stats.revisions += 1
                dy = dom[y]
                nd = dy & sup
                if nd != dy:
                    if not nd:
                        return False
                    dom[y] = nd
                    if y not in pending:
                        pending.add(y)
                        queue.append(y)
        return True

    def solve(self, domains: list[int]) -> list[int] | None:
        """Return a list of singleton domains, or ``None`` if none exists."""
        dom = list(domains)
        if any(d == 0 for d in dom):
            return None
        if not self.propagate(dom, list(range(len(dom)))):
            return None
        limit = sys.getrecursionlimit()
        if limit < 4 * len(dom) + 1000:
            sys.setrecursionlimit(4 * len(dom) + 1000)
        return self._solve(dom, list(range(len(dom))))

    def _components(self, open_vars: list[int]) -> list[list[int]]:
        todo = set(open_vars)
        comps = []
        for r in open_vars:
            if r not in todo:
                continue
            todo.discard(r)
            comp = [r]
            stack = [r]
            while stack:
                u = stack.pop()
                for w in self.adj[u]:
                    if w in todo:
                        todo.discard(w)
                        comp.append(w)
                        stack.append(w)
            comps.append(comp)
        return comps

    def _solve(self, dom: list[int], scope: list[int]) -> list[int] | None:
        open_vars = [v for v in scope if dom[v] & (dom[v] - 1)]
        if not open_vars:
            return dom
        for comp in self._components(open_vars):
            dom = self._branch(dom, comp)
            if dom is None:
                return None
        return dom

    def _branch(self, dom: list[int], comp: list[int]) -> list[int] | None:
        var = min(comp, key=lambda v: (popcount(dom[v]), v))
        for val in bits(dom[var]):
            self.stats.nodes += 1
            if self.stats.nodes > self.budget:
                raise BudgetExceeded(f"search exceeded {self.budget} nodes", self.stats.nodes)
            trial = dom.copy()
            trial[var] = 1 << val
            if self.propagate(trial, [var]):
                res = self._solve(trial, comp)
                if res is not None:
                    return res
        return None


def symmetry_anchors(g: Graph) -> list[int]:
    """Lowest vertex of each connected component."""
    seen = [False] * g.n
    out = []
    for r in range(g.n):
        if seen[r]:
            continue
        out.append(r)
        seen[r] = True
        stack = [r]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
    return out


def enumerate_all(g: Graph, compat: Sequence[int], domains: list[int], limit: int | None = None):
    """Plain backtracking enumeration of every solution (small oracle use only)."""
    n = g.n
    order = sorted(range(n), key=lambda v: (popcount(domains[v]), v))
    assign = [-1] * n
    count = 0

    def rec(i):
        nonlocal count
        if limit is not None and count >= limit:
            return
        if i == n:
            count += 1
            yield list(assign)
            return
        v = order[i]
        for a in bits(domains[v]):
            if all(assign[w] < 0 or (compat[a] >> assign[w]) & 1 for w in g.adj[v]):
                assign[v] = a
                yield from rec(i + 1)
                assign[v] = -1

    yield from rec(0)
