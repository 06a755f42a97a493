"""Small brute-force oracles, deliberately naive and independent of the package."""
import itertools


def simple_cycle_lengths(n, edges):
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    lengths = set()

    def walk(start, here, seen, length):
        for w in adj[here]:
            if w == start and length >= 3:
                lengths.add(length)
            elif w > start and w not in seen:
                seen.add(w)
                walk(start, w, seen, length + 1)
                seen.discard(w)

    for s in range(n):
        walk(s, s, {s}, 1)
    return lengths


def component_count(n, edges, removed=()):
    alive = [v for v in range(n) if v not in removed]
    parent = {v: v for v in alive}

    def find(v):
        while parent[v] != v:
            v = parent[v]
        return v

    for u, v in edges:
        if u in parent and v in parent:
            parent[find(u)] = find(v)
    return len({find(v) for v in alive})


def _backtrack(n, edges, choices, ok):
    adj = {v: [] for v in range(n)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    val = {}

    def rec(v):
        if v == n:
            return True
        for c in choices[v]:
            if all(ok(c, val[w]) for w in adj[v] if w in val):
                val[v] = c
                if rec(v + 1):
                    return True
                del val[v]
        return False

    return rec(0)


def circular_colorable(n, edges, k, d, pre=None):
    pre = pre or {}
    choices = [[pre[v]] if v in pre else range(k) for v in range(n)]
    return _backtrack(n, edges, choices, lambda a, b: min((a - b) % k, (b - a) % k) >= d)


def fractional_colorable(n, edges, k, pre=None):
    b = (k - 1) // 2
    subsets = [frozenset(c) for c in itertools.combinations(range(k), b)]
    pre = {v: frozenset(s) for v, s in (pre or {}).items()}
    choices = [[pre[v]] if v in pre else subsets for v in range(n)]
    return _backtrack(n, edges, choices, lambda x, y: not x & y)
