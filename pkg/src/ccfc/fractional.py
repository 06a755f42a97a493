"""Fractional ``(k : (k-1)/2)``-coloring.

Every vertex receives a ``(k-1)/2``-subset of the 0-based palette
``{0, ..., k-1}`` and adjacent vertices receive disjoint subsets.  Subsets are
stored as int bit masks throughout.

The constructive part colors necklaces from the overlap of their end sets:
a necklace at distance ``t`` is split at the far anchor ``u`` of its first
link, ``phi(u)`` is assembled from the four regions cut out by the end sets
(sizes ``a, b, c`` and the remainder, obtained from a small integer system
solved exactly over quarter-integers) and both pieces are colored
recursively.  A bull (two short threads and one necklace on a common vertex
``v``) first chooses ``phi(v)`` and then colors its three arms the same way.
"""
from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

from . import csp
from .errors import (
    BadParams,
    ConstructionError,
    HypothesisViolated,
    InconsistentPrecoloring,
    InvalidInput,
    PartialColoring,
)
from .gadgets import (
    CenterKind,
    Layout,
    MultiSpec,
    NecklaceSpec,
    PlacedLink,
    layout_distance,
    multi_layout,
    necklace_layout,
    parse_necklace,
)
from .graph import Graph, induced_subgraph
from .circular import SolveResult

Q = Fraction(1, 4)


def mask_of(colors: Iterable[int]) -> int:
    return sum(1 << c for c in set(colors))


def colors_of(mask: int) -> list[int]:
    return list(csp.bits(mask))


def _as_mask(s) -> int:
    return s if isinstance(s, int) else mask_of(s)


def _lowest(mask: int, count: int) -> int:
    """The ``count`` lowest colors of ``mask``."""
    out = 0
    for _ in range(count):
        low = mask & -mask
        out |= low
        mask ^= low
    return out


def _check_k(k: int) -> None:
    if k < 3 or k % 2 == 0:
        raise BadParams(f"k must be odd and >= 3, got {k}")


@dataclass(frozen=True)
class FractionalColoring:
    """``assignment`` maps vertex ids to color masks; ``b`` defaults to (k-1)/2."""

    k: int
    assignment: Mapping[int, int] = field(default_factory=dict)
    b: int | None = None

    def __post_init__(self):
        if self.k < 1:
            raise InvalidInput(f"palette size must be positive, got {self.k}")
        if self.b is None:
            object.__setattr__(self, "b", (self.k - 1) // 2)
        asg = {v: _as_mask(s) for v, s in dict(self.assignment).items()}
        for v, m in asg.items():
            if m < 0 or m >> self.k:
                raise InvalidInput(f"set of vertex {v} leaves the palette 0..{self.k - 1}")
        object.__setattr__(self, "assignment", asg)

    def set_of(self, v: int) -> frozenset[int]:
        return frozenset(csp.bits(self.assignment[v]))

    def sets(self) -> dict[int, list[int]]:
        return {v: colors_of(m) for v, m in sorted(self.assignment.items())}

    def __getitem__(self, v: int) -> int:
        return self.assignment[v]

    def __len__(self) -> int:
        return len(self.assignment)


def check_fractional(g: Graph, col: FractionalColoring) -> bool:
    asg = col.assignment
    missing = [v for v in range(g.n) if v not in asg]
    if missing:
        raise PartialColoring(f"{len(missing)} vertices uncolored, first {missing[0]}")
    if any(csp.popcount(asg[v]) != col.b for v in range(g.n)):
        return False
    return all(not asg[u] & asg[v] for u, v in g.edges)


# -- exact solver ------------------------------------------------------------

def subset_values(k: int, b: int) -> list[int]:
    """All ``b``-subsets of the palette as masks, in increasing mask order."""
    return sorted(mask_of(c) for c in itertools.combinations(range(k), b))


def fractional_engine(g: Graph, k: int, b: int, budget: int = csp.DEFAULT_BUDGET):
    values = subset_values(k, b)
    compat = []
    for m in values:
        compat.append(sum(1 << j for j, w in enumerate(values) if not m & w))
    return csp.GraphCSP(g, compat, budget), values


def solve_fractional_domains(
    g: Graph,
    k: int,
    allowed: Mapping[int, Iterable[int]],
    b: int | None = None,
    budget: int = csp.DEFAULT_BUDGET,
    symmetric: bool = False,
) -> SolveResult:
    """Solve with per-vertex lists of allowed color masks.

    ``symmetric`` additionally fixes the lowest vertex of every component to
    ``{0, ..., b-1}``; only sound when ``allowed`` is invariant under palette
    permutations (in practice: empty).
    """
    b = (k - 1) // 2 if b is None else b
    engine, values = fractional_engine(g, k, b, budget)
    index = {m: i for i, m in enumerate(values)}
    domains = [(1 << len(values)) - 1] * g.n
    for v, masks in allowed.items():
        dom = 0
        for m in masks:
            if m in index:
                dom |= 1 << index[m]
        domains[g.resolve(v)] &= dom
    if symmetric:
        base = index[(1 << b) - 1]
        for r in csp.symmetry_anchors(g):
            domains[r] &= 1 << base
    sol = engine.solve(domains)
    st = engine.stats
    if sol is None:
        return SolveResult(False, None, st.nodes, st.revisions)
    col = FractionalColoring(k, {v: values[d.bit_length() - 1] for v, d in enumerate(sol)}, b)
    return SolveResult(True, col, st.nodes, st.revisions)


def solve_fractional(
    g: Graph,
    k: int,
    pre: FractionalColoring | Mapping[int, object] | None = None,
    budget: int = csp.DEFAULT_BUDGET,
    symmetry: bool = True,
    b: int | None = None,
) -> SolveResult:
    """Decide whether ``pre`` extends to a fractional ``(k:b)``-coloring of ``g``.

    With no precoloring the lowest vertex of each component is fixed to the
    set ``{0, ..., b-1}``, which is harmless because palette permutations
    preserve validity.
    """
    if isinstance(pre, FractionalColoring):
        if pre.k != k:
            raise InvalidInput("precoloring palette differs from k")
        b = pre.b if b is None else b
        asg = dict(pre.assignment)
    else:
        asg = {v: _as_mask(s) for v, s in dict(pre or {}).items()}
    b = (k - 1) // 2 if b is None else b
    FractionalColoring(k, asg, b)
    for v, m in asg.items():
        g.resolve(v)
        if csp.popcount(m) != b:
            raise InconsistentPrecoloring(f"vertex {v} precolored with {csp.popcount(m)} colors, not {b}")
    for u, v in g.edges:
        if u in asg and v in asg and asg[u] & asg[v]:
            raise InconsistentPrecoloring(f"precolored edge ({u}, {v}) shares a color")
    return solve_fractional_domains(
        g, k, {v: [m] for v, m in asg.items()}, b, budget, symmetric=symmetry and not asg
    )


# -- overlap bounds ------------------------------------------------------------

class BoundKind(enum.Enum):
    LOWER = "lower"
    UPPER = "upper"


class PathBound(NamedTuple):
    kind: BoundKind
    value: int

    def admits(self, overlap: int) -> bool:
        return overlap >= self.value if self.kind is BoundKind.LOWER else overlap <= self.value


def path_bound(t: int, k: int) -> PathBound:
    """Bound on ``|phi(v_1) & phi(v_t)|`` over the ``t``-vertex path."""
    _check_k(k)
    if not 2 <= t <= k:
        raise BadParams(f"path order must lie in 2..{k}, got {t}")
    if t % 2:
        return PathBound(BoundKind.LOWER, (k - t) // 2)
    return PathBound(BoundKind.UPPER, (t - 2) // 2)


def _point_overlap(k: int, dist: int) -> int:
    """The overlap forced at short distance: (k-1-d)/2 for even d, (d-1)/2 for odd d."""
    return (k - 1 - dist) // 2 if dist % 2 == 0 else (dist - 1) // 2


def cycle_intersection_required(k: int, dist: int) -> int:
    _check_k(k)
    if not 0 <= dist <= (k - 1) // 2:
        raise BadParams(f"distance on a {k}-cycle must lie in 0..{(k - 1) // 2}, got {dist}")
    return _point_overlap(k, dist)


class OverlapInterval(NamedTuple):
    lo: int
    hi: int

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def values(self) -> range:
        return range(self.lo, self.hi + 1)


def feasible_overlap(k: int, dist: int) -> OverlapInterval:
    """End-set overlaps for which a necklace at ``dist`` is always colorable."""
    _check_k(k)
    if dist < 0:
        raise BadParams(f"negative distance {dist}")
    half = (k - 1) // 2
    if dist <= (k + 1) // 2:
        v = _point_overlap(k, dist)
        return OverlapInterval(v, v)
    e = 1 if dist % 2 == 0 else 0  # twice ((-1)^t + 1) / 4
    return OverlapInterval(max((k - dist - e) // 2, 0), min((dist - 1 - e) // 2, half))


# -- the (a, b, c) system --------------------------------------------------------

def _sign(n: int) -> int:
    return -1 if n % 2 else 1


def _beta(k: int, s: int) -> Fraction:
    return _sign(s) * Fraction(k - 2 * s, 4)


@dataclass(frozen=True)
class MNResult:
    M: int
    N: int
    alpha: Fraction | None
    beta: Fraction
    gamma: Fraction


def _mn(k: int, beta: Fraction, gamma: Fraction, ell: int) -> tuple[Fraction, Fraction]:
    M = max(beta + ell - Fraction(k, 4), Fraction(0), gamma + ell - Fraction(k, 4), beta + gamma - Fraction(1, 2))
    N = min(Fraction(k - 2, 4) + beta, Fraction(ell), Fraction(k - 2, 4) + gamma, beta + gamma + ell + Fraction(1, 2))
    return M, N


def compute_MN(k: int, s: int, t: int, ell: int, case2: bool = False) -> MNResult:
    """Bounds ``M <= b <= N`` on the shared-region count when splitting at distance ``s``.

    Case 1 (``t - s <= (k+1)/2``) targets the forced overlap at ``u``-``y``
    distance ``t - s``; this also covers short necklaces, where ``alpha`` is
    reported.  Case 2 targets the overlap of the distance ``(k+1)/2``.
    """
    _check_k(k)
    half = (k - 1) // 2
    if not 1 <= s <= half:
        raise HypothesisViolated(f"s={s} outside 1..{half}")
    beta = _beta(k, s)
    if case2:
        if t - s < (k + 3) // 2:
            raise HypothesisViolated(f"case 2 needs t - s >= {(k + 3) // 2}")
        if ell not in feasible_overlap(k, s + (k + 1) // 2):
            raise HypothesisViolated(f"overlap {ell} outside the range at distance {s + (k + 1) // 2}")
        gamma = -_sign((k + 1) // 2) * Q
        alpha = None
    else:
        if not s < t <= s + (k + 1) // 2:
            raise HypothesisViolated(f"case 1 needs {s} < t <= {s + (k + 1) // 2}, got t={t}")
        if ell not in feasible_overlap(k, t):
            raise HypothesisViolated(f"overlap {ell} outside the range at distance {t}")
        gamma = _beta(k, t - s)
        alpha = _beta(k, t) if t <= (k + 1) // 2 else None
    M, N = _mn(k, beta, gamma, ell)
    if M.denominator != 1 or N.denominator != 1:
        raise ConstructionError(f"non-integral bounds M={M}, N={N}")
    return MNResult(int(M), int(N), alpha, beta, gamma)


@dataclass(frozen=True)
class FractionalSplit:
    """Bookkeeping of one construction step (regions as 0-based color sets)."""

    k: int
    t: int
    s: int
    A: frozenset[int]
    B: frozenset[int]
    C: frozenset[int]
    D: frozenset[int]
    ell: int
    a: int = 0
    b: int = 0
    c: int = 0
    M: int = 0
    N: int = 0
    alpha: Fraction | None = None
    beta: Fraction | None = None
    gamma: Fraction | None = None
    S: frozenset[int] | None = None
    S1: frozenset[int] | None = None
    S2: frozenset[int] | None = None
    A1: frozenset[int] | None = None
    A2: frozenset[int] | None = None
    C1: frozenset[int] | None = None
    C2: frozenset[int] | None = None


def _fs(mask: int) -> frozenset[int]:
    return frozenset(csp.bits(mask))


def _regions(k: int, sx: int, sy: int) -> tuple[int, int, int, int]:
    full = (1 << k) - 1
    return sx & ~sy, sx & sy, sy & ~sx, full & ~(sx | sy)


def _targets(k: int, rest: int) -> list[int]:
    """Candidate overlaps for ``u``-``y`` at distance ``rest``, preferred first."""
    if rest <= (k + 1) // 2:
        return [_point_overlap(k, rest)]
    preferred = (k - 2 - _sign((k + 1) // 2)) // 4
    others = [v for v in feasible_overlap(k, rest).values() if v != preferred]
    return [preferred, *others]


def choose_split(k: int, s: int, t: int, ell: int) -> tuple[int, int, int, int, int, Fraction]:
    """Pick ``(a, b, c, M, N, gamma)`` for a split at distance ``s`` of ``t``.

    ``b`` is the smallest feasible value.  When ``t - s`` is large the
    overlap aimed for at ``u``-``y`` is the one of distance ``(k+1)/2`` if
    that leaves room, and otherwise the first other admissible overlap.
    """
    beta = _beta(k, s)
    for sigma in _targets(k, t - s):
        gamma = sigma - Fraction(k - 2, 4)
        M, N = _mn(k, beta, gamma, ell)
        if M <= N:
            b = int(M)
            return _point_overlap(k, s) - b, b, sigma - b, int(M), int(N), gamma
    raise ConstructionError(f"no split for k={k}, s={s}, t={t}, overlap={ell}")


# -- cycles -------------------------------------------------------------------------

def canonical_cycle_sets(k: int) -> list[int]:
    """A fixed coloring of the k-cycle ``x_0 .. x_{k-1}`` (masks, 0-based)."""
    half = (k - 1) // 2
    out = []
    for j in range(k):
        i = j // 2
        if j % 2 == 0:
            colors = [*range(0, half - i), *range(k - i, k)]
        else:
            colors = range(half - i, k - i - 1)
        out.append(mask_of(colors))
    return out


def _region_map(k: int, ref: tuple[int, int], target: tuple[int, int]) -> list[int]:
    """Palette permutation sending the regions of ``ref`` onto those of ``target``."""
    perm = [0] * k
    for r0, r1 in zip(_regions(k, *ref), _regions(k, *target)):
        for a, b in zip(csp.bits(r0), csp.bits(r1)):
            perm[a] = b
    return perm


def _permute(mask: int, perm: Sequence[int]) -> int:
    return sum(1 << perm[a] for a in csp.bits(mask))


def _cycle_sets(k: int, sx: int, sy: int, dist: int) -> list[int] | None:
    if csp.popcount(sx & sy) != _point_overlap(k, dist):
        return None
    pattern = canonical_cycle_sets(k)
    perm = _region_map(k, (pattern[0], pattern[dist]), (sx, sy))
    return [_permute(m, perm) for m in pattern]


def _check_sets(k: int, *sets: int) -> None:
    half = (k - 1) // 2
    for m in sets:
        if m >> k or csp.popcount(m) != half:
            raise BadParams(f"end sets must be {half}-subsets of 0..{k - 1}")


def color_cycle_fractional(k: int, sx, sy, dist: int) -> FractionalColoring | None:
    """Color C_k (vertex ``j`` at position ``j``) with ``sx`` at 0 and ``sy`` at ``dist``.

    Returns ``None`` exactly when the overlap of the two sets is not the one
    forced by ``dist``.
    """
    _check_k(k)
    sx, sy = _as_mask(sx), _as_mask(sy)
    _check_sets(k, sx, sy)
    if not 0 <= dist <= (k - 1) // 2:
        raise BadParams(f"distance on a {k}-cycle must lie in 0..{(k - 1) // 2}, got {dist}")
    sets = _cycle_sets(k, sx, sy, dist)
    if sets is None:
        return None
    return FractionalColoring(k, dict(enumerate(sets)))


# -- necklaces ------------------------------------------------------------------------

def _color_link(k: int, pl: PlacedLink, sx: int, sy: int, out: dict[int, int]) -> bool:
    if pl.is_edge:
        if sx & sy:
            return False
        out[pl.start], out[pl.end] = sx, sy
        return True
    order = pl.cycle_order()
    sets = _cycle_sets(k, sx, sy, pl.length())
    if sets is None:
        return False
    out.update(zip(order, sets))
    return True


def _extend_layout(
    k: int, layout: Sequence[PlacedLink], sx: int, sy: int, out: dict[int, int], trace: list | None
) -> bool:
    t = layout_distance(layout)
    ell = csp.popcount(sx & sy)
    if ell not in feasible_overlap(k, t):
        return False
    if len(layout) == 1:
        if not _color_link(k, layout[0], sx, sy, out):
            raise ConstructionError("single link rejected an admissible overlap")
        return True
    s = layout[0].length()
    a, b, c, M, N, gamma = choose_split(k, s, t, ell)
    A, B, C, D = _regions(k, sx, sy)
    r = (k - 1) // 2 - a - b - c
    su = _lowest(A, a) | _lowest(B, b) | _lowest(C, c) | _lowest(D, r)
    if csp.popcount(su) != (k - 1) // 2:
        raise ConstructionError("assembled set has the wrong size")
    if trace is not None:
        trace.append(FractionalSplit(
            k, t, s, _fs(A), _fs(B), _fs(C), _fs(D), ell, a, b, c, M, N,
            _beta(k, t) if t <= (k + 1) // 2 else None, _beta(k, s), gamma,
        ))
    if not _color_link(k, layout[0], sx, su, out):
        raise ConstructionError("first link rejected the assembled set")
    if not _extend_layout(k, layout[1:], su, sy, out, trace):
        raise ConstructionError("remaining necklace rejected the assembled set")
    return True


def extend_necklace_fractional(
    spec: NecklaceSpec, sx, sy, trace: list | None = None
) -> FractionalColoring | None:
    """Color the necklace of ``spec`` from end sets ``sx`` (at x) and ``sy`` (at y).

    Returns ``None`` when the overlap is outside :func:`feasible_overlap`.
    Vertex ids are those of :func:`ccfc.gadgets.build_necklace`.  Pass a list
    as ``trace`` to collect one :class:`FractionalSplit` per split.
    """
    k = spec.k
    sx, sy = _as_mask(sx), _as_mask(sy)
    _check_sets(k, sx, sy)
    _, layout = necklace_layout(spec)
    out: dict[int, int] = {}
    if not _extend_layout(k, layout, sx, sy, out, trace):
        return None
    return FractionalColoring(k, out)


# -- exact overlap sets -----------------------------------------------------------------
#
# A necklace is a chain of blocks glued at cut vertices and each block forces
# the overlap of its two anchors (an edge forces 0, a k-cycle the value at its
# distance).  Up to palette permutations a pair of end sets is described by
# its overlap alone, so the overlaps a necklace admits follow from a
# recursion over its links with the region-count system at every anchor.

def region_counts(k: int, ell: int, ell1: int, ell2: int) -> tuple[int, int, int, int] | None:
    """Counts ``(a, b, c, r)`` drawn from regions A, B, C, D of two end sets.

    The end sets overlap in ``ell``; the new set must overlap the first in
    ``ell1`` and the second in ``ell2``.  ``b`` is the smallest feasible
    value; ``None`` if there is none.
    """
    half = (k - 1) // 2
    lo = max(0, ell1 + ell - half, ell2 + ell - half, ell1 + ell2 - half)
    hi = min(ell, ell1, ell2, ell1 + ell2 + ell - half + 1)
    if lo > hi:
        return None
    b = lo
    a, c = ell1 - b, ell2 - b
    return a, b, c, half - a - b - c


def _link_overlap(k: int, pl: PlacedLink) -> int:
    return _point_overlap(k, pl.length())


def _suffix_overlaps(k: int, layout: Sequence[PlacedLink]) -> list[frozenset[int]]:
    """``out[i]`` is the set of overlaps admitted by links ``i..``."""
    half = (k - 1) // 2
    out = [frozenset()] * len(layout)
    out[-1] = frozenset({_link_overlap(k, layout[-1])})
    for i in range(len(layout) - 2, -1, -1):
        first = _link_overlap(k, layout[i])
        out[i] = frozenset(
            ell for ell in range(half + 1)
            if any(region_counts(k, ell, first, sig) for sig in out[i + 1])
        )
    return out


def necklace_overlaps(spec: NecklaceSpec) -> frozenset[int]:
    """Exactly the end-set overlaps for which the necklace is colorable."""
    _, layout = necklace_layout(spec)
    return _suffix_overlaps(spec.k, layout)[0]


def _extend_layout_exact(k: int, layout: Sequence[PlacedLink], sx: int, sy: int, out: dict[int, int]) -> bool:
    suffix = _suffix_overlaps(k, layout)
    if csp.popcount(sx & sy) not in suffix[0]:
        return False
    cur = sx
    for i, pl in enumerate(layout[:-1]):
        ell = csp.popcount(cur & sy)
        first = _link_overlap(k, pl)
        for sig in sorted(suffix[i + 1]):
            counts = region_counts(k, ell, first, sig)
            if counts:
                break
        else:
            raise ConstructionError("exact recursion lost feasibility")
        nxt = 0
        for region, n in zip(_regions(k, cur, sy), counts):
            nxt |= _lowest(region, n)
        if not _color_link(k, pl, cur, nxt, out):
            raise ConstructionError("link rejected its forced overlap")
        cur = nxt
    if not _color_link(k, layout[-1], cur, sy, out):
        raise ConstructionError("last link rejected its forced overlap")
    return True


def extend_necklace_exact(spec: NecklaceSpec, sx, sy) -> FractionalColoring | None:
    """Color the necklace whenever any extension exists (``None`` otherwise)."""
    k = spec.k
    sx, sy = _as_mask(sx), _as_mask(sy)
    _check_sets(k, sx, sy)
    _, layout = necklace_layout(spec)
    out: dict[int, int] = {}
    if not _extend_layout_exact(k, layout, sx, sy, out):
        return None
    return FractionalColoring(k, out)


# -- bulls ----------------------------------------------------------------------------

def _bull_center(k: int, t: int, s: int, sx: int, sy: int, sz: int) -> tuple[int, FractionalSplit] | None:
    """The center set assembled from A1, A2, S, C1, C2, or ``None``.

    Of the two ways to lean one of A, C into phi(z) and the other away from
    it, the one suggested by the sizes of A and C inside phi(z) goes first.
    A choice is kept only if the overlap with phi(z) is admissible at
    distance ``s``.
    """
    A, B, C, D = _regions(k, sx, sy)
    S = B if t % 2 == 0 else D
    S1, S2 = S & ~sz, S & sz
    need = (t + 1) // 2 if t % 2 else t // 2
    q = (t - 1) // 2 if t % 2 else t // 2
    A_out, A_in, C_out, C_in = A & ~sz, A & sz, C & ~sz, C & sz
    n_ai, n_ci = csp.popcount(A_in), csp.popcount(C_in)
    n_ao, n_co = csp.popcount(A_out), csp.popcount(C_out)
    branches = [(q - min(n_ai, q), min(n_co, q)), (min(n_ao, q), q - min(n_ci, q))]
    if n_ai < need - csp.popcount(S2):
        branches.reverse()
    target = feasible_overlap(k, s)
    for a1, c1 in branches:
        a2, c2 = q - a1, q - c1
        if not (0 <= a2 <= n_ai and 0 <= c2 <= n_ci and a1 <= n_ao and c1 <= n_co):
            continue
        if a2 + csp.popcount(S2) + c2 not in target:
            continue
        picks = (_lowest(A_out, a1), _lowest(A_in, a2), _lowest(C_out, c1), _lowest(C_in, c2))
        sv = S | picks[0] | picks[1] | picks[2] | picks[3]
        split = FractionalSplit(
            k, 0, s, _fs(A), _fs(B), _fs(C), _fs(D), csp.popcount(B),
            S=_fs(S), S1=_fs(S1), S2=_fs(S2),
            A1=_fs(picks[0]), A2=_fs(picks[1]), C1=_fs(picks[2]), C2=_fs(picks[3]),
        )
        return sv, split
    return None


def _bull_layouts(k: int, t: int, arms: Sequence[Layout], sx: int, sy: int, sz: int,
                  out: dict[int, int], trace: list | None) -> bool:
    """Color the three arms around a common first vertex; ``False`` if impossible.

    The region construction with the interval guarantee is tried first.  If
    it yields nothing, every candidate center set is tried against the exact
    overlap sets of the arms.
    """
    ends = (sx, sy, sz)
    s = layout_distance(arms[2])
    picked = _bull_center(k, t, s, sx, sy, sz)
    if picked is not None:
        sv, split = picked
        if trace is not None:
            trace.append(split)
        for layout, end in zip(arms, ends):
            if not _extend_layout(k, layout, sv, end, out, trace):
                raise ConstructionError("a bull arm rejected the center set")
        return True
    admitted = [_suffix_overlaps(k, layout)[0] for layout in arms]
    for sv in subset_values(k, (k - 1) // 2):
        if all(csp.popcount(sv & end) in adm for end, adm in zip(ends, admitted)):
            if trace is not None:
                trace.append(FractionalSplit(k, 0, s, *(_fs(r) for r in _regions(k, sx, sy)),
                                             csp.popcount(sx & sy)))
            for layout, end in zip(arms, ends):
                _extend_layout_exact(k, layout, sv, end, out)
            return True
    return False


def _bull_hypothesis(k: int, t: int, s: int, sx: int, sy: int) -> None:
    half = (k - 1) // 2
    if not 1 <= t <= half:
        raise HypothesisViolated(f"t={t} outside 1..{half}")
    if t + s < k:
        raise HypothesisViolated(f"t + s = {t + s} < k = {k}")
    want = (k - 1 - 2 * t) // 2
    if csp.popcount(sx & sy) != want:
        raise HypothesisViolated(f"|sx & sy| = {csp.popcount(sx & sy)}, expected {want}")


def extend_bull_fractional(spec: MultiSpec, sx, sy, sz, trace: list | None = None) -> FractionalColoring | None:
    """Color a bull from the sets at its ends ``x``, ``y`` and ``z``.

    Vertex ids are those of :func:`ccfc.gadgets.build_multi`.  Returns
    ``None`` only if no extension exists at all.
    """
    if spec.center is not CenterKind.BULL:
        raise BadParams("spec is not a bull")
    k, t = spec.k, spec.bull_t
    sx, sy, sz = (_as_mask(m) for m in (sx, sy, sz))
    _check_sets(k, sx, sy, sz)
    _bull_hypothesis(k, t, spec.arms[2].distance, sx, sy)
    lay = multi_layout(spec)
    out: dict[int, int] = {}
    if not _bull_layouts(k, t, lay.arms, sx, sy, sz, out, trace):
        return None
    return FractionalColoring(k, out)


def _walk_thread(g: Graph, v: int, first: int, stops: Iterable[int] = ()) -> tuple[list[int], int]:
    """Follow degree-2 vertices from ``v`` through ``first`` up to a stop; return (path, end)."""
    stops = set(stops) | {v}
    path = [v]
    prev, here = v, first
    while g.degree(here) == 2 and here not in stops:
        path.append(here)
        prev, here = here, next(w for w in g.adj[here] if w != prev)
    path.append(here)
    return path, here


def _thread_layout(path: Sequence[int]) -> Layout:
    return tuple(PlacedLink(a, b, ((),)) for a, b in zip(path, path[1:]))


def certify_Fv_extension(fv: Graph, k: int, outer: FractionalColoring) -> FractionalColoring | None:
    """Complete ``outer`` (covering at least ``x``, ``y``, ``z``) to a coloring of ``fv``.

    The threads from ``v`` to ``x`` and ``y`` and the necklace from ``v`` to
    ``z`` are recolored by the bull construction; uncolored vertices of the
    ``x``-``y`` path are filled in as a thread.
    """
    _check_k(k)
    x, y, z, v = (fv.landmark(n) for n in ("x", "y", "z", "v"))
    asg = outer.assignment
    for w in (x, y, z):
        if w not in asg:
            raise InvalidInput(f"outer coloring misses end vertex {w}")
    for a, b in fv.edges:
        if a in asg and b in asg and asg[a] & asg[b]:
            raise InvalidInput(f"outer coloring clashes on edge ({a}, {b})")
    sx, sy, sz = asg[x], asg[y], asg[z]
    _check_sets(k, sx, sy, sz)

    # the two cycle neighbours of v lead to x and y; the third neighbour starts the z arm
    cyc_paths = []
    arm_first = []
    for w in fv.adj[v]:
        path, end = _walk_thread(fv, v, w, (x, y))
        if end in (x, y):
            cyc_paths.append((end, path))
        else:
            arm_first.append(w)
    by_end = dict(cyc_paths)
    if set(by_end) != {x, y} or len(cyc_paths) != 2:
        raise InvalidInput("graph does not have the expected thread structure at v")
    t = len(by_end[x]) - 1
    if len(by_end[y]) - 1 != t:
        raise InvalidInput("threads from v to x and y differ in length")
    inner = set(by_end[x]) | set(by_end[y])
    keep = {v}
    stack = list(arm_first)
    while stack:
        u = stack.pop()
        if u in keep or u in inner:
            continue
        keep.add(u)
        stack.extend(fv.adj[u])
    sub, index = induced_subgraph(fv, keep)
    back = {i: w for w, i in index.items()}
    arm_local = parse_necklace(sub, index[v], index[z], k)
    arm = tuple(
        PlacedLink(back[pl.start], back[pl.end], tuple(tuple(back[a] for a in th) for th in pl.threads))
        for pl in arm_local
    )
    s = layout_distance(arm)
    _bull_hypothesis(k, t, s, sx, sy)

    out = {w: m for w, m in asg.items() if w not in inner | keep or w in (x, y, z)}
    arms = (_thread_layout(by_end[x]), _thread_layout(by_end[y]), arm)
    if not _bull_layouts(k, t, arms, sx, sy, sz, out, None):
        return None
    # the x-y path closing the cycle
    xy_first = [w for w in fv.adj[x] if w not in by_end[x]]
    if len(xy_first) != 1:
        raise InvalidInput("x does not lie on a single x-y path")
    xy_path, end = _walk_thread(fv, x, xy_first[0], (y,))
    if end != y:
        raise InvalidInput("no x-y path closing the cycle")
    interior = xy_path[1:-1]
    if any(w not in out for w in interior):
        for w in interior:
            out.pop(w, None)
        if not _extend_layout(k, _thread_layout(xy_path), sx, sy, out, None):
            raise ConstructionError("x-y path rejected the end sets")
    col = FractionalColoring(k, out)
    if not check_fractional(fv, col):
        raise ConstructionError("assembled coloring fails the checker")
    return col


# -- reducibility certification ------------------------------------------------------

@dataclass
class FractionalReducibilityReport:
    reducible: bool
    total: int
    checked: int
    failures: list[dict[str, list[int]]]
    sampled: bool = False
    seed: int | None = None


def certify_reducible_fractional(
    h: Graph,
    ends: Sequence[str],
    k: int,
    hypothesis: Callable[[dict[str, int]], bool] = lambda pre: True,
    extend: Callable[[dict[int, int]], FractionalColoring | None] | None = None,
    samples: int | None = None,
    seed: int = 0,
) -> FractionalReducibilityReport:
    """Check that end precolorings satisfying ``hypothesis`` extend over ``h``.

    ``hypothesis`` receives a map from end name to color mask.  ``extend``
    maps a vertex-id precoloring to a coloring (``None`` when it gives up);
    the default is the exact solver.  All precolorings are enumerated unless
    ``samples`` is given, in which case that many are drawn with ``seed``.
    """
    _check_k(k)
    ids = [h.landmark(name) for name in ends]
    values = subset_values(k, (k - 1) // 2)
    if samples is None:
        combos: Iterable[tuple[int, ...]] = itertools.product(values, repeat=len(ids))
    else:
        rng = random.Random(seed)
        combos = [tuple(rng.choice(values) for _ in ids) for _ in range(samples)]
    if extend is None:
        def extend(pre):
            res = solve_fractional(h, k, pre)
            return res.coloring if res.sat else None
    total = checked = 0
    failures = []
    for combo in combos:
        total += 1
        named = dict(zip(ends, combo))
        pre = dict(zip(ids, combo))
        if any(h.has_edge(u, w) and pre[u] & pre[w] for u in pre for w in pre if u < w):
            continue
        if not hypothesis(named):
            continue
        checked += 1
        col = extend(pre)
        good = col is not None and check_fractional(h, col) and all(col.assignment[v] == m for v, m in pre.items())
        if not good:
            failures.append({n: colors_of(m) for n, m in named.items()})
    return FractionalReducibilityReport(not failures, total, checked, failures, samples is not None, seed)


def overlap(sa: int, sb: int) -> int:
    return csp.popcount(_as_mask(sa) & _as_mask(sb))
