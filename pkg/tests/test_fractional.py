import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ccfc.errors import BadParams, HypothesisViolated, InconsistentPrecoloring, InvalidInput, PartialColoring
from ccfc.fractional import (
    BoundKind,
    FractionalColoring,
    canonical_cycle_sets,
    certify_Fv_extension,
    certify_reducible_fractional,
    check_fractional,
    choose_split,
    color_cycle_fractional,
    compute_MN,
    cycle_intersection_required,
    extend_bull_fractional,
    extend_necklace_exact,
    extend_necklace_fractional,
    feasible_overlap,
    mask_of,
    necklace_overlaps,
    overlap,
    path_bound,
    solve_fractional,
    subset_values,
)
from ccfc.gadgets import CYCLE, EDGE, MultiSpec, NecklaceSpec, build_Fv, build_multi, build_necklace
from ccfc.graph import build_graph, complete_graph, cycle_graph, path_graph

from oracles import fractional_colorable

K5_SETS = subset_values(5, 2)


def test_checker_examples():
    k2 = complete_graph(2)
    assert check_fractional(k2, FractionalColoring(5, {0: {0, 1}, 1: {2, 3}}))
    assert not check_fractional(k2, FractionalColoring(5, {0: {0, 1}, 1: {1, 2}}))
    assert not check_fractional(k2, FractionalColoring(5, {0: {0, 1}, 1: {2}}))
    with pytest.raises(PartialColoring):
        check_fractional(k2, FractionalColoring(5, {0: {0, 1}}))
    with pytest.raises(InvalidInput):
        FractionalColoring(5, {0: {7}})


def test_small_decisions():
    assert solve_fractional(cycle_graph(5), 5).sat
    assert not solve_fractional(complete_graph(3), 5).sat
    res = solve_fractional(cycle_graph(7), 5, {2: {1, 4}})
    assert res.sat and res.coloring[2] == mask_of({1, 4})
    with pytest.raises(InconsistentPrecoloring):
        solve_fractional(complete_graph(2), 5, {0: {0, 1}, 1: {1, 2}})
    with pytest.raises(InconsistentPrecoloring):
        solve_fractional(complete_graph(2), 5, {0: {0, 1, 2}})


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 7), st.data())
def test_solver_matches_backtracking_oracle(n, data):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    g = build_graph(n, edges)
    res = solve_fractional(g, 5)
    assert res.sat == fractional_colorable(n, edges, 5)
    if res.sat:
        assert check_fractional(g, res.coloring)


def _path_overlaps(k, order):
    """Overlaps of the end sets over every coloring of the path (naive enumeration)."""
    sets = [frozenset(c) for c in itertools.combinations(range(k), (k - 1) // 2)]
    seen = set()
    frontier = {(s, s) for s in sets}
    for _ in range(order - 1):
        frontier = {(first, s) for first, last in frontier for s in sets if not s & last}
    for first, last in frontier:
        seen.add(len(first & last))
    return seen


def test_path_bound_examples():
    assert path_bound(3, 5) == (BoundKind.LOWER, 1)
    assert path_bound(2, 5) == (BoundKind.UPPER, 0)
    assert path_bound(6, 7) == (BoundKind.UPPER, 2)
    assert max(_path_overlaps(7, 6)) == 2
    with pytest.raises(BadParams):
        path_bound(1, 5)


@pytest.mark.parametrize("k", [5, 7])
def test_path_bound_is_tight(k):
    for t in range(2, k + 1):
        seen = _path_overlaps(k, t)
        bound = path_bound(t, k)
        assert all(bound.admits(o) for o in seen)
        assert (min(seen) if bound.kind is BoundKind.LOWER else max(seen)) == bound.value


def test_cycle_intersection_examples():
    assert [cycle_intersection_required(5, d) for d in range(3)] == [2, 0, 1]


@pytest.mark.parametrize("k", [5, 7])
def test_cycle_criterion_matches_oracle(k):
    sets = subset_values(k, (k - 1) // 2)
    g = cycle_graph(k)
    for dist in range(1, (k + 1) // 2):
        for sy in sets:
            sx = sets[0]
            ok = fractional_colorable(k, g.edges, k, {0: set(_bits(sx)), dist: set(_bits(sy))}) \
                if not (dist == 1 and sx & sy) else False
            assert ok == (overlap(sx, sy) == cycle_intersection_required(k, dist))
            col = color_cycle_fractional(k, sx, sy, dist)
            assert (col is not None) == ok
            if col is not None:
                assert check_fractional(g, col) and col[0] == sx and col[dist] == sy


def _bits(m):
    return [i for i in range(m.bit_length()) if m >> i & 1]


def test_canonical_cycle_pattern():
    sets = canonical_cycle_sets(5)
    assert sets == [0b00011, 0b01100, 0b10001, 0b00110, 0b11000]
    assert check_fractional(cycle_graph(5), FractionalColoring(5, dict(enumerate(sets))))
    for k in (7, 9, 11):
        assert check_fractional(cycle_graph(k), FractionalColoring(k, dict(enumerate(canonical_cycle_sets(k)))))


def test_cycle_coloring_edge_cases():
    assert color_cycle_fractional(5, {0, 1}, {0, 1}, 0)[0] == 0b11
    assert color_cycle_fractional(5, {0, 1}, {0, 2}, 2) is not None
    assert color_cycle_fractional(5, {0, 1}, {2, 3}, 2) is None


def test_feasible_overlap_examples():
    assert feasible_overlap(5, 3) == (1, 1)
    assert feasible_overlap(5, 5) == (0, 2)
    assert feasible_overlap(5, 4) == (0, 1)
    assert list(feasible_overlap(5, 4).values()) == [0, 1]


def test_compute_mn_example():
    r = compute_MN(5, 1, 3, 1)
    assert (r.beta, r.gamma, r.M, r.N) == (Fraction(-3, 4), Fraction(1, 4), 0, 0)


@pytest.mark.parametrize("k", [5, 7, 9, 11])
def test_parity_table(k):
    for t in range(2, (k + 1) // 2 + 1):
        for s in range(1, t):
            if s > (k - 1) // 2:
                continue
            r = compute_MN(k, s, t, feasible_overlap(k, t).lo)
            if t % 2 and s % 2:
                assert r.M == r.N == (s - 1) // 2
            if t % 2 == 0 and s % 2 == 0:
                assert r.M == r.N == (k - 1 - t) // 2


def test_compute_mn_hypotheses():
    with pytest.raises(HypothesisViolated):
        compute_MN(5, 3, 4, 0)
    with pytest.raises(HypothesisViolated):
        compute_MN(5, 1, 3, 0)
    with pytest.raises(HypothesisViolated):
        compute_MN(5, 1, 4, 0, case2=True)


@pytest.mark.parametrize("k", [5, 7, 9, 11, 13])
def test_choose_split_always_finds_a_split(k):
    half = (k - 1) // 2
    for t in range(2, 3 * k):
        for s in range(1, min(half, t - 1) + 1):
            for ell in feasible_overlap(k, t).values():
                a, b, c, M, N, _ = choose_split(k, s, t, ell)
                assert M <= b <= N and min(a, b, c) >= 0


def test_necklace_examples():
    spec = NecklaceSpec.parse(5, "E,E,E")
    g = build_necklace(spec)
    col = extend_necklace_fractional(spec, {0, 1}, {1, 2})
    assert col is not None and check_fractional(g, col)
    assert extend_necklace_fractional(spec, {0, 1}, {2, 3}) is None
    spec = NecklaceSpec.parse(5, "C1,E,E,E")
    g = build_necklace(spec)
    for sx, sy in itertools.product(K5_SETS, repeat=2):
        col = extend_necklace_fractional(spec, sx, sy)
        assert col is not None and check_fractional(g, col)


@settings(max_examples=120, deadline=None)
@given(st.lists(st.one_of(st.just(EDGE), st.integers(0, 3).map(CYCLE)), min_size=1, max_size=3),
       st.sampled_from(K5_SETS), st.sampled_from(K5_SETS))
def test_necklace_construction_sound_and_interval_complete(links, sx, sy):
    spec = NecklaceSpec(5, tuple(links))
    g = build_necklace(spec)
    y = g.landmark("y")
    col = extend_necklace_fractional(spec, sx, sy)
    inside = overlap(sx, sy) in feasible_overlap(5, spec.distance)
    assert (col is not None) == inside
    if col is not None:
        assert check_fractional(g, col) and (col[0], col[y]) == (sx, sy)


@settings(max_examples=120, deadline=None)
@given(st.lists(st.one_of(st.just(EDGE), st.integers(0, 3).map(CYCLE)), min_size=1, max_size=3),
       st.sampled_from(K5_SETS), st.sampled_from(K5_SETS))
def test_exact_overlaps_match_oracle(links, sx, sy):
    spec = NecklaceSpec(5, tuple(links))
    g = build_necklace(spec)
    y = g.landmark("y")
    clash = g.has_edge(0, y) and sx & sy
    expected = not clash and fractional_colorable(g.n, g.edges, 5, {0: set(_bits(sx)), y: set(_bits(sy))})
    assert (overlap(sx, sy) in necklace_overlaps(spec)) == expected
    col = extend_necklace_exact(spec, sx, sy)
    assert (col is not None) == expected
    if col is not None:
        assert check_fractional(g, col)


def test_interval_is_sufficient_not_necessary():
    # three edges: overlap 0 is colorable although the interval only promises overlap 1
    spec = NecklaceSpec.parse(5, "E,E,E")
    assert feasible_overlap(5, 3) == (1, 1)
    assert necklace_overlaps(spec) == {0, 1}


@pytest.mark.parametrize("t,arm", [(1, "E,E,E,E"), (1, "C1,E,C1"), (2, "E,E,E"), (2, "C1,E")])
def test_bull_extends_every_admissible_precoloring(t, arm):
    spec = MultiSpec.bull(5, t, NecklaceSpec.parse(5, arm))
    g = build_multi(spec)
    x, y, z = (g.landmark(n) for n in "xyz")
    want = (5 - 1 - 2 * t) // 2
    count = 0
    for sx, sy, sz in itertools.product(K5_SETS, repeat=3):
        if overlap(sx, sy) != want:
            continue
        col = extend_bull_fractional(spec, sx, sy, sz)
        assert col is not None and check_fractional(g, col)
        assert (col[x], col[y], col[z]) == (sx, sy, sz)
        count += 1
    assert count == 10 * (6 if t == 1 else 3) * 10


def test_bull_hypothesis_enforced():
    spec = MultiSpec.bull(5, 1, NecklaceSpec.parse(5, "E,E,E,E"))
    with pytest.raises(HypothesisViolated):
        extend_bull_fractional(spec, {0, 1}, {2, 3}, {0, 1})
    short = MultiSpec.bull(5, 1, NecklaceSpec.parse(5, "E,E,E"))
    with pytest.raises(HypothesisViolated):
        extend_bull_fractional(short, {0, 1}, {1, 2}, {0, 1})


@pytest.mark.parametrize("t,arm", [(1, "E,E,E,E"), (2, "E,E,E"), (2, "C1,E"), (1, "C1,C1")])
def test_fv_extension(t, arm):
    fv = build_Fv(t, NecklaceSpec.parse(5, arm), 5)
    x, y, z = (fv.landmark(n) for n in "xyz")
    base = solve_fractional(fv, 5).coloring
    for sz in K5_SETS:
        # only the ends are given; the x-y path is filled in as a thread
        col = certify_Fv_extension(fv, 5, FractionalColoring(5, {x: base[x], y: base[y], z: sz}))
        assert col is not None and check_fractional(fv, col) and col[z] == sz


def test_fv_below_threshold():
    fv = build_Fv(1, NecklaceSpec.parse(5, "E,E,E"), 5)
    base = solve_fractional(fv, 5).coloring
    pre = {fv.landmark(n): base[fv.landmark(n)] for n in "xyz"}
    with pytest.raises(HypothesisViolated):
        certify_Fv_extension(fv, 5, FractionalColoring(5, pre))


def test_reducibility_examples():
    long = build_necklace(NecklaceSpec.parse(5, "E,E,E,E,E"))
    assert certify_reducible_fractional(long, ["x", "y"], 5).reducible
    bull = build_multi(MultiSpec.bull(5, 1, NecklaceSpec.parse(5, "E,E,E,E")))
    rep = certify_reducible_fractional(bull, ["x", "y", "z"], 5, hypothesis=lambda pre: overlap(pre["x"], pre["y"]) == 1)
    assert rep.reducible and rep.checked == 600
    short = path_graph(3)
    short = build_graph(3, short.edges, {"x": 0, "y": 2})
    assert not certify_reducible_fractional(short, ["x", "y"], 5).reducible


def test_sampled_reducibility_is_seeded():
    g = build_necklace(NecklaceSpec.parse(5, "E,E"))
    a = certify_reducible_fractional(g, ["x", "y"], 5, samples=20, seed=7)
    b = certify_reducible_fractional(g, ["x", "y"], 5, samples=20, seed=7)
    assert a.failures == b.failures and a.sampled and a.seed == 7
