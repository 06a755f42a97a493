import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from ccfc.errors import BadLandmark, BadVertex, BudgetExceeded, DuplicateEdge, InvalidEdge
from ccfc.gadgets import build_devos_wheel, build_hp, build_nonprime_gadget
from ccfc.graph import (
    GRAPH_FORMAT,
    articulation_points,
    build_graph,
    connected_components,
    cycle_graph,
    cycle_spectrum,
    distance,
    dumps,
    girth,
    graph_hash,
    induced_subgraph,
    is_two_connected,
    load,
    loads,
    odd_girth,
    path_graph,
    save,
    to_dot,
)

from oracles import component_count, simple_cycle_lengths


@st.composite
def small_graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return build_graph(n, edges)


def test_triangle_and_single_vertex():
    assert girth(build_graph(3, [(0, 1), (1, 2), (2, 0)])) == 3
    assert girth(build_graph(1, [])) == math.inf


def test_landmarks_resolve():
    g = build_graph(5, [(i, (i + 1) % 5) for i in range(5)], {"x": 0})
    assert g.landmark("x") == 0
    assert g.resolve("x") == 0
    with pytest.raises(BadLandmark):
        g.landmark("nope")
    with pytest.raises(BadVertex):
        g.resolve(9)


def test_invalid_edges_rejected():
    with pytest.raises(InvalidEdge):
        build_graph(2, [(0, 0)])
    with pytest.raises(InvalidEdge):
        build_graph(2, [(0, 2)])
    with pytest.raises(DuplicateEdge):
        build_graph(2, [(0, 1), (1, 0)])


def test_distances():
    c7 = cycle_graph(7)
    assert distance(c7, 0, 3) == 3
    assert distance(c7, 4, 4) == 0
    two = build_graph(4, [(0, 1), (2, 3)])
    assert distance(two, 0, 3) == math.inf


def test_girth_of_gadgets():
    assert girth(build_devos_wheel(5)) == 7
    assert girth(build_hp(5)) == 5
    assert girth(path_graph(6)) == math.inf


def test_spectrum_examples():
    assert cycle_spectrum(build_hp(5), 13).present_lengths == {5}
    assert cycle_spectrum(cycle_graph(9), 20).present_lengths == {9}
    assert cycle_spectrum(build_nonprime_gadget(3, 3, 10), 30).present_lengths == {9}


def test_spectrum_budget():
    with pytest.raises(BudgetExceeded):
        cycle_spectrum(build_hp(5), 13, budget=10)


def test_two_connectivity():
    assert is_two_connected(cycle_graph(6))
    assert not is_two_connected(path_graph(3))
    assert is_two_connected(build_devos_wheel(5))


@settings(max_examples=150, deadline=None)
@given(small_graphs())
def test_spectrum_matches_brute_force(g):
    lengths = simple_cycle_lengths(g.n, g.edges)
    assert cycle_spectrum(g, max(g.n, 3)).present_lengths == lengths
    assert girth(g) == (min(lengths) if lengths else math.inf)
    odd = [c for c in lengths if c % 2]
    assert odd_girth(g) == (min(odd) if odd else math.inf)


@settings(max_examples=150, deadline=None)
@given(small_graphs())
def test_articulation_points_match_brute_force(g):
    base = component_count(g.n, g.edges)
    expected = {v for v in range(g.n) if component_count(g.n, g.edges, {v}) > base}
    assert articulation_points(g) == expected
    assert len(connected_components(g)) == base


@settings(max_examples=100, deadline=None)
@given(small_graphs())
def test_serialization_round_trip(g):
    text = dumps(g)
    back = loads(text)
    assert back.n == g.n and set(back.edges) == set(g.edges)
    assert graph_hash(back) == graph_hash(g)


def test_file_round_trip_and_format(tmp_path):
    g = build_graph(3, [(2, 1), (0, 1)], {"x": 2})
    path = tmp_path / "g.json"
    save(g, path)
    text = path.read_text()
    assert GRAPH_FORMAT in text
    assert json.loads(text)["edges"] == [[0, 1], [1, 2]]
    back = load(path)
    assert back.sorted_edges() == [(0, 1), (1, 2)]
    assert back.landmark("x") == 2


def test_dot_labels_landmarks():
    dot = to_dot(build_graph(2, [(0, 1)], {"x": 0}))
    assert dot.startswith("graph")
    assert "x" in dot and "--" in dot


def test_induced_subgraph():
    g = cycle_graph(5)
    h, index = induced_subgraph(g, [0, 1, 2])
    assert h.n == 3 and len(h.edges) == 2
    assert set(index) == {0, 1, 2}
