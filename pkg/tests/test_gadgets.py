import pytest
from hypothesis import given, settings, strategies as st

from ccfc.errors import BadOffset, BadParams, BadSpec
from ccfc.gadgets import (
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
    d_ck_replace_all,
    d_ck_replace_edge,
    necklace_layout,
    parse_necklace,
)
from ccfc.graph import build_graph, complete_graph, cycle_graph, distance, girth, graph_hash


@st.composite
def necklaces(draw, k=None, max_links=6):
    k = k or draw(st.sampled_from([3, 5, 7]))
    links = draw(st.lists(st.one_of(st.just(EDGE), st.integers(0, k - 2).map(CYCLE)),
                          min_size=1, max_size=max_links))
    return NecklaceSpec(k, tuple(links))


def test_thread_is_a_path():
    g = build_necklace(NecklaceSpec.parse(5, "E,E,E"))
    assert g.n == 4 and len(g.edges) == 3
    assert distance(g, "x", "y") == 3


def test_single_cycle_link():
    g = build_necklace(NecklaceSpec.parse(5, "C1"))
    assert g.n == 5 and distance(g, "x", "y") == 2


def test_edge_cycle_edge():
    g = build_necklace(NecklaceSpec.parse(5, "E,C2,E"))
    # two pendant edges around a 5-cycle: 5 + 2 vertices
    assert g.n == 7 and girth(g) == 5


def test_parse_rejects_garbage():
    with pytest.raises(BadSpec):
        NecklaceSpec.parse(5, "E,X")
    with pytest.raises(BadSpec):
        NecklaceSpec(5, (CYCLE(4),))
    with pytest.raises(BadSpec):
        NecklaceSpec(4, (EDGE,))


@settings(max_examples=200, deadline=None)
@given(necklaces())
def test_necklace_shape(spec):
    g, layout = necklace_layout(spec)
    expected_n = 1 + sum(1 if link.is_edge else spec.k - 1 for link in spec.links)
    assert g.n == expected_n
    assert distance(g, "x", "y") == spec.distance
    assert parse_necklace(g, g.landmark("x"), g.landmark("y"), spec.k) == layout


def test_vertex_center_star():
    arm = NecklaceSpec.parse(5, "E,E")
    g = build_multi(MultiSpec(5, (arm,) * 3))
    assert g.n == 7
    assert g.degree(g.landmark("center")) == 3


def test_crown_with_pendant_edges():
    g = build_multi(MultiSpec(5, (NecklaceSpec.parse(5, "E"),) * 3, CenterKind.CYCLE, (0, 1, 2)))
    assert g.n == 8 and len(g.edges) == 8


def test_bull_distances():
    g = build_multi(MultiSpec.bull(5, 2, NecklaceSpec.parse(5, "C1,E")))
    assert distance(g, "v", "z") == 3
    assert distance(g, "v", "x") == distance(g, "v", "y") == 2


def test_multi_spec_validation():
    arm = NecklaceSpec.parse(5, "E")
    with pytest.raises(BadSpec):
        MultiSpec(5, (arm, arm))
    with pytest.raises(BadSpec):
        MultiSpec(5, (arm,) * 3, CenterKind.CYCLE, (0, 1))
    with pytest.raises(BadSpec):
        MultiSpec(5, (arm,) * 3, CenterKind.CYCLE, (0, 1, 5))


def test_single_edge_replacement():
    g = d_ck_replace_edge(build_graph(2, [(0, 1)]), (0, 1), 2, 5)
    assert g.n == 5 and girth(g) == 5
    assert distance(g, 0, 1) == 2


def test_replacement_d1_keeps_endpoints_adjacent():
    g = d_ck_replace_edge(complete_graph(3), (0, 1), 1, 5)
    assert g.n == 6 and girth(g) == 3


def test_replacement_mirror_is_isomorphic():
    # d and k - d give mirrored cycles; the canonical hashes of the two sides agree
    a = d_ck_replace_all(cycle_graph(3), 1, 5)
    b = d_ck_replace_all(cycle_graph(3), 4, 5)
    assert a.n == b.n and len(a.edges) == len(b.edges)
    assert sorted(a.degree(v) for v in range(a.n)) == sorted(b.degree(v) for v in range(b.n))


def test_replace_all_counts():
    assert d_ck_replace_all(cycle_graph(3), 2, 5).n == 3 + 3 * 3
    assert d_ck_replace_all(build_graph(3, []), 2, 5).n == 3
    assert d_ck_replace_all(build_graph(2, [(0, 1)]), 2, 5).n == 5


def test_replacement_parameters():
    with pytest.raises(BadOffset):
        d_ck_replace_all(cycle_graph(3), 0, 5)
    with pytest.raises(BadOffset):
        d_ck_replace_all(cycle_graph(3), 5, 5)
    with pytest.raises(BadParams):
        d_ck_replace_all(cycle_graph(3), 2, 6)


def test_wheel_and_hp_sizes():
    w = build_devos_wheel(5)
    assert w.n == 1 + 7 + 7 * 2 and len(w.edges) == 28
    assert build_hp(5).n == 22 + 28 * 3


def test_five_color_reduction_sizes():
    assert build_five_color_reduction(complete_graph(2)).n == 4 + 3 * 3
    assert build_five_color_reduction(complete_graph(4)).n == 4 + 6 * 2 + 18 * 3
    assert build_five_color_reduction(build_graph(3, [])).n == 3


def test_odd_counterexample_size():
    assert build_odd_counterexample(5, 3).n == 2 * 3 * 5 + 1
    assert build_odd_counterexample(7, 3).n == 2 * 3 * 7 + 1
    with pytest.raises(BadParams):
        build_odd_counterexample(6, 3)


def test_nonprime_gadget_girth():
    g = build_nonprime_gadget(3, 3, 10)
    assert girth(g) == 9
    assert len(g.edges) == 10 * 9 + 1
    with pytest.raises(BadParams):
        build_nonprime_gadget(3, 3, 9)


def test_fv_shape():
    g = build_Fv(1, NecklaceSpec.parse(5, "E,E,E,E"), 5)
    # a 5-cycle through v plus a pendant path of length 4
    assert g.n == 9 and len(g.edges) == 9 and girth(g) == 5
    assert distance(g, "v", "z") == 4
    with pytest.raises(BadParams):
        build_Fv(3, NecklaceSpec.parse(5, "E"), 5)


def test_construction_is_deterministic():
    assert graph_hash(build_hp(5)) == graph_hash(build_hp(5))
