import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quasitree.core import (
    INFINITY,
    MAX_CUT_SCAN_VERTICES,
    Hypergraph3,
    Multigraph,
    edge_connectivity_report,
    expand_to_graph,
    induced_subhypergraph,
    mg_is_connected,
    sorted_vertices,
)
from quasitree.errors import DomainError


def test_hyperedge_arity_bounds():
    with pytest.raises(DomainError):
        Hypergraph3([1, 2, 3, 4], {"e": {1, 2, 3, 4}})
    with pytest.raises(DomainError):
        Hypergraph3([1, 2], {"e": {1}})


def test_hyperedge_vertices_must_exist():
    with pytest.raises(DomainError):
        Hypergraph3([1, 2], {"e": {1, 3}})


def test_parallel_copies_are_distinct(doubled_triangle):
    assert len(doubled_triangle.hyperedges) == 6
    assert doubled_triangle.hyperedges["a1"] == doubled_triangle.hyperedges["a2"]
    assert doubled_triangle.degree(1) == 4


def test_edge_ids_sorted(triple_fan):
    assert triple_fan.edge_ids() == ["e", "f", "g", "h", "k"]


def test_expand_triangle_is_identity(triangle):
    g = expand_to_graph(triangle)
    assert set(g.vertices) == {1, 2, 3}
    assert set(g.edges) == {"a", "b", "c"}
    assert g.aux == frozenset()


def test_expand_triple_with_tail(triple_with_tail):
    g = expand_to_graph(triple_with_tail)
    # the 3-hyperedge becomes a hub vertex with three legs
    assert len(g.vertices) == 5
    assert len(g.edges) == 5
    assert g.aux == frozenset({"@t"})
    assert set(g.edges) == {"t~1", "t~2", "t~3", "d", "e"}
    assert g.edges["t~1"] == frozenset({"@t", 1})
    assert g.edge_origin["t~2"] == ("t", 2)
    assert g.edge_origin["d"] == ("d", None)


def test_expand_single_triple_is_claw():
    h = Hypergraph3(["x", "y", "z"], {"e": {"x", "y", "z"}})
    g = expand_to_graph(h)
    assert g.degree("@e") == 3
    assert all(g.degree(v) == 1 for v in ("x", "y", "z"))


def test_expand_counts():
    h = Hypergraph3(range(1, 6), {
        "p": {1, 2}, "q": {2, 3}, "t1": {1, 2, 3}, "t2": {3, 4, 5},
    })
    g = expand_to_graph(h)
    assert len(g.vertices) == 5 + 2
    assert len(g.edges) == 2 + 3 * 2


def test_induced_subhypergraph(triple_with_tail, triangle, doubled_triangle):
    sub = induced_subhypergraph(triple_with_tail, {1, 2, 3})
    assert set(sub.vertices) == {1, 2, 3}
    # d and e each meet the set in one vertex only
    assert [sub.hyperedges[eid] for eid in sub.edge_ids()] == [frozenset({1, 2, 3})]
    assert sub.root_id(sub.edge_ids()[0]) == "t"

    sub1 = induced_subhypergraph(triangle, {1, 2})
    assert [sub1.hyperedges[eid] for eid in sub1.edge_ids()] == [frozenset({1, 2})]

    sub2 = induced_subhypergraph(doubled_triangle, {1, 2})
    assert sorted(sub2.hyperedges.values(), key=sorted_vertices) == [
        frozenset({1, 2}), frozenset({1, 2}),
    ]


def test_induced_subhypergraph_needs_subset(triangle):
    with pytest.raises(DomainError):
        induced_subhypergraph(triangle, {1, 4})


def test_induced_on_full_ground_keeps_everything(triple_fan):
    sub = induced_subhypergraph(triple_fan, triple_fan.vertices)
    assert len(sub.hyperedges) == len(triple_fan.hyperedges)
    assert sorted(sub.root_id(eid) for eid in sub.edge_ids()) == triple_fan.edge_ids()


def test_connectivity_report_values(triangle, doubled_triangle, triple_with_tail):
    r1 = edge_connectivity_report(triangle)
    assert r1.connected and not r1.truncated
    assert r1.min_cut_size == 2
    assert not r1.forbidden_3cut

    r2 = edge_connectivity_report(doubled_triangle)
    assert r2.min_cut_size == 4
    assert not r2.forbidden_3cut

    # vertex 2 touches only the 3-hyperedge, so one hyperedge cuts it off
    r4 = edge_connectivity_report(triple_with_tail)
    assert r4.min_cut_size == 1
    assert r4.forbidden_3cut


def test_connectivity_report_disconnected():
    h = Hypergraph3([1, 2, 3, 4], {"e": {1, 2}, "f": {3, 4}})
    r = edge_connectivity_report(h)
    assert not r.connected


def test_connectivity_report_truncates_large_hosts():
    n = MAX_CUT_SCAN_VERTICES + 1
    edges = {f"e{i}": {i, i + 1} for i in range(1, n)}
    r = edge_connectivity_report(Hypergraph3(range(1, n + 1), edges))
    assert r.connected
    assert r.truncated


def test_connected_iff_expansion_connected(triple_with_tail):
    h = Hypergraph3([1, 2, 3, 4, 5], {"t": {1, 2, 3}, "d": {4, 5}})
    assert not h.is_connected()
    assert not mg_is_connected(expand_to_graph(h))
    assert triple_with_tail.is_connected()
    assert mg_is_connected(expand_to_graph(triple_with_tail))


def test_multigraph_rejects_loops():
    with pytest.raises(DomainError):
        Multigraph([1, 2], {"e": (1, 1)})


def test_multigraph_degrees(dipole7):
    assert dipole7.degrees() == {"u": 7, "v": 7}
    assert dipole7.ends("m3") == frozenset({"u", "v"})


def test_root_id_composes_through_derivations(triple_fan):
    sub = induced_subhypergraph(triple_fan, {1, 2, 3})
    subsub = induced_subhypergraph(sub, {1, 2})
    for eid in subsub.edge_ids():
        assert subsub.root_id(eid) in triple_fan.hyperedges


def test_infinity_marker():
    assert INFINITY > 10 ** 9


@st.composite
def small_hypergraphs(draw):
    n = draw(st.integers(min_value=2, max_value=6))
    verts = list(range(1, n + 1))
    m = draw(st.integers(min_value=1, max_value=8))
    edges = {}
    for i in range(m):
        arity = draw(st.sampled_from([2, 3])) if n >= 3 else 2
        members = draw(st.permutations(verts))[:arity]
        edges[f"e{i}"] = frozenset(members)
    return Hypergraph3(verts, edges)


@settings(max_examples=60, deadline=None)
@given(small_hypergraphs())
def test_expansion_size_formula(h):
    m3 = sum(1 for e in h.hyperedges.values() if len(e) == 3)
    m2 = len(h.hyperedges) - m3
    g = expand_to_graph(h)
    assert len(g.vertices) == len(h.vertices) + m3
    assert len(g.edges) == m2 + 3 * m3
    assert len(g.aux) == m3


@settings(max_examples=60, deadline=None)
@given(small_hypergraphs())
def test_report_min_cut_matches_bipartition_scan(h):
    import itertools

    r = edge_connectivity_report(h)
    verts = sorted_vertices(h.vertices)
    best = None
    for k in range(1, len(verts)):
        for side in itertools.combinations(verts, k):
            s = set(side)
            cut = sum(
                1 for e in h.hyperedges.values()
                if e & s and e - s
            )
            if best is None or cut < best:
                best = cut
    if best == 0:
        assert not r.connected
    else:
        assert r.connected
        assert r.min_cut_size == best
