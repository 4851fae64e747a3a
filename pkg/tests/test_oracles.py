"""Brute-force referees and seeded generators."""

import itertools

import pytest

from quasitree.core import Hypergraph3, Multigraph, edge_connectivity_report
from quasitree.errors import DomainError, GenerationExhausted, SizeGuardError
from quasitree.narrow_wide import has_tight_complement
from quasitree.oracles import (
    all_partitions,
    brute_force_hamilton,
    brute_force_tight_quasitrees,
    enumerate_hypergraphs,
    enumerate_quasigraphs,
    generate_instances,
    tight_by_definition,
    tight_by_narrow_enumeration,
    GRAPH_CONSTRAINT,
    HYPERGRAPH_CONSTRAINT,
)
from quasitree.pipeline import analyze_graph
from quasitree.quasigraph import QuasiClass, Quasigraph, classify


def test_tight_quasitrees_of_doubled_triangle(doubled_triangle, doubled_triangle_path):
    found = brute_force_tight_quasitrees(doubled_triangle)
    assert len(found) == 12
    assert any(pi.rep == doubled_triangle_path.rep for pi in found)
    for pi in found:
        assert classify(pi) is QuasiClass.QUASITREE
        assert has_tight_complement(pi)[0]


def test_plain_triangle_has_no_tight_quasitree(triangle):
    # a spanning quasitree uses two hyperedges, leaving one unused copy whose
    # complement misses a vertex
    assert brute_force_tight_quasitrees(triangle) == []


def test_single_vertex_host():
    h = Hypergraph3({7}, {})
    found = brute_force_tight_quasitrees(h)
    assert len(found) == 1
    assert found[0].rep == {}


def test_limit_stops_early(doubled_triangle):
    found = brute_force_tight_quasitrees(doubled_triangle, limit=1)
    assert len(found) == 1


def test_brute_force_guards():
    big_v = Hypergraph3(range(1, 10), {"e": {1, 2}})
    with pytest.raises(SizeGuardError):
        brute_force_tight_quasitrees(big_v)
    big_e = Hypergraph3(
        {1, 2, 3}, {f"e{i}": {1, 2} for i in range(13)}
    )
    with pytest.raises(SizeGuardError):
        brute_force_tight_quasitrees(big_e)
    with pytest.raises(SizeGuardError):
        list(enumerate_quasigraphs(big_e))


def test_two_tightness_routes_agree(triple_with_tail):
    for pi in enumerate_quasigraphs(triple_with_tail):
        assert tight_by_narrow_enumeration(pi) == tight_by_definition(pi)


def test_enumerate_quasigraphs_count(doubled_triangle, triple_with_tail):
    # two options per pair (empty or the pair), four per triple
    assert sum(1 for _ in enumerate_quasigraphs(doubled_triangle)) == 2 ** 6
    assert sum(1 for _ in enumerate_quasigraphs(triple_with_tail)) == 4 * 2 * 2


def test_all_partitions_bell_numbers():
    assert sum(1 for _ in all_partitions(frozenset({1, 2, 3}))) == 5
    assert sum(1 for _ in all_partitions(frozenset({1, 2, 3, 4}))) == 15


def test_hamilton_cycle_in_k7(k5):
    k7 = Multigraph(
        range(1, 8),
        {
            f"e{a}{b}": (a, b)
            for a, b in itertools.combinations(range(1, 8), 2)
        },
    )
    tour = brute_force_hamilton(k7, mode="cycle")
    assert tour is not None and len(tour) == 7
    cyc5 = brute_force_hamilton(k5, mode="cycle")
    assert cyc5 is not None and len(cyc5) == 5


def test_hamilton_cycle_absent_on_path():
    p3 = Multigraph([1, 2, 3], {"p": (1, 2), "q": (2, 3)})
    assert brute_force_hamilton(p3, mode="cycle") is None
    path = brute_force_hamilton(p3, mode="path", ends=(1, 3))
    assert path == [1, 2, 3]
    assert brute_force_hamilton(p3, mode="path", ends=(1, 2)) is None


def test_hamilton_argument_checks():
    p3 = Multigraph([1, 2, 3], {"p": (1, 2), "q": (2, 3)})
    with pytest.raises(DomainError):
        brute_force_hamilton(p3, mode="path")
    with pytest.raises(DomainError):
        brute_force_hamilton(p3, mode="path", ends=(1, 9))
    with pytest.raises(DomainError):
        brute_force_hamilton(p3, mode="walk")
    big = Multigraph(range(13), {})
    with pytest.raises(SizeGuardError):
        brute_force_hamilton(big, mode="cycle")


def test_enumerate_hypergraphs_counts():
    assert sum(1 for _ in enumerate_hypergraphs(2)) == 1
    # three pairs and one triple on three vertices: all nonempty subsets
    assert sum(1 for _ in enumerate_hypergraphs(3)) == 15


def test_enumerate_hypergraphs_constraint():
    # no simple host on three vertices reaches cut size 4; four suffice
    assert list(enumerate_hypergraphs(3, constraint=HYPERGRAPH_CONSTRAINT)) == []
    hosts = list(enumerate_hypergraphs(4, constraint=HYPERGRAPH_CONSTRAINT))
    assert len(hosts) == 14
    for h in hosts:
        report = edge_connectivity_report(h)
        assert report.min_cut_size >= 4
        assert not report.forbidden_3cut
    with pytest.raises(DomainError):
        next(enumerate_hypergraphs(3, constraint="frob"))


def test_enumerate_hypergraphs_deterministic_ids():
    first = next(enumerate_hypergraphs(3))
    assert first.edge_ids() == ["e1"]


def test_generator_streams_are_replayable():
    spec = {"kind": "hypergraph", "n": 4, "constraints": "none", "seed": 11}
    a = list(itertools.islice(generate_instances(dict(spec)), 4))
    b = list(itertools.islice(generate_instances(dict(spec)), 4))
    for x, y in zip(a, b):
        assert x.vertices == y.vertices
        assert {e: x.hyperedges[e] for e in x.edge_ids()} == {
            e: y.hyperedges[e] for e in y.edge_ids()
        }


def test_generator_enforces_hypergraph_constraint():
    spec = {
        "kind": "hypergraph",
        "n": 4,
        "constraints": HYPERGRAPH_CONSTRAINT,
        "seed": 41,
    }
    for h in itertools.islice(generate_instances(spec), 2):
        report = edge_connectivity_report(h)
        assert report.min_cut_size >= 4
        assert not report.forbidden_3cut


def test_generator_enforces_graph_constraint():
    spec = {"kind": "graph", "n": 2, "constraints": GRAPH_CONSTRAINT, "seed": 1}
    g = next(generate_instances(spec))
    assert len(g.edges) >= 7
    analysis = analyze_graph(g)
    assert analysis.min_edge_weight >= 6


def test_generator_exhaustion():
    spec = {
        "kind": "hypergraph",
        "n": 4,
        "constraints": HYPERGRAPH_CONSTRAINT,
        "seed": 3,
        "max_edges": 3,
        "attempts": 60,
    }
    with pytest.raises(GenerationExhausted):
        next(generate_instances(spec))


def test_generator_argument_checks():
    with pytest.raises(DomainError):
        generate_instances({"kind": "matroid", "n": 3})
    with pytest.raises(DomainError):
        generate_instances({"kind": "hypergraph", "n": 0})
    with pytest.raises(DomainError):
        generate_instances({"kind": "graph", "n": 1})
    with pytest.raises(DomainError):
        generate_instances({"kind": "graph", "n": 3, "constraints": "frob"})
