"""Narrow/wide partitions, their finest members, and tightness witnesses."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quasitree.core import Hypergraph3
from quasitree.errors import DomainError
from quasitree.narrow_wide import (
    ConnectedComplement,
    Split,
    check_witness,
    finest_narrow,
    finest_wide,
    has_tight_complement,
    is_narrow,
    is_wide,
)
from quasitree.partitions import Partition, meet
from quasitree.quasigraph import Quasigraph


def P(ground, *classes):
    return Partition(ground, [set(c) for c in classes])


def test_is_narrow_examples(triangle_path):
    g = triangle_path.host.vertices
    assert is_narrow(P(g, {1, 3}, {2}), triangle_path)
    assert not is_narrow(Partition.discrete(g), triangle_path)
    assert is_narrow(Partition.trivial(g), triangle_path)


def test_is_wide_examples(triple_with_tail_tree, triangle_path):
    g = triple_with_tail_tree.host.vertices
    assert is_wide(P(g, {1, 2}, {3, 4}), triple_with_tail_tree)
    # a class separating a representation's endpoints is not wide
    assert not is_wide(Partition.discrete(g), triple_with_tail_tree)
    assert is_wide(Partition.trivial(g), triple_with_tail_tree)
    assert not is_wide(P(triangle_path.host.vertices, {1}, {2, 3}), triangle_path)


def test_ground_mismatch_rejected(triangle_path):
    with pytest.raises(DomainError):
        is_narrow(P(frozenset({1, 2}), {1, 2}), triangle_path)
    with pytest.raises(DomainError):
        is_wide(P(frozenset({1, 2}), {1, 2}), triangle_path)


def test_finest_wide_examples(triangle, triangle_path, triple_with_tail_tree):
    assert finest_wide(triangle_path) == Partition.trivial(triangle.vertices)
    assert finest_wide(Quasigraph.empty(triangle)) == Partition.discrete(triangle.vertices)
    g = triple_with_tail_tree.host.vertices
    assert finest_wide(triple_with_tail_tree) == P(g, {1, 2}, {3, 4})


def test_finest_narrow_examples(triangle, triangle_path, doubled_triangle_path):
    assert finest_narrow(triangle_path) == P(triangle.vertices, {1, 3}, {2})
    assert finest_narrow(Quasigraph.empty(triangle)) == Partition.trivial(triangle.vertices)
    assert finest_narrow(doubled_triangle_path) == Partition.trivial(
        doubled_triangle_path.host.vertices
    )


def test_tight_complement_connected_witness(doubled_triangle_path):
    ok, w = has_tight_complement(doubled_triangle_path)
    assert ok
    assert isinstance(w, ConnectedComplement)
    assert w.as_dict() == "connected"
    assert check_witness(
        doubled_triangle_path, doubled_triangle_path.host.vertices, w
    )


def test_tight_complement_negative(triangle_path):
    ok, obstruction = has_tight_complement(triangle_path)
    assert not ok
    assert obstruction == P(triangle_path.host.vertices, {1, 3}, {2})


def test_tight_complement_split_witness(triple_fan_tree):
    ok, w = has_tight_complement(triple_fan_tree)
    assert ok
    assert isinstance(w, Split)
    assert w.x1 == frozenset({1, 2, 3})
    assert w.x2 == frozenset({4})
    assert w.bridge == "e"
    assert isinstance(w.left, ConnectedComplement)
    assert isinstance(w.right, ConnectedComplement)
    assert check_witness(triple_fan_tree, triple_fan_tree.host.vertices, w)
    assert w.as_dict()["split"]["bridge"] == "e"


def test_check_witness_rejects_bad_split(triple_fan_tree):
    good = has_tight_complement(triple_fan_tree)[1]
    bad = Split(
        x1=frozenset({1, 2}),
        x2=frozenset({3, 4}),
        bridge=good.bridge,
        left=ConnectedComplement(),
        right=ConnectedComplement(),
    )
    assert not check_witness(triple_fan_tree, triple_fan_tree.host.vertices, bad)
    # overlapping sides are malformed regardless of the bridge
    overlap = Split(
        x1=frozenset({1, 2, 3}),
        x2=frozenset({3, 4}),
        bridge=good.bridge,
        left=ConnectedComplement(),
        right=ConnectedComplement(),
    )
    assert not check_witness(triple_fan_tree, triple_fan_tree.host.vertices, overlap)


def _all_partitions(ground):
    verts = sorted(ground)
    if not verts:
        return
    first, rest = verts[0], verts[1:]
    if not rest:
        yield [[first]]
        return
    for sub in _all_partitions(rest):
        for i in range(len(sub)):
            yield sub[:i] + [sub[i] + [first]] + sub[i + 1 :]
        yield sub + [[first]]


def _quasigraphs(host):
    ids = host.edge_ids()
    options = [
        [frozenset()] + [frozenset(p) for p in itertools.combinations(sorted(host.hyperedges[e]), 2)]
        for e in ids
    ]
    for combo in itertools.product(*options):
        yield Quasigraph(host, dict(zip(ids, combo)))


@pytest.fixture(scope="module")
def small_pool():
    tri = Hypergraph3({1, 2, 3}, {"a": {1, 2}, "b": {2, 3}, "c": {1, 3}})
    f4 = Hypergraph3({1, 2, 3, 4}, {"t": {1, 2, 3}, "d": {3, 4}, "e": {1, 4}})
    return list(_quasigraphs(tri)) + list(_quasigraphs(f4))


def test_finest_narrow_is_finest(small_pool):
    # exhaustive on small hosts: every narrow partition is coarser
    for pi in small_pool:
        fn = finest_narrow(pi)
        for classes in _all_partitions(pi.host.vertices):
            p = Partition(pi.host.vertices, classes)
            if is_narrow(p, pi):
                assert fn.refines(p)


def test_finest_wide_is_finest(small_pool):
    for pi in small_pool:
        fw = finest_wide(pi)
        for classes in _all_partitions(pi.host.vertices):
            p = Partition(pi.host.vertices, classes)
            if is_wide(p, pi):
                assert fw.refines(p)


def test_narrow_and_wide_closed_under_meet(small_pool):
    for pi in small_pool[:40]:
        parts = [
            Partition(pi.host.vertices, classes)
            for classes in _all_partitions(pi.host.vertices)
        ]
        narrow = [p for p in parts if is_narrow(p, pi)]
        wide = [p for p in parts if is_wide(p, pi)]
        for a, b in itertools.combinations(narrow, 2):
            assert is_narrow(meet(a, b), pi)
        for a, b in itertools.combinations(wide, 2):
            assert is_wide(meet(a, b), pi)


def test_tightness_matches_finest_narrow(small_pool):
    for pi in small_pool:
        ok = has_tight_complement(pi)[0]
        assert ok == finest_narrow(pi).is_trivial()


def test_witness_always_checks(small_pool):
    for pi in small_pool:
        ok, w = has_tight_complement(pi)
        if ok:
            assert check_witness(pi, pi.host.vertices, w)


@settings(max_examples=120, deadline=None)
@given(data=st.data())
def test_random_rep_narrowness_consistency(data):
    host = Hypergraph3(
        {1, 2, 3},
        {"a1": {1, 2}, "a2": {1, 2}, "b1": {2, 3}, "b2": {2, 3}, "c1": {1, 3}, "c2": {1, 3}},
    )
    rep = {}
    for eid in host.edge_ids():
        verts = sorted(host.hyperedges[eid])
        opts = [frozenset()] + [frozenset(p) for p in itertools.combinations(verts, 2)]
        rep[eid] = data.draw(st.sampled_from(opts), label=eid)
    pi = Quasigraph(host, rep)
    fn = finest_narrow(pi)
    assert is_narrow(fn, pi)
    fw = finest_wide(pi)
    assert is_wide(fw, pi)
    # the trivial partition is always narrow, singletons always wide-checkable
    assert is_narrow(Partition.trivial(host.vertices), pi)
