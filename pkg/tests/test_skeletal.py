"""Cycle breaking, the skeletal improvement loop, and the counting audit."""

import dataclasses

import pytest

from quasitree.core import Hypergraph3
from quasitree.errors import DomainError, RejectionError, SearchExhausted
from quasitree.narrow_wide import has_tight_complement
from quasitree.order import compare_quasigraphs, is_skeletal, strictly_improves
from quasitree.partitions import Cmp, Partition
from quasitree.quasigraph import QuasiClass, Quasigraph, classify
from quasitree.skeletal import (
    CountingLedger,
    Improved,
    SkeletalFound,
    audit_ledger,
    break_cycles,
    build_ledger,
    find_tight_quasitree,
    maximize,
    skeletal_step,
)


def test_break_cycles_noop_on_acyclic(doubled_triangle_path):
    out = break_cycles(doubled_triangle_path, 1)
    assert out.rep == doubled_triangle_path.rep


def test_break_cycles_removes_a_cycle_edge(triangle):
    gamma = Quasigraph(
        triangle,
        {"a": (1, 2), "b": (2, 3), "c": (1, 3)},
    )
    out = break_cycles(gamma, 1)
    assert set(out.used_ids()) == {"b", "c"}
    assert strictly_improves(out, gamma)


def test_break_cycles_preconditions(triangle):
    gamma = Quasigraph(triangle, {"a": (1, 2), "b": (2, 3), "c": (1, 3)})
    with pytest.raises(DomainError):
        break_cycles(gamma, -1)
    # term 0 is the trivial partition here, so the cycle sits inside a class
    with pytest.raises(DomainError):
        break_cycles(gamma, 0)


def test_skeletal_step_on_finished_tree(doubled_triangle_path):
    out = skeletal_step(doubled_triangle_path)
    assert isinstance(out, SkeletalFound)
    assert out.quasigraph.rep == doubled_triangle_path.rep
    assert out.partition == Partition.trivial(doubled_triangle_path.host.vertices)


def test_skeletal_step_improves_from_empty(doubled_triangle):
    out = skeletal_step(Quasigraph.empty(doubled_triangle))
    assert isinstance(out, Improved)
    assert strictly_improves(out.quasigraph, Quasigraph.empty(doubled_triangle))


def test_skeletal_step_stalls_on_plain_triangle(triangle_path):
    out = skeletal_step(triangle_path)
    assert isinstance(out, SkeletalFound)
    assert out.quasigraph.rep == triangle_path.rep
    assert out.partition == Partition.discrete(triangle_path.host.vertices)


def test_maximize_reaches_skeletal_pair(doubled_triangle):
    sigma, p = maximize(Quasigraph.empty(doubled_triangle))
    assert is_skeletal(sigma, p)


def test_find_tight_quasitree_on_doubled_triangle(doubled_triangle):
    sigma = find_tight_quasitree(doubled_triangle)
    assert classify(sigma) is QuasiClass.QUASITREE
    ok, w = has_tight_complement(sigma)
    assert ok


def test_find_rejects_thin_host(triangle):
    with pytest.raises(RejectionError) as err:
        find_tight_quasitree(triangle)
    assert err.value.stage == "hypothesis-check"
    assert err.value.reason == "min_cut_size 2 < 4"


def test_find_rejects_disconnected_host():
    h = Hypergraph3({1, 2, 3, 4}, {"a": {1, 2}, "b": {3, 4}})
    with pytest.raises(RejectionError) as err:
        find_tight_quasitree(h)
    assert "disconnected" in err.value.reason


def test_find_with_a_triple(doubled_triangle):
    edges = {e: set(doubled_triangle.hyperedges[e]) for e in doubled_triangle.edge_ids()}
    edges["t"] = {1, 2, 3}
    host = Hypergraph3({1, 2, 3}, edges)
    sigma = find_tight_quasitree(host)
    assert classify(sigma) is QuasiClass.QUASITREE
    assert has_tight_complement(sigma)[0]


def test_find_trace_shape(doubled_triangle):
    trace = []
    find_tight_quasitree(doubled_triangle, trace=trace)
    assert trace
    assert trace[-1]["event"] == "skeletal"
    assert "partition" in trace[-1]
    steps = [t["step"] for t in trace]
    assert steps == sorted(steps)
    for entry in trace[:-1]:
        assert entry["event"] in ("improved", "skeletal", "audit")
        if entry["event"] == "improved":
            assert isinstance(entry["used"], dict)


def test_find_iteration_cap(doubled_triangle):
    with pytest.raises(SearchExhausted):
        find_tight_quasitree(doubled_triangle, max_iterations=1)


def test_trace_improvements_are_strict(doubled_triangle):
    trace = []
    host_edges = {e: set(doubled_triangle.hyperedges[e]) for e in doubled_triangle.edge_ids()}
    host_edges["t"] = {1, 2, 3}
    host = Hypergraph3({1, 2, 3}, host_edges)
    find_tight_quasitree(host, trace=trace)
    prev = Quasigraph.empty(host)
    for entry in trace:
        if entry["event"] == "audit":
            continue
        cur = Quasigraph(
            host,
            {
                e: frozenset(entry["used"].get(e, ()))
                for e in host.edge_ids()
            },
        )
        if entry["event"] == "improved":
            assert strictly_improves(cur, prev)
            prev = cur
        else:
            assert compare_quasigraphs(prev, cur).preceq is Cmp.EQUAL


def test_build_ledger_on_triangle(triangle_path):
    led = build_ledger(triangle_path, Partition.discrete(triangle_path.host.vertices))
    assert (led.n, led.m) == (3, 3)
    assert (led.m2, led.m3, led.mbar2, led.mbar3) == (2, 0, 1, 0)
    assert led.deg_sum_working == 6
    assert led.deg_sum_reference == 6
    assert (led.n4, led.n5plus) == (0, 0)
    assert led.slack() == 6
    audit = audit_ledger(led)
    assert audit.failed == ("min-degree-split",)
    assert not audit.contradiction_detected
    assert not audit.eq_star_holds


def test_build_ledger_reference_host_must_match(triangle_path, doubled_triangle):
    other = Hypergraph3({1, 2}, {"z": {1, 2}})
    with pytest.raises(DomainError):
        build_ledger(
            triangle_path,
            Partition.discrete(triangle_path.host.vertices),
            reference_host=other,
        )


CONSISTENT = CountingLedger(
    n=7, m=11, m2=0, m3=6, mbar2=5, mbar3=0, n4=7, n5plus=0,
    deg_sum_working=28, deg_sum_reference=28, drop_allowance=0,
    orientation_ok=True, orientation_detail="",
)


def test_audit_detects_contradiction_on_consistent_numbers():
    audit = audit_ledger(CONSISTENT)
    assert audit.failed == ()
    assert audit.eq_star_holds
    assert audit.contradiction_detected
    assert audit.as_dict()["failed"] == []


@pytest.mark.parametrize(
    "change, expected",
    [
        ({"m": 12}, {"edge-partition", "strict-sum", "degree-identity"}),
        ({"deg_sum_working": 27}, {"degree-identity", "degree-drop"}),
        ({"orientation_ok": False}, {"orientation"}),
        ({"n4": 6}, {"min-degree-split"}),
    ],
)
def test_audit_names_each_failed_premise(change, expected):
    led = dataclasses.replace(CONSISTENT, **change)
    audit = audit_ledger(led)
    assert set(audit.failed) == expected
    assert not audit.contradiction_detected


def test_ledger_slack_shrinks_with_drop_allowance():
    led = dataclasses.replace(CONSISTENT, drop_allowance=4)
    assert led.slack() == 2
    audit = audit_ledger(led)
    assert audit.eq_star_holds
