import itertools
import json

import pytest

from quasitree.core import Hypergraph3, Multigraph


@pytest.fixture
def triangle():
    # three vertices, one plain edge per side
    return Hypergraph3([1, 2, 3], {"a": {1, 2}, "b": {2, 3}, "c": {1, 3}})


@pytest.fixture
def triangle_path(triangle):
    from quasitree.quasigraph import Quasigraph

    return Quasigraph(triangle, {"a": (1, 2), "b": (2, 3), "c": ()})


@pytest.fixture
def doubled_triangle():
    return Hypergraph3([1, 2, 3], {
        "a1": {1, 2}, "a2": {1, 2},
        "b1": {2, 3}, "b2": {2, 3},
        "c1": {1, 3}, "c2": {1, 3},
    })


@pytest.fixture
def doubled_triangle_path(doubled_triangle):
    from quasitree.quasigraph import Quasigraph

    return Quasigraph(doubled_triangle, {
        "a1": (1, 2), "b1": (2, 3),
        "a2": (), "b2": (), "c1": (), "c2": (),
    })


@pytest.fixture
def triple_with_tail():
    # one 3-hyperedge and a two-edge tail back around through vertex 4
    return Hypergraph3([1, 2, 3, 4], {"t": {1, 2, 3}, "d": {3, 4}, "e": {1, 4}})


@pytest.fixture
def triple_with_tail_tree(triple_with_tail):
    from quasitree.quasigraph import Quasigraph

    return Quasigraph(triple_with_tail, {"t": (1, 2), "d": (3, 4), "e": ()})


@pytest.fixture
def triple_fan():
    return Hypergraph3([1, 2, 3, 4], {
        "e": {2, 3, 4}, "f": {1, 4}, "g": {1, 2}, "h": {1, 3}, "k": {2, 3},
    })


@pytest.fixture
def triple_fan_tree(triple_fan):
    from quasitree.quasigraph import Quasigraph

    return Quasigraph(triple_fan, {
        "e": (2, 3), "f": (1, 4), "g": (1, 2), "h": (), "k": (),
    })


@pytest.fixture
def dipole7():
    return Multigraph(["u", "v"], {f"m{i}": ("u", "v") for i in range(1, 8)})


@pytest.fixture
def k5():
    return Multigraph(range(1, 6), {
        f"k{i}{j}": (i, j) for i, j in itertools.combinations(range(1, 6), 2)
    })


@pytest.fixture
def hub_triangle():
    # doubled triangle with an extra vertex joined to all three corners
    return Multigraph([1, 2, 3, "v"], {
        "a1": (1, 2), "a2": (1, 2), "b1": (2, 3), "b2": (2, 3),
        "c1": (1, 3), "c2": (1, 3),
        "e1": ("v", 1), "e2": ("v", 2), "e3": ("v", 3),
    })


@pytest.fixture
def hub_triangle_alt_ids():
    # same graph, corner edges renamed so that id order flips around the hub
    return Multigraph([1, 2, 3, "v"], {
        "xa1": (1, 2), "xa2": (1, 2), "xb1": (2, 3), "xb2": (2, 3),
        "xc1": (1, 3), "xc2": (1, 3),
        "e1": ("v", 1), "e2": ("v", 2), "e3": ("v", 3),
    })


@pytest.fixture
def tripled_triangle():
    return Multigraph([1, 2, 3], {
        "a1": (1, 2), "a2": (1, 2), "a3": (1, 2),
        "b1": (2, 3), "b2": (2, 3), "b3": (2, 3),
        "c1": (1, 3), "c2": (1, 3), "c3": (1, 3),
    })


@pytest.fixture
def suspended_dipole():
    # five parallel edges plus a length-2 path through an extra vertex
    return Multigraph(["a", "b", "p"], {
        "t1": ("a", "b"), "t2": ("a", "b"), "t3": ("a", "b"),
        "t4": ("a", "b"), "t5": ("a", "b"),
        "p1": ("a", "p"), "p2": ("p", "b"),
    })


@pytest.fixture
def star7():
    return Multigraph(["a"] + [f"l{i}" for i in range(1, 8)], {
        f"e{i}": ("a", f"l{i}") for i in range(1, 8)
    })


@pytest.fixture
def data_dir(tmp_path):
    """Directory with the JSON fixture files the CLI examples use."""
    f1 = {
        "vertices": [1, 2, 3],
        "hyperedges": [
            {"id": "a", "verts": [1, 2]},
            {"id": "b", "verts": [2, 3]},
            {"id": "c", "verts": [1, 3]},
        ],
    }
    f2 = {
        "vertices": [1, 2, 3],
        "hyperedges": [
            {"id": "a1", "verts": [1, 2]}, {"id": "a2", "verts": [1, 2]},
            {"id": "b1", "verts": [2, 3]}, {"id": "b2", "verts": [2, 3]},
            {"id": "c1", "verts": [1, 3]}, {"id": "c2", "verts": [1, 3]},
        ],
    }
    pi2 = {"rep": {"a1": [1, 2], "a2": None, "b1": [2, 3], "b2": None,
                   "c1": None, "c2": None}}
    g7 = {
        "vertices": ["u", "v"],
        "edges": [{"id": f"m{i}", "ends": ["u", "v"]} for i in range(1, 8)],
    }
    for name, obj in (("f1", f1), ("f2", f2), ("pi2", pi2), ("g7", g7)):
        (tmp_path / f"{name}.json").write_text(json.dumps(obj))
    return tmp_path
