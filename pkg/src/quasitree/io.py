"""JSON and DOT codecs for the file formats shared by the CLI and service.

Vertices serialize as JSON numbers or strings, whichever they are; edge ids
are always strings.  Dumps are canonical (sorted keys, fixed separators) so
identical results serialize to identical bytes.
"""

from __future__ import annotations

import json

from .core import Hypergraph3, Multigraph, sorted_vertices
from .errors import DomainError
from .narrow_wide import ConnectedComplement
from .partitions import Partition
from .quasigraph import Quasigraph


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _require(obj, key: str, what: str):
    if not isinstance(obj, dict) or key not in obj:
        raise DomainError(f"{what} JSON needs a {key!r} field")
    return obj[key]


def hypergraph_to_dict(h: Hypergraph3) -> dict:
    return {
        "vertices": sorted_vertices(h.vertices),
        "hyperedges": [
            {"id": eid, "verts": sorted_vertices(h.hyperedges[eid])}
            for eid in h.edge_ids()
        ],
    }


def hypergraph_from_dict(obj: dict) -> Hypergraph3:
    verts = _require(obj, "vertices", "hypergraph")
    rows = _require(obj, "hyperedges", "hypergraph")
    edges = {}
    for row in rows:
        eid = _require(row, "id", "hyperedge")
        if not isinstance(eid, str):
            raise DomainError("hyperedge ids must be strings")
        if eid in edges:
            raise DomainError(f"duplicate hyperedge id {eid!r}")
        edges[eid] = frozenset(_require(row, "verts", "hyperedge"))
    return Hypergraph3(verts, edges)


def multigraph_to_dict(g: Multigraph) -> dict:
    return {
        "vertices": sorted_vertices(g.vertices),
        "edges": [
            {"id": eid, "ends": sorted_vertices(g.edges[eid])}
            for eid in g.edge_ids()
        ],
    }


def multigraph_from_dict(obj: dict) -> Multigraph:
    verts = _require(obj, "vertices", "multigraph")
    rows = _require(obj, "edges", "multigraph")
    edges = {}
    for row in rows:
        eid = _require(row, "id", "edge")
        if not isinstance(eid, str):
            raise DomainError("edge ids must be strings")
        if eid in edges:
            raise DomainError(f"duplicate edge id {eid!r}")
        edges[eid] = _require(row, "ends", "edge")
    return Multigraph(verts, edges)


def quasigraph_to_dict(pi: Quasigraph) -> dict:
    return {
        "hypergraph": hypergraph_to_dict(pi.host),
        "rep": {
            eid: (sorted_vertices(pi.rep[eid]) if pi.rep[eid] else None)
            for eid in pi.host.edge_ids()
        },
    }


def quasigraph_from_dict(obj: dict, host: Hypergraph3 = None) -> Quasigraph:
    """Read a quasigraph file; `host` supplies the hypergraph when the file
    carries only a rep map, and must agree with an embedded one otherwise."""
    if "hypergraph" in obj:
        embedded = hypergraph_from_dict(obj["hypergraph"])
        if host is not None and embedded != host:
            raise DomainError("quasigraph file disagrees with the given hypergraph")
        host = embedded
    if host is None:
        raise DomainError("quasigraph JSON needs a 'hypergraph' field")
    rep_obj = _require(obj, "rep", "quasigraph")
    rep = {eid: (val or ()) for eid, val in rep_obj.items()}
    return Quasigraph(host, rep)


def witness_to_dict(w):
    """Tightness witness as JSON: "connected" or a recursive split record."""
    if isinstance(w, ConnectedComplement):
        return "connected"
    return {
        "split": {
            "x1": sorted_vertices(w.x1),
            "x2": sorted_vertices(w.x2),
            "bridge": w.bridge,
            "left": witness_to_dict(w.left),
            "right": witness_to_dict(w.right),
        }
    }


def partition_to_dict(p: Partition) -> dict:
    return {"classes": p.as_lists()}


def partition_from_dict(obj: dict) -> Partition:
    classes = _require(obj, "classes", "partition")
    ground = {v for cls in classes for v in cls}
    return Partition(ground, classes)


def _dot_id(v) -> str:
    return json.dumps(str(v))


def multigraph_dot(g: Multigraph, highlight=(), title: str = "g") -> str:
    """DOT rendering; highlighted edge ids come out bold."""
    marked = set(highlight)
    lines = [f"graph {json.dumps(title)} {{"]
    for v in sorted_vertices(g.vertices):
        lines.append(f"  {_dot_id(v)};")
    for eid in g.edge_ids():
        a, b = sorted_vertices(g.edges[eid])
        attrs = f"label={json.dumps(eid)}"
        if eid in marked:
            attrs += ", style=bold, color=red"
        lines.append(f"  {_dot_id(a)} -- {_dot_id(b)} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def hypergraph_dot(h: Hypergraph3, pi: Quasigraph = None, title: str = "h") -> str:
    """DOT rendering; 3-hyperedges become point hubs, an optional quasigraph
    overlays its representation pairs as solid edges (the rest dashed)."""
    lines = [f"graph {json.dumps(title)} {{"]
    for v in sorted_vertices(h.vertices):
        lines.append(f"  {_dot_id(v)};")
    for eid in h.edge_ids():
        verts = sorted_vertices(h.hyperedges[eid])
        rep = pi.rep[eid] if pi is not None else None
        if len(verts) == 2:
            style = "solid" if rep else ("dashed" if pi is not None else "solid")
            a, b = verts
            lines.append(
                f"  {_dot_id(a)} -- {_dot_id(b)} "
                f"[label={json.dumps(eid)}, style={style}];"
            )
            continue
        hub = f"hub:{eid}"
        lines.append(f"  {_dot_id(hub)} [shape=point, label={json.dumps(eid)}];")
        for v in verts:
            style = "solid" if rep and v in rep else (
                "dashed" if pi is not None else "solid"
            )
            lines.append(f"  {_dot_id(hub)} -- {_dot_id(v)} [style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
