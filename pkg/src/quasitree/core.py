"""Core structures: 3-hypergraphs, multigraphs, expansion, cut enumeration.

A 3-hypergraph has hyperedges of cardinality 2 or 3, addressed by string id so
parallel copies stay distinct.  Derived structures (induced subhypergraphs,
sections, contractions) keep the parent id string for each surviving hyperedge
and record a provenance map plus a parent pointer; `root_id` composes the
chain back to the original host.

Vertex ids are opaque ints or strings.  All iteration in this package is done
in `order_key` order so that every run of every operation is deterministic.
Multigraph vertices added by `expand_to_graph` for 3-hyperedges are strings
prefixed with "@" and are listed in the graph's `aux` set.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, Optional

from .errors import DomainError, InvariantViolation

Vertex = int | str
INFINITY = math.inf

# Exhaustive bipartition scans stop beyond this many vertices; the report
# carries a `truncated` flag instead of silently lying.
MAX_CUT_SCAN_VERTICES = 16


def order_key(v):
    """Total order over mixed int/str vertex ids (ints first, then strings)."""
    if isinstance(v, bool):  # bool is an int subclass; forbid quietly odd ids
        raise DomainError(f"bool is not a valid vertex id: {v!r}")
    if isinstance(v, int):
        return (0, v, "")
    return (1, 0, str(v))


def sorted_vertices(vs: Iterable[Vertex]) -> list:
    return sorted(vs, key=order_key)


class Hypergraph3:
    """Immutable 3-hypergraph with id-addressed hyperedges of size 2 or 3."""

    __slots__ = ("vertices", "hyperedges", "parent", "provenance", "_hash")

    def __init__(
        self,
        vertices: Iterable[Vertex],
        hyperedges: dict[str, Iterable[Vertex]],
        parent: Optional["Hypergraph3"] = None,
        provenance: Optional[dict[str, str]] = None,
    ):
        self.vertices = frozenset(vertices)
        edges: dict[str, frozenset] = {}
        for eid in sorted(hyperedges):
            verts = frozenset(hyperedges[eid])
            if not isinstance(eid, str):
                raise DomainError(f"hyperedge id must be a string: {eid!r}")
            if len(verts) not in (2, 3):
                raise DomainError(
                    f"hyperedge {eid!r} has {len(verts)} distinct vertices; need 2 or 3"
                )
            if not verts <= self.vertices:
                raise DomainError(f"hyperedge {eid!r} uses vertices outside the ground set")
            edges[eid] = verts
        self.hyperedges = edges
        self.parent = parent
        self.provenance = dict(provenance) if provenance is not None else None
        self._hash = hash(
            (self.vertices, tuple(sorted((k, v) for k, v in edges.items())))
        )

    # Value equality ignores provenance: two hosts with the same ground set and
    # the same id -> vertex-set mapping are the same hypergraph.
    def __eq__(self, other):
        if not isinstance(other, Hypergraph3):
            return NotImplemented
        return self.vertices == other.vertices and self.hyperedges == other.hyperedges

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Hypergraph3(|V|={len(self.vertices)}, |E|={len(self.hyperedges)})"

    def edge_ids(self) -> list[str]:
        return sorted(self.hyperedges)

    def verts(self, eid: str) -> frozenset:
        try:
            return self.hyperedges[eid]
        except KeyError:
            raise DomainError(f"unknown hyperedge id {eid!r}") from None

    def arity(self, eid: str) -> int:
        return len(self.verts(eid))

    def degree(self, v: Vertex) -> int:
        return sum(1 for verts in self.hyperedges.values() if v in verts)

    def incident(self, v: Vertex) -> list[str]:
        return [eid for eid in self.edge_ids() if v in self.hyperedges[eid]]

    def root_id(self, eid: str) -> str:
        """Follow provenance chains to the id in the outermost ancestor host."""
        host: Hypergraph3 = self
        while host.provenance is not None and host.parent is not None:
            eid = host.provenance[eid]
            host = host.parent
        return eid

    def without_hyperedges(self, ids: Iterable[str]) -> "Hypergraph3":
        drop = set(ids)
        unknown = drop - set(self.hyperedges)
        if unknown:
            raise DomainError(f"cannot delete unknown hyperedges: {sorted(unknown)}")
        kept = {eid: verts for eid, verts in self.hyperedges.items() if eid not in drop}
        return Hypergraph3(
            self.vertices, kept, parent=self, provenance={eid: eid for eid in kept}
        )

    def components(self) -> list[tuple[frozenset, frozenset]]:
        """Connected components as (vertex set, hyperedge id set) pairs.

        Isolated vertices form singleton components with no hyperedges.
        """
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra

        for eid in self.edge_ids():
            verts = sorted_vertices(self.hyperedges[eid])
            for w in verts[1:]:
                union(verts[0], w)
        groups: dict = {}
        for v in self.vertices:
            groups.setdefault(find(v), set()).add(v)
        comps = []
        for root in sorted(groups, key=order_key):
            vs = frozenset(groups[root])
            es = frozenset(
                eid for eid, verts in self.hyperedges.items() if verts <= vs and verts
            )
            comps.append((vs, es))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1


def induced_subhypergraph(h: Hypergraph3, x: Iterable[Vertex]) -> Hypergraph3:
    """H[X]: hyperedges e∩X with at least two vertices, parallel copies kept."""
    xs = frozenset(x)
    if not xs <= h.vertices:
        raise DomainError("induced vertex set is not a subset of the ground set")
    edges = {}
    prov = {}
    for eid in h.edge_ids():
        inter = h.hyperedges[eid] & xs
        if len(inter) >= 2:
            edges[eid] = inter
            prov[eid] = eid
    return Hypergraph3(xs, edges, parent=h, provenance=prov)


class ConnectivityReport:
    """Result of the exhaustive bipartition cut scan."""

    __slots__ = ("connected", "min_cut_size", "forbidden_3cut", "truncated")

    def __init__(self, connected, min_cut_size, forbidden_3cut, truncated):
        self.connected = connected
        self.min_cut_size = min_cut_size
        self.forbidden_3cut = forbidden_3cut
        self.truncated = truncated

    def as_dict(self):
        size = self.min_cut_size
        return {
            "connected": self.connected,
            "min_cut_size": None if size == INFINITY else size,
            "forbidden_3cut": self.forbidden_3cut,
            "truncated": self.truncated,
        }


def _bipartition_cuts(h: Hypergraph3) -> Iterator[frozenset]:
    """Crossing hyperedge-id sets delta(X) over all bipartitions, X up to complement."""
    verts = sorted_vertices(h.vertices)
    n = len(verts)
    if n < 2:
        return
    anchor = verts[0]
    rest = verts[1:]
    for mask in range(1 << (n - 1)):
        side = {anchor} | {rest[i] for i in range(n - 1) if mask >> i & 1}
        if len(side) == n:
            continue
        yield frozenset(
            eid
            for eid, everts in h.hyperedges.items()
            if everts & side and everts - side
        )


def edge_connectivity_report(h: Hypergraph3) -> ConnectivityReport:
    """Minimum cut size and the 3-hyperedge-in-small-cut flag, by exhaustion.

    Edge-cuts are inclusionwise minimal disconnecting sets; every such set is
    the full crossing set of some bipartition, so scanning bipartitions is
    exhaustive.  The forbidden_3cut flag is computed over inclusion-minimal
    cuts of size at most 4 only (a smaller cut strictly inside one of these
    would itself have size at most 4, so minimality within the small cuts is
    true minimality).
    """
    if len(h.vertices) > MAX_CUT_SCAN_VERTICES:
        return ConnectivityReport(h.is_connected(), INFINITY, False, True)
    if len(h.vertices) <= 1:
        return ConnectivityReport(True, INFINITY, False, False)
    min_size = INFINITY
    small: set[frozenset] = set()
    connected = True
    for cut in _bipartition_cuts(h):
        if not cut:
            connected = False
        min_size = min(min_size, len(cut))
        if len(cut) <= 4:
            small.add(cut)
    forbidden = False
    for cut in small:
        if any(other < cut for other in small):
            continue  # not inclusion-minimal, hence not an edge-cut
        if any(len(h.hyperedges[eid]) == 3 for eid in cut):
            forbidden = True
            break
    if not connected:
        min_size = 0
    return ConnectivityReport(connected, min_size, forbidden, False)


class Multigraph:
    """Immutable multigraph: id-addressed edges, no loops.

    `aux` marks vertices added by hypergraph expansion.  `edge_origin` (when
    present) maps an edge id to (hyperedge id, endpoint) describing where the
    edge came from.
    """

    __slots__ = ("vertices", "edges", "aux", "edge_origin", "_hash")

    def __init__(
        self,
        vertices: Iterable,
        edges: dict[str, Iterable],
        aux: Iterable = (),
        edge_origin: Optional[dict] = None,
    ):
        self.vertices = frozenset(vertices)
        es: dict[str, frozenset] = {}
        for eid in sorted(edges):
            ends = frozenset(edges[eid])
            if len(ends) != 2:
                raise DomainError(f"edge {eid!r} must have two distinct endpoints")
            if not ends <= self.vertices:
                raise DomainError(f"edge {eid!r} uses vertices outside the graph")
            es[eid] = ends
        self.edges = es
        self.aux = frozenset(aux)
        self.edge_origin = dict(edge_origin) if edge_origin else None
        self._hash = hash((self.vertices, tuple(sorted((k, v) for k, v in es.items()))))

    def __eq__(self, other):
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Multigraph(|V|={len(self.vertices)}, |E|={len(self.edges)})"

    def edge_ids(self) -> list[str]:
        return sorted(self.edges)

    def ends(self, eid: str) -> frozenset:
        try:
            return self.edges[eid]
        except KeyError:
            raise DomainError(f"unknown edge id {eid!r}") from None

    def degree(self, v) -> int:
        return sum(1 for ends in self.edges.values() if v in ends)

    def degrees(self) -> dict:
        degs = {v: 0 for v in self.vertices}
        for ends in self.edges.values():
            for v in ends:
                degs[v] += 1
        return degs

    def adjacency(self) -> dict:
        """vertex -> list of (edge id, other endpoint), edge ids sorted."""
        adj: dict = {v: [] for v in self.vertices}
        for eid in self.edge_ids():
            a, b = sorted_vertices(self.edges[eid])
            adj[a].append((eid, b))
            adj[b].append((eid, a))
        return adj

    def incident(self, v) -> list[str]:
        return [eid for eid in self.edge_ids() if v in self.edges[eid]]

    def subgraph_of_edges(self, ids: Iterable[str], keep_vertices=None) -> "Multigraph":
        ids = sorted(set(ids))
        for eid in ids:
            self.ends(eid)
        verts = set(keep_vertices) if keep_vertices is not None else set()
        for eid in ids:
            verts |= self.edges[eid]
        origin = None
        if self.edge_origin is not None:
            origin = {eid: self.edge_origin[eid] for eid in ids if eid in self.edge_origin}
        return Multigraph(
            verts, {eid: self.edges[eid] for eid in ids}, aux=self.aux & verts,
            edge_origin=origin,
        )


def expand_to_graph(h: Hypergraph3) -> Multigraph:
    """Gr(H): each 3-hyperedge e becomes a new vertex "@e" joined to e's vertices.

    2-hyperedges keep their id as the edge id; a 3-hyperedge e yields edges
    "e~x" with origin (e, x).  Collisions with user-picked ids are rejected.
    """
    vertices = set(h.vertices)
    edges: dict[str, frozenset] = {}
    aux = set()
    origin: dict[str, tuple] = {}
    for eid in h.edge_ids():
        verts = h.hyperedges[eid]
        if len(verts) == 2:
            edges[eid] = verts
            origin[eid] = (eid, None)
        else:
            hub = f"@{eid}"
            if hub in vertices:
                raise InvariantViolation(f"expansion vertex {hub!r} collides with a vertex")
            vertices.add(hub)
            aux.add(hub)
            for x in sorted_vertices(verts):
                gid = f"{eid}~{x}"
                if gid in edges or gid in h.hyperedges:
                    raise InvariantViolation(f"expansion edge id {gid!r} collides")
                edges[gid] = frozenset({hub, x})
                origin[gid] = (eid, x)
    return Multigraph(vertices, edges, aux=aux, edge_origin=origin)


# ---------------------------------------------------------------------------
# Small deterministic multigraph routines used across the package.


def mg_components(g: Multigraph) -> list[frozenset]:
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for ends in g.edges.values():
        a, b = tuple(ends)
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
    groups: dict = {}
    for v in g.vertices:
        groups.setdefault(find(v), set()).add(v)
    return [frozenset(groups[r]) for r in sorted(groups, key=order_key)]


def mg_is_connected(g: Multigraph) -> bool:
    return len(mg_components(g)) <= 1


def mg_is_forest(g: Multigraph) -> bool:
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid in g.edge_ids():
        a, b = tuple(g.edges[eid])
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[rb] = ra
    return True


def mg_is_tree(g: Multigraph) -> bool:
    return mg_is_forest(g) and mg_is_connected(g)


def mg_find_cycle(g: Multigraph) -> Optional[tuple[list, list[str]]]:
    """One cycle as (vertex sequence, edge id sequence), or None if a forest.

    Deterministic: DFS from the smallest vertex, edges in id order, the entering
    edge is excluded by id (so parallel edges close 2-cycles).
    """
    adj = g.adjacency()
    visited: set = set()
    for start in sorted_vertices(g.vertices):
        if start in visited:
            continue
        # iterative DFS keeping the current path
        path_v = [start]
        path_e: list[str] = []
        iters = [iter(adj[start])]
        on_path = {start: 0}
        visited.add(start)
        while iters:
            advanced = False
            for eid, w in iters[-1]:
                if path_e and eid == path_e[-1]:
                    continue
                if w in on_path:
                    i = on_path[w]
                    return path_v[i:] + [w], path_e[i:] + [eid]
                if w in visited:
                    continue
                visited.add(w)
                on_path[w] = len(path_v)
                path_v.append(w)
                path_e.append(eid)
                iters.append(iter(adj[w]))
                advanced = True
                break
            if not advanced:
                iters.pop()
                gone = path_v.pop()
                on_path.pop(gone, None)
                if path_e:
                    path_e.pop()
    return None


def mg_spanning_tree(g: Multigraph) -> Multigraph:
    """BFS spanning tree from the smallest vertex id, edges in id order."""
    if not mg_is_connected(g):
        raise DomainError("spanning tree of a disconnected graph")
    if not g.vertices:
        return Multigraph((), {})
    adj = g.adjacency()
    root = sorted_vertices(g.vertices)[0]
    seen = {root}
    tree: dict[str, frozenset] = {}
    frontier = [root]
    while frontier:
        nxt = []
        for v in frontier:
            for eid, w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    tree[eid] = g.edges[eid]
                    nxt.append(w)
        frontier = sorted_vertices(nxt)
    origin = None
    if g.edge_origin is not None:
        origin = {eid: g.edge_origin[eid] for eid in tree if eid in g.edge_origin}
    return Multigraph(g.vertices, tree, aux=g.aux, edge_origin=origin)


def all_simple_cycles(g: Multigraph, limit: int = 100000) -> list[tuple[list, list[str]]]:
    """Every simple cycle as (vertex sequence, edge id sequence), deduplicated.

    A cycle of length two is a pair of parallel edges.  Each cycle is reported
    once, rooted at its smallest vertex and oriented so the smaller incident
    edge id comes first; the list is sorted by (length, edge ids).  Intended
    for the small graphs this package works on; `limit` guards runaway growth.
    """
    adj = g.adjacency()
    seen: set[frozenset] = set()
    out: list[tuple[list, list[str]]] = []
    order = {v: i for i, v in enumerate(sorted_vertices(g.vertices))}

    def extend(root, path_v, path_e, on_path):
        if len(out) > limit:
            raise InvariantViolation("simple cycle enumeration exceeded its limit")
        v = path_v[-1]
        for eid, w in adj[v]:
            if path_e and eid == path_e[-1]:
                continue
            if w == root and len(path_e) >= 1:
                key = frozenset(path_e) | {eid}
                if key not in seen:
                    seen.add(key)
                    out.append((path_v + [w], path_e + [eid]))
                continue
            if w in on_path or order[w] < order[root]:
                continue
            on_path.add(w)
            extend(root, path_v + [w], path_e + [eid], on_path)
            on_path.remove(w)

    for root in sorted_vertices(g.vertices):
        extend(root, [root], [], {root})

    def canon(item):
        path_v, path_e = item
        root = path_v[0]
        if len(path_e) > 2 and path_e[-1] < path_e[0]:
            path_v = [root] + list(reversed(path_v[1:-1])) + [root]
            path_e = list(reversed(path_e))
        elif len(path_e) == 2 and path_e[1] < path_e[0]:
            path_e = [path_e[1], path_e[0]]
        return path_v, path_e

    out = [canon(it) for it in out]
    out.sort(key=lambda it: (len(it[1]), it[1]))
    return out


def mg_euler(g: Multigraph, start, end=None) -> tuple[list, list[str]]:
    """Euler tour (closed when end is None or end == start) or trail.

    Hierholzer with smallest-id edge selection.  Returns (vertex walk, edge id
    sequence) covering every edge exactly once.  Raises DomainError when the
    degree parity or connectivity requirements fail.
    """
    if end is None:
        end = start
    degs = g.degrees()
    odd = {v for v, d in degs.items() if d % 2}
    if start == end:
        if odd:
            raise DomainError("closed euler tour requires all degrees even")
    else:
        if odd != {start, end}:
            raise DomainError("euler trail requires odd degrees exactly at the endpoints")
    used_vertices = {v for v, d in degs.items() if d} | {start, end}
    comps = [c for c in mg_components(g.subgraph_of_edges(g.edge_ids(), used_vertices))]
    live = [c for c in comps if any(degs.get(v, 0) for v in c) or start in c]
    if len(live) > 1:
        raise DomainError("euler walk requires the edges to form one connected block")
    adj = {v: [] for v in g.vertices}
    for eid in sorted(g.edges, reverse=True):  # reversed so pop() yields smallest id
        a, b = tuple(g.edges[eid])
        adj[a].append((eid, b))
        adj[b].append((eid, a))
    used: set[str] = set()
    stack: list[tuple] = [(start, None)]
    walk_rev: list = []
    edges_rev: list[str] = []
    while stack:
        v, via = stack[-1]
        found = None
        bucket = adj[v]
        while bucket:
            eid, w = bucket[-1]
            if eid in used:
                bucket.pop()
                continue
            found = (eid, w)
            break
        if found is None:
            stack.pop()
            walk_rev.append(v)
            if via is not None:
                edges_rev.append(via)
        else:
            eid, w = found
            used.add(eid)
            stack.append((w, eid))
    if len(edges_rev) != len(g.edges):
        raise InvariantViolation("euler walk did not cover every edge")
    walk = list(reversed(walk_rev))
    edges = list(reversed(edges_rev))
    if walk[0] != start or walk[-1] != end:
        raise InvariantViolation("euler walk endpoints drifted")
    return walk, edges
