"""Line-graph endgame: weights, condensation, eulerian subgraphs, Hamilton walks.

The route from a multigraph to a Hamilton cycle of its line graph: analyze
connectivity and edge weights, reduce low-degree structure away, condense the
rest into a 3-hypergraph (degree-3 vertices become 3-hyperedges on their
neighbourhoods, so the hub expansion of the condensed hypergraph is the
reduced graph again), find a tight quasitree, repair its parity, complete it
to a spanning even subgraph, tour that subgraph, and insert the leftover
edges along the tour.  Hamilton paths between two prescribed line-graph
vertices run the same machinery after carving the two trail ends out of the
hypergraph and asking the completion for odd degrees at their anchors.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    INFINITY,
    MAX_CUT_SCAN_VERTICES,
    Hypergraph3,
    Multigraph,
    mg_euler,
    mg_is_connected,
    order_key,
    sorted_vertices,
)
from .errors import DomainError, InvariantViolation, RejectionError, SizeGuardError
from .parity import balance_parity, make_even, xjoin_completion
from .skeletal import find_tight_quasitree


class GraphAnalysis:
    """Connectivity and weight summary of a multigraph.

    `essential_connectivity` is the smallest size of an inclusionwise minimal
    edge-cut other than the full edge star at a single vertex, or INFINITY
    when every minimal cut is such a star.  The weight of an edge counts the
    other edges meeting it, each once.
    """

    __slots__ = ("essential_connectivity", "min_edge_weight", "degree_map")

    def __init__(self, essential_connectivity, min_edge_weight, degree_map):
        self.essential_connectivity = essential_connectivity
        self.min_edge_weight = min_edge_weight
        self.degree_map = dict(degree_map)

    def as_dict(self) -> dict:
        ec = self.essential_connectivity
        return {
            "essential_connectivity": None if ec == INFINITY else ec,
            "min_edge_weight": self.min_edge_weight,
            "degree_map": {
                str(v): self.degree_map[v]
                for v in sorted(self.degree_map, key=order_key)
            },
        }


@dataclass(frozen=True)
class TrailCertificate:
    """Edge walk certificate: consecutive edges share a vertex, none repeats.

    `kind` is "closed" for the tour a Hamilton cycle grows from and "open"
    for a two-ended trail; open trails start and end with the requested
    edges.  `dominating` records that every edge of the host graph touches
    the walk's interior.
    """

    edges: tuple
    kind: str
    dominating: bool

    def as_dict(self) -> dict:
        return {
            "edges": list(self.edges),
            "kind": self.kind,
            "dominating": self.dominating,
        }


def _connected_within(adj: dict, side: frozenset) -> bool:
    start = min(side, key=order_key)
    seen = {start}
    frontier = [start]
    while frontier:
        v = frontier.pop()
        for _eid, w in adj[v]:
            if w in side and w not in seen:
                seen.add(w)
                frontier.append(w)
    return len(seen) == len(side)


def analyze_graph(g: Multigraph) -> GraphAnalysis:
    """Exact essential connectivity, minimum edge weight, and the degree map.

    Every inclusionwise minimal edge-cut is the crossing set of a bipartition
    whose sides both induce connected subgraphs, so scanning bipartitions is
    exhaustive.  Cuts equal to the full edge set at one vertex do not count.
    """
    if not g.edges:
        raise DomainError("the graph must have at least one edge")
    if not mg_is_connected(g):
        raise DomainError("the graph must be connected")
    if len(g.vertices) > MAX_CUT_SCAN_VERTICES:
        raise SizeGuardError(
            f"the exhaustive cut scan handles at most {MAX_CUT_SCAN_VERTICES} vertices"
        )
    degs = g.degrees()
    weight = min(
        sum(1 for f, fe in g.edges.items() if f != eid and fe & ends)
        for eid, ends in g.edges.items()
    )
    adj = g.adjacency()
    stars = {frozenset(g.incident(v)) for v in g.vertices}
    verts = sorted_vertices(g.vertices)
    anchor, rest = verts[0], verts[1:]
    best = INFINITY
    for mask in range(1 << len(rest)):
        side = frozenset({anchor} | {rest[i] for i in range(len(rest)) if mask >> i & 1})
        if len(side) == len(verts):
            continue
        if not _connected_within(adj, side):
            continue
        if not _connected_within(adj, g.vertices - side):
            continue
        cut = frozenset(eid for eid, ends in g.edges.items() if len(ends & side) == 1)
        if cut not in stars:
            best = min(best, len(cut))
    return GraphAnalysis(best, weight, degs)


def line_graph(g: Multigraph) -> Multigraph:
    """One vertex per edge id; one edge per pair of edges sharing an endpoint.

    Adjacency is simple: parallel edges of the input share two endpoints but
    are still joined by a single edge here.  Hamiltonicity never depends on
    the extra copies, and the connectivity correspondence with the input
    graph is stated for simple adjacency.
    """
    ids = g.edge_ids()
    edges = {}
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            if g.edges[a] & g.edges[b]:
                edges[f"{a}|{b}"] = frozenset({a, b})
    return Multigraph(ids, edges)


# ---------------------------------------------------------------------------
# Low-degree reductions.  Each record keeps enough to splice a subgraph or a
# walk back into the unreduced graph.


@dataclass(frozen=True)
class _Suppress:
    vertex: object
    drop1: str
    drop2: str
    end1: object
    end2: object
    made: str


@dataclass(frozen=True)
class _Cluster:
    hub: object
    dropped_vertices: tuple
    dropped_edges: tuple


@dataclass(frozen=True)
class _Rewire:
    vertex: object
    twin: object
    third: object
    par1: str
    par2: str
    lone: str
    made: str


@dataclass(frozen=True)
class _Drop:
    vertex: object
    dropped_edges: tuple


def _fresh_id(taken: dict, counter: int) -> tuple[str, int]:
    while f"s{counter}" in taken:
        counter += 1
    return f"s{counter}", counter + 1


def _reduce_graph(g: Multigraph) -> tuple[Multigraph, list]:
    """Shrink low-degree structure until every vertex has degree at least 3.

    Three rewrites, tried in this order and restarted after every hit:
    a degree-2 vertex with two distinct neighbours is smoothed into a single
    edge; vertices of degree at most 2 whose edges all lead to one vertex
    are deleted as a bundle; a degree-3 vertex carrying a parallel pair is
    deleted, its two neighbours joined by a fresh edge (or, with a single
    neighbour, simply deleted).
    """
    verts = set(g.vertices)
    edges = dict(g.edges)
    steps: list = []
    counter = 0
    while True:
        degs = {v: 0 for v in verts}
        inc: dict = {v: [] for v in verts}
        for eid in sorted(edges):
            for v in edges[eid]:
                degs[v] += 1
                inc[v].append(eid)
        step = None
        for v in sorted(verts, key=order_key):
            if degs[v] != 2:
                continue
            d1, d2 = inc[v]
            (w1,) = edges[d1] - {v}
            (w2,) = edges[d2] - {v}
            if w1 == w2:
                continue  # single neighbour; the bundle rule takes it
            made, counter = _fresh_id(edges, counter)
            step = _Suppress(v, d1, d2, w1, w2, made)
            verts.remove(v)
            del edges[d1]
            del edges[d2]
            edges[made] = frozenset({w1, w2})
            break
        if step is None:
            for z in sorted(verts, key=order_key):
                bundle = [
                    u
                    for u in sorted(verts, key=order_key)
                    if u != z
                    and 1 <= degs[u] <= 2
                    and all(edges[eid] == frozenset({u, z}) for eid in inc[u])
                ]
                if not bundle:
                    continue
                dropped = sorted(eid for u in bundle for eid in inc[u])
                step = _Cluster(z, tuple(bundle), tuple(dropped))
                for u in bundle:
                    verts.remove(u)
                for eid in dropped:
                    del edges[eid]
                break
        if step is None:
            for v in sorted(verts, key=order_key):
                if degs[v] != 3:
                    continue
                by_nbr: dict = {}
                for eid in inc[v]:
                    (w,) = edges[eid] - {v}
                    by_nbr.setdefault(w, []).append(eid)
                if len(by_nbr) == 3:
                    continue  # three distinct neighbours, nothing to do
                if len(by_nbr) == 1:
                    step = _Drop(v, tuple(inc[v]))
                    verts.remove(v)
                    for eid in inc[v]:
                        del edges[eid]
                    break
                twin = next(
                    w for w in sorted(by_nbr, key=order_key) if len(by_nbr[w]) == 2
                )
                third = next(w for w in sorted(by_nbr, key=order_key) if w != twin)
                par1, par2 = sorted(by_nbr[twin])
                (lone,) = by_nbr[third]
                made, counter = _fresh_id(edges, counter)
                step = _Rewire(v, twin, third, par1, par2, lone, made)
                verts.remove(v)
                for eid in inc[v]:
                    del edges[eid]
                edges[made] = frozenset({twin, third})
                break
        if step is None:
            break
        steps.append(step)
    return Multigraph(verts, edges), steps


def _condense(g: Multigraph) -> tuple[Hypergraph3, dict]:
    """3-hypergraph of a reduced graph plus the hub bookkeeping.

    The second component maps each 3-hyperedge id to (its degree-3 vertex,
    {neighbour: incident edge id}).
    """
    degs = g.degrees()
    low = sorted((v for v, d in degs.items() if d < 3), key=order_key)
    if low:
        raise InvariantViolation(f"reduction left low-degree vertices: {low}")
    core = frozenset(v for v, d in degs.items() if d >= 4)
    hyperedges = {}
    hubs: dict = {}
    for eid in g.edge_ids():
        if g.edges[eid] <= core:
            hyperedges[eid] = g.edges[eid]
    for v in sorted(g.vertices, key=order_key):
        if degs[v] != 3:
            continue
        legs: dict = {}
        for eid in g.incident(v):
            (w,) = g.edges[eid] - {v}
            if degs[w] == 3:
                raise InvariantViolation(
                    f"adjacent degree-3 vertices {v!r} and {w!r} survived reduction"
                )
            legs[w] = eid
        if len(legs) != 3:
            raise InvariantViolation(f"degree-3 vertex {v!r} keeps a parallel pair")
        hid = f"n3:{v}"
        if hid in g.edges:
            raise InvariantViolation(f"hyperedge id {hid!r} collides with an edge id")
        hyperedges[hid] = frozenset(legs)
        hubs[hid] = (v, legs)
    return Hypergraph3(core, hyperedges), hubs


def _check_graph_hypotheses(g: Multigraph) -> None:
    analysis = analyze_graph(g)
    if analysis.essential_connectivity < 5:
        raise RejectionError(
            "graph-hypotheses",
            f"essential connectivity {analysis.essential_connectivity} < 5",
        )
    if analysis.min_edge_weight < 6:
        raise RejectionError(
            "graph-hypotheses",
            f"minimum edge weight {analysis.min_edge_weight} < 6",
        )


def build_hypergraph(g: Multigraph) -> Hypergraph3:
    """Condense a graph to the 3-hypergraph on its degree->=4 vertices.

    Requires essential connectivity at least 5 and minimum edge weight at
    least 6.  Low-degree structure is reduced away first; then every edge
    between two degree->=4 vertices becomes a 2-hyperedge, and every
    degree-3 vertex becomes a 3-hyperedge on its (necessarily degree->=4)
    neighbourhood.
    """
    _check_graph_hypotheses(g)
    reduced, _steps = _reduce_graph(g)
    if len(reduced.vertices) <= 1:
        return Hypergraph3(frozenset(), {})
    h, _hubs = _condense(reduced)
    return h


def _expansion_subgraph_to_graph(
    span: Multigraph, hubs: dict, reduced: Multigraph
) -> tuple[set, dict]:
    """Pull a subgraph of the hub expansion back into the reduced graph.

    Hub legs become the degree-3 vertex's incident edges; a 3-hyperedge that
    was shrunk to two vertices becomes the two-edge path through its vertex.
    """
    verts: set = set(v for v in span.vertices if v not in span.aux)
    edges: dict = {}
    origin = span.edge_origin or {}
    for eid in span.edge_ids():
        hid, x = origin.get(eid, (eid, None))
        if x is not None:
            gid = hubs[hid][1][x]
            edges[gid] = reduced.edges[gid]
        elif hid in hubs:
            _v, legs = hubs[hid]
            for w in sorted_vertices(span.edges[eid]):
                gid = legs[w]
                edges[gid] = reduced.edges[gid]
        else:
            edges[hid] = reduced.edges[hid]
    for ends in edges.values():
        verts |= ends
    return verts, edges


def _splice_subgraph(verts: set, edges: dict, steps: list) -> tuple[set, dict]:
    # Undo the reductions inside an edge set: each synthetic edge present
    # becomes the two-edge path it stood for.  Parities at the old endpoints
    # are unchanged and the spliced vertex comes back with degree 2.
    for step in reversed(steps):
        if isinstance(step, _Suppress) and step.made in edges:
            del edges[step.made]
            edges[step.drop1] = frozenset({step.vertex, step.end1})
            edges[step.drop2] = frozenset({step.vertex, step.end2})
            verts.add(step.vertex)
        elif isinstance(step, _Rewire) and step.made in edges:
            del edges[step.made]
            edges[step.par1] = frozenset({step.vertex, step.twin})
            edges[step.lone] = frozenset({step.vertex, step.third})
            verts.add(step.vertex)
    return verts, edges


def _verify_spanning_eulerian(sub: Multigraph, g: Multigraph) -> None:
    for eid in sub.edge_ids():
        if g.edges.get(eid) != sub.edges[eid]:
            raise InvariantViolation(f"output edge {eid!r} is not an edge of the input")
    if not sub.vertices <= g.vertices:
        raise InvariantViolation("output vertices leave the input graph")
    if not mg_is_connected(sub):
        raise InvariantViolation("the spanning subgraph is disconnected")
    odd = sorted((v for v, d in sub.degrees().items() if d % 2), key=order_key)
    if odd:
        raise InvariantViolation(f"the spanning subgraph has odd degrees at {odd}")
    missing = sorted(
        (v for v, d in g.degrees().items() if d >= 4 and v not in sub.vertices),
        key=order_key,
    )
    if missing:
        raise InvariantViolation(f"vertices of degree at least 4 are missed: {missing}")


def spanning_eulerian(g: Multigraph) -> Multigraph:
    """Connected even-degree subgraph through every vertex of degree >= 4.

    Requires essential connectivity at least 5 and minimum edge weight at
    least 6; the 4-edge-connectivity hypotheses of the condensed hypergraph
    are checked before the quasitree search and violations surface as staged
    rejections.  The output is verified against the input graph.
    """
    _check_graph_hypotheses(g)
    reduced, steps = _reduce_graph(g)
    if len(reduced.vertices) == 1:
        verts, edges = set(reduced.vertices), {}
    else:
        h, hubs = _condense(reduced)
        pi = find_tight_quasitree(h)
        rho = make_even(pi)
        _tau, span = xjoin_completion(rho, frozenset())
        verts, edges = _expansion_subgraph_to_graph(span, hubs, reduced)
    verts, edges = _splice_subgraph(verts, edges, steps)
    out = Multigraph(verts, edges)
    _verify_spanning_eulerian(out, g)
    return out


# ---------------------------------------------------------------------------
# Hamilton cycles.


def _verify_hamilton_cycle(l_graph: Multigraph, seq: list) -> None:
    if len(seq) != len(l_graph.vertices) or set(seq) != l_graph.vertices:
        raise InvariantViolation("the cycle does not visit every line-graph vertex once")
    if len(seq) < 3:
        raise InvariantViolation("a cycle needs at least three vertices")
    pairs = set(l_graph.edges.values())
    for a, b in zip(seq, seq[1:] + seq[:1]):
        if frozenset({a, b}) not in pairs:
            raise InvariantViolation(
                f"consecutive entries {a!r}, {b!r} are not adjacent in the line graph"
            )


def hamilton_cycle_in_line_graph(g: Multigraph) -> tuple[list, TrailCertificate]:
    """Hamilton cycle of the line graph, as an ordered list of edge ids.

    Grows from an Euler tour of the spanning eulerian subgraph: every edge
    outside the tour shares a vertex with it (an edge missing the subgraph
    would have weight at most 4) and is inserted at the first visit of its
    smallest such vertex.  The second component is the tour certificate.
    """
    sub = spanning_eulerian(g)
    loose = [eid for eid in g.edge_ids() if not g.edges[eid] & sub.vertices]
    if loose:
        raise InvariantViolation(f"edges untouched by the eulerian subgraph: {loose}")
    if sub.edges:
        start = min(sub.vertices, key=order_key)
        walk, tour = mg_euler(sub, start)
    else:
        walk, tour = [min(sub.vertices, key=order_key)], []
    pending: dict = {}
    for eid in g.edge_ids():
        if eid in sub.edges:
            continue
        anchor = min(g.edges[eid] & sub.vertices, key=order_key)
        pending.setdefault(anchor, []).append(eid)
    seq: list = []
    seen: set = set()
    for i, v in enumerate(walk):
        if v not in seen:
            seen.add(v)
            seq.extend(pending.pop(v, ()))
        if i < len(tour):
            seq.append(tour[i])
    if pending:
        raise InvariantViolation("pendant edges were never inserted")
    _verify_hamilton_cycle(line_graph(g), seq)
    return seq, TrailCertificate(tuple(tour), "closed", True)


# ---------------------------------------------------------------------------
# Hamilton paths between two prescribed line-graph vertices.


def _degree_sum(h: Hypergraph3) -> int:
    return sum(len(verts) for verts in h.hyperedges.values())


def _anchored_ends(g: Multigraph, degs: dict, eid: str) -> tuple:
    ends = sorted_vertices(g.edges[eid])
    qualified = [v for v in ends if degs[v] >= 4]
    if not qualified:
        raise RejectionError(
            "hypothesis-check",
            f"edge {eid!r} keeps no endpoint of degree at least 4 after reduction",
        )
    u = qualified[0]
    (w,) = [v for v in ends if v != u]
    return u, w


def _carve_trail_ends(
    h: Hypergraph3, degs: dict, end1: tuple, end2: tuple
) -> Hypergraph3:
    """Remove the two trail ends from the condensed hypergraph.

    A shared degree-3 endpoint takes its whole 3-hyperedge out.  Otherwise,
    per end: a degree-3 far endpoint shrinks its 3-hyperedge by the anchor;
    a degree->=4 far endpoint deletes the edge's own 2-hyperedge.  Each
    operation drops the degree sum by 3, 1, or 2, so two of them cost at
    most 4.
    """
    e1, u1, w1 = end1
    e2, u2, w2 = end2
    if w1 == w2 and degs[w1] == 3:
        return h.without_hyperedges([f"n3:{w1}"])
    edges = dict(h.hyperedges)
    for eid, u, w in ((e1, u1, w1), (e2, u2, w2)):
        if degs[w] == 3:
            hid = f"n3:{w}"
            trimmed = edges[hid] - {u}
            if len(trimmed) != 2:
                raise InvariantViolation(f"hyperedge {hid!r} cannot lose vertex {u!r}")
            edges[hid] = trimmed
        else:
            if eid not in edges:
                raise InvariantViolation(
                    f"edge {eid!r} is missing from the condensed hypergraph"
                )
            del edges[eid]
    return Hypergraph3(h.vertices, edges, parent=h, provenance={x: x for x in edges})


def _euler_between(verts: set, edges: dict, u1, u2) -> tuple[list, list]:
    sub = Multigraph(verts, edges)
    if not sub.edges:
        if u1 != u2 or sub.vertices != {u1}:
            raise InvariantViolation("an edgeless completion cannot join the anchors")
        return [u1], []
    return mg_euler(sub, u1, u2)


def _splice_walk(walk: list, trail: list, steps: list) -> tuple[list, list]:
    # Undo the reductions inside an edge walk: a traversed synthetic edge
    # becomes the two-edge detour through its spliced vertex.
    for step in reversed(steps):
        if isinstance(step, _Suppress):
            legs = {step.end1: step.drop1, step.end2: step.drop2}
        elif isinstance(step, _Rewire):
            legs = {step.twin: step.par1, step.third: step.lone}
        else:
            continue
        if step.made not in trail:
            continue
        i = trail.index(step.made)
        first = legs[walk[i]]
        second = legs[walk[i + 1]]
        trail = trail[:i] + [first, second] + trail[i + 1 :]
        walk = walk[: i + 1] + [step.vertex] + walk[i + 1 :]
    return walk, trail


def _verify_hamilton_path(l_graph: Multigraph, seq: list, e1: str, e2: str) -> None:
    if len(seq) != len(l_graph.vertices) or set(seq) != l_graph.vertices:
        raise InvariantViolation("the path does not visit every line-graph vertex once")
    if seq[0] != e1 or seq[-1] != e2:
        raise InvariantViolation("the path ends drifted from the requested edges")
    pairs = set(l_graph.edges.values())
    for a, b in zip(seq, seq[1:]):
        if frozenset({a, b}) not in pairs:
            raise InvariantViolation(
                f"consecutive entries {a!r}, {b!r} are not adjacent in the line graph"
            )


def hamilton_path_in_line_graph(
    g: Multigraph, e1: str, e2: str
) -> tuple[list, TrailCertificate]:
    """Hamilton path of the line graph between the vertices e1 and e2.

    Built from a trail of the input graph that starts with e1, ends with e2,
    and whose interior touches every edge.  The two trail ends are carved
    out of the condensed hypergraph before the quasitree search; the search
    then audits its counting against the uncarved hypergraph with the
    widened degree-drop allowance.  Trail ends consumed or starved by the
    low-degree reductions are rejected as unsupported rather than guessed
    around.
    """
    g.ends(e1)
    g.ends(e2)
    if e1 == e2:
        raise DomainError("the trail ends must be two distinct edges")
    _check_graph_hypotheses(g)
    reduced, steps = _reduce_graph(g)
    for eid in (e1, e2):
        if eid not in reduced.edges:
            raise RejectionError(
                "reduction-interaction",
                f"edge {eid!r} was consumed by the low-degree reductions; "
                "trail ends inside reduced zones are not supported",
            )
    h, hubs = _condense(reduced)
    degs = reduced.degrees()
    u1, w1 = _anchored_ends(reduced, degs, e1)
    u2, w2 = _anchored_ends(reduced, degs, e2)
    xs = frozenset({u1, u2}) if u1 != u2 else frozenset()
    carved = _carve_trail_ends(h, degs, (e1, u1, w1), (e2, u2, w2))
    if _degree_sum(carved) < _degree_sum(h) - 4:
        raise InvariantViolation(
            "carving the trail ends dropped the degree sum by more than 4"
        )
    pi = find_tight_quasitree(
        carved, require_four_edge_connected=False, reference_host=h, drop_allowance=4
    )
    rho = balance_parity(pi, xs)
    _tau, span = xjoin_completion(rho, xs)
    verts, edges = _expansion_subgraph_to_graph(span, hubs, reduced)
    walk, trail = _euler_between(verts, edges, u1, u2)
    walk, trail = _splice_walk(walk, trail, steps)
    interior = set(walk)
    trail_ids = {e1, e2} | set(trail)
    pending: dict = {}
    for eid in g.edge_ids():
        if eid in trail_ids:
            continue
        touch = g.edges[eid] & interior
        if not touch:
            if steps:
                raise RejectionError(
                    "reduction-interaction",
                    f"edge {eid!r} misses the trail interior; the reductions and "
                    "the requested trail ends interact in an unsupported way",
                )
            raise InvariantViolation(f"edge {eid!r} misses the trail interior")
        pending.setdefault(min(touch, key=order_key), []).append(eid)
    seq = [e1]
    seen: set = set()
    for i, v in enumerate(walk):
        if v not in seen:
            seen.add(v)
            seq.extend(pending.pop(v, ()))
        if i < len(trail):
            seq.append(trail[i])
    seq.append(e2)
    if pending:
        raise InvariantViolation("pendant edges were never inserted")
    full_trail = [e1] + trail + [e2]
    for a, b in zip(full_trail, full_trail[1:]):
        if not g.edges[a] & g.edges[b]:
            raise InvariantViolation("the trail broke while splicing the reductions")
    _verify_hamilton_path(line_graph(g), seq, e1, e2)
    return seq, TrailCertificate(tuple(full_trail), "open", True)
