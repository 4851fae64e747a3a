"""Degree parity over quasitrees and completion to spanning even subgraphs.

A quasitree whose complement is tight can always be re-represented so that
every complement component carries an even number of odd-degree vertices;
from there, joins picked inside spanning trees of the expanded components
complete the underlying tree to a connected spanning subgraph whose odd
degrees sit exactly on a requested vertex set.
"""

from __future__ import annotations

from .core import (
    Hypergraph3,
    Multigraph,
    expand_to_graph,
    mg_is_connected,
    mg_is_tree,
    mg_spanning_tree,
    sorted_vertices,
)
from .errors import DomainError, InvariantViolation
from .narrow_wide import ConnectedComplement, has_tight_complement
from .quasigraph import (
    QuasiClass,
    Quasigraph,
    classify,
    complement,
    induced_quasigraph,
    underlying_graph,
)


def phi(pi: Quasigraph, x) -> int:
    """Parity of the sum of underlying-graph degrees over X."""
    xs = frozenset(x)
    if not xs <= pi.host.vertices:
        raise DomainError("parity functional argument leaves the host")
    degs = underlying_graph(pi).degrees()
    return sum(degs[v] for v in xs) % 2


def is_even_on(pi: Quasigraph, x) -> bool:
    """Every complement component inside X has even total degree."""
    xs = frozenset(x)
    if not xs <= pi.host.vertices:
        raise DomainError("evenness region leaves the host")
    for verts, _ in complement(pi).components():
        if verts <= xs and phi(pi, verts):
            return False
    return True


def _switch_bridge(pi: Quasigraph, eid: str) -> Quasigraph:
    """Swing a used 3-hyperedge's representation onto its third vertex.

    The kept endpoint is the one separated from the third vertex when the
    represented edge is deleted from the tree, so the result stays a tree and
    flips exactly one vertex degree on each side of the bridge.
    """
    verts = pi.host.hyperedges[eid]
    rep = pi.rep[eid]
    if len(verts) != 3 or len(rep) != 2:
        raise InvariantViolation("bridge switch needs a represented 3-hyperedge")
    (y,) = verts - rep
    t = underlying_graph(pi)
    cut = Multigraph(
        t.vertices, {e: t.edges[e] for e in t.edge_ids() if e != eid}
    )
    a, b = sorted_vertices(rep)
    reach = {a}
    frontier = [a]
    adj = cut.adjacency()
    while frontier:
        nxt = []
        for v in frontier:
            for _, w in adj[v]:
                if w not in reach:
                    reach.add(w)
                    nxt.append(w)
        frontier = nxt
    kept = b if y in reach else a
    out = pi.with_rep(eid, {kept, y})
    if classify(out) is not QuasiClass.QUASITREE:
        raise InvariantViolation("bridge switch broke the tree")
    return out


def _balance(pi: Quasigraph, region: frozenset, target: frozenset) -> Quasigraph:
    """Recursive representation switching along the tight-complement witness.

    Postcondition: on every complement component K inside `region`,
    Φ(V(K)) matches |target ∩ V(K)| mod 2.  Changes are confined to
    hyperedges lying inside `region`.
    """
    if len(region) <= 1:
        return pi
    ok, wit = has_tight_complement(induced_quasigraph(pi, region))
    if not ok:
        raise InvariantViolation("a balancing region lost complement tightness")
    if isinstance(wit, ConnectedComplement):
        if phi(pi, region) != len(target & region) % 2:
            raise InvariantViolation("parity imbalance on a connected region")
        return pi
    if phi(pi, wit.x1) != len(target & wit.x1) % 2:
        pi = _switch_bridge(pi, wit.bridge)
    pi = _balance(pi, wit.x1, target)
    return _balance(pi, wit.x2, target)


def balance_parity(pi: Quasigraph, x) -> Quasigraph:
    """Re-represent a tight quasitree so each complement component K has
    Φ(V(K)) ≡ |X ∩ V(K)| (mod 2); the used hyperedge set never changes."""
    xs = frozenset(x)
    if not xs <= pi.host.vertices:
        raise DomainError("parity target leaves the host")
    if classify(pi) is not QuasiClass.QUASITREE:
        raise DomainError("parity balancing needs a quasitree")
    if not has_tight_complement(pi)[0]:
        raise DomainError("parity balancing needs a tight complement")
    if len(xs) % 2:
        raise DomainError(
            "parity target has odd size; the total degree parity is even"
        )
    rho = _balance(pi, pi.host.vertices, xs)
    if set(rho.used_ids()) != set(pi.used_ids()):
        raise InvariantViolation("balancing changed the used hyperedge set")
    if classify(rho) is not QuasiClass.QUASITREE:
        raise InvariantViolation("balancing broke the quasitree")
    for verts, _ in complement(rho).components():
        if phi(rho, verts) != len(xs & verts) % 2:
            raise InvariantViolation("balancing missed a component parity")
    return rho


def make_even(pi: Quasigraph) -> Quasigraph:
    """Even quasitree with the same used hyperedges as the given one."""
    rho = balance_parity(pi, frozenset())
    if not is_even_on(rho, rho.host.vertices):
        raise InvariantViolation("evened quasitree is not even")
    return rho


def tree_xjoin(t: Multigraph, x) -> Multigraph:
    """Subgraph of a tree whose odd-degree vertices are exactly X.

    Equivalent to the edge-split recursion: an edge is included exactly when
    the subtree hanging below it contains an odd number of X-vertices.
    """
    if not mg_is_tree(t):
        raise DomainError("an X-join source must be a tree")
    xs = frozenset(x)
    if not xs <= t.vertices:
        raise DomainError("X-join target leaves the tree")
    if len(xs) % 2:
        raise DomainError("X-join target must have even size")
    chosen: dict[str, frozenset] = {}
    if t.vertices:
        adj = t.adjacency()
        root = sorted_vertices(t.vertices)[0]
        order = [root]
        parent_edge: dict = {root: None}
        for v in order:
            for eid, w in adj[v]:
                if w not in parent_edge:
                    parent_edge[w] = (eid, v)
                    order.append(w)
        odd_below = {v: 1 if v in xs else 0 for v in t.vertices}
        for v in reversed(order[1:]):
            eid, par = parent_edge[v]
            if odd_below[v] % 2:
                chosen[eid] = t.edges[eid]
            odd_below[par] += odd_below[v]
    origin = None
    if t.edge_origin is not None:
        origin = {eid: t.edge_origin[eid] for eid in chosen if eid in t.edge_origin}
    out = Multigraph(t.vertices, chosen, aux=t.aux, edge_origin=origin)
    degs = out.degrees()
    if {v for v, d in degs.items() if d % 2} != xs:
        raise InvariantViolation("X-join has the wrong odd-degree set")
    return out


def xjoin_completion(pi: Quasigraph, x) -> tuple[Quasigraph, Multigraph]:
    """Complete a parity-balanced tight quasitree to a spanning X-join.

    Works one complement component at a time: the odd-degree target inside
    the component is the set of odd tree degrees adjusted by X, an X-join is
    pulled out of a spanning tree of the component's expansion, and its edges
    are lifted back to hyperedge representations.  Returns the lifted
    quasigraph and the whole subgraph of the host's expansion.
    """
    xs = frozenset(x)
    if not xs <= pi.host.vertices:
        raise DomainError("X-join target leaves the host")
    if classify(pi) is not QuasiClass.QUASITREE:
        raise DomainError("completion needs a quasitree")
    degs = underlying_graph(pi).degrees()
    comp = complement(pi)
    tau_rep = {eid: frozenset() for eid in pi.host.edge_ids()}
    for kverts, keids in comp.components():
        target = frozenset(v for v in kverts if degs[v] % 2) ^ (xs & kverts)
        if len(target) % 2:
            raise DomainError(
                f"parity infeasible on complement component "
                f"{sorted_vertices(kverts)}"
            )
        if not keids:
            if target:
                raise DomainError(
                    f"parity infeasible on complement component "
                    f"{sorted_vertices(kverts)}"
                )
            continue
        k = Hypergraph3(
            kverts, {eid: comp.hyperedges[eid] for eid in keids},
            parent=comp, provenance={eid: eid for eid in keids},
        )
        join = tree_xjoin(mg_spanning_tree(expand_to_graph(k)), target)
        hub_pairs: dict[str, set] = {}
        for gid in join.edge_ids():
            eid, leg = join.edge_origin[gid]
            if leg is None:
                tau_rep[eid] = join.edges[gid]
            else:
                hub_pairs.setdefault(eid, set()).add(leg)
        for eid, legs in hub_pairs.items():
            if len(legs) != 2:
                raise InvariantViolation(
                    f"auxiliary vertex of {eid!r} has odd join degree"
                )
            tau_rep[eid] = frozenset(legs)
    tau = Quasigraph(pi.host, tau_rep)
    if set(tau.used_ids()) & set(pi.used_ids()):
        raise InvariantViolation("completion reused a hyperedge of the quasitree")

    expansion = expand_to_graph(pi.host)
    s_ids = []
    for q in (pi, tau):
        for eid in q.used_ids():
            if len(pi.host.hyperedges[eid]) == 2:
                s_ids.append(eid)
            else:
                s_ids.extend(f"{eid}~{v}" for v in sorted_vertices(q.rep[eid]))
    s = expansion.subgraph_of_edges(s_ids, keep_vertices=pi.host.vertices)
    if not mg_is_connected(s):
        raise InvariantViolation("completed subgraph is disconnected")
    odd = {v for v, d in s.degrees().items() if d % 2}
    if odd != xs:
        raise InvariantViolation("completed subgraph has the wrong odd-degree set")
    return tau, s
