"""Brute-force ground truth and seeded instance generation.

Every check in this module reads a definition directly off the data: tight
complements by enumerating all partitions or by the recursive two-clause
definition, quasitrees by a plain spanning-tree test, hamiltonicity by
backtracking.  None of it shares logic with the search, parity, or pipeline
modules, so agreement between the two sides is evidence, not circularity.
The instance generators are the one exception: their rejection filters call
the fast connectivity reports, because a generator is plumbing rather than
a referee.
"""

from __future__ import annotations

import itertools
import random

from .core import (
    Hypergraph3,
    Multigraph,
    edge_connectivity_report,
    mg_is_connected,
    order_key,
    sorted_vertices,
)
from .errors import DomainError, GenerationExhausted, SizeGuardError
from .partitions import Partition
from .pipeline import analyze_graph
from .quasigraph import Quasigraph

BRUTE_MAX_VERTICES = 8
BRUTE_MAX_EDGES = 12
HAMILTON_MAX_VERTICES = 12


def _set_partitions(items: list):
    """All partitions of a list, each a list of sets; deterministic order."""
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for blocks in _set_partitions(rest):
        for i in range(len(blocks)):
            yield blocks[:i] + [blocks[i] | {head}] + blocks[i + 1 :]
        yield blocks + [{head}]


def all_partitions(ground):
    """Every partition of the ground set, as Partition values."""
    for blocks in _set_partitions(sorted_vertices(ground)):
        yield Partition(ground, blocks)


def _narrow_for(pi: Quasigraph, label: dict) -> bool:
    # crossing hyperedge with empty or non-crossing representation kills it
    for eid in pi.host.edge_ids():
        if len({label[v] for v in pi.host.hyperedges[eid]}) >= 2:
            rep = pi.rep[eid]
            if not rep or len({label[v] for v in rep}) < 2:
                return False
    return True


def tight_by_narrow_enumeration(pi: Quasigraph) -> bool:
    """Tight complement check: no partition with two or more classes is narrow."""
    for blocks in _set_partitions(sorted_vertices(pi.host.vertices)):
        if len(blocks) < 2:
            continue
        label = {v: i for i, b in enumerate(blocks) for v in b}
        if _narrow_for(pi, label):
            return False
    return True


def _components_cover(ground: frozenset, connectors) -> bool:
    """One component through the connector sets covering all of ground."""
    if len(ground) <= 1:
        return True
    parent = {v: v for v in ground}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    merges = 0
    for vs in connectors:
        it = iter(vs)
        a = find(next(it))
        for w in it:
            b = find(w)
            if a != b:
                parent[b] = a
                merges += 1
    return merges == len(ground) - 1


def tight_by_definition(pi: Quasigraph) -> bool:
    """Recursive tight-complement check.

    Either the unused hyperedges connect the whole ground set, or the ground
    splits in two parts, each recursively tight in its own trace, bridged by
    a used hyperedge represented inside one part and reaching the other.
    Traces compose, so memoizing on the vertex subset is sound.
    """
    hyperedges = pi.host.hyperedges
    rep = pi.rep
    memo: dict = {}

    def trace(x: frozenset) -> dict:
        return {
            e: verts & x
            for e, verts in hyperedges.items()
            if len(verts & x) >= 2 and rep[e] <= x
        }

    def tight(x: frozenset) -> bool:
        if x in memo:
            return memo[x]
        edges = trace(x)
        if _components_cover(x, (edges[e] for e in edges if not rep[e])):
            memo[x] = True
            return True
        vs = sorted_vertices(x)
        result = False
        for mask in range(1, (1 << len(vs)) - 1):
            x1 = frozenset(vs[i] for i in range(len(vs)) if mask >> i & 1)
            x2 = x - x1
            if not any(rep[e] and rep[e] <= x1 and edges[e] & x2 for e in edges):
                continue
            if tight(x1) and tight(x2):
                result = True
                break
        memo[x] = result
        return result

    return tight(pi.host.vertices)


def _is_spanning_tree(verts: frozenset, pairs) -> bool:
    if len(pairs) != len(verts) - 1:
        return False
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    merges = 0
    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[rb] = ra
        merges += 1
    return merges == len(verts) - 1


def brute_force_tight_quasitrees(h: Hypergraph3, limit=None) -> list:
    """All quasitrees with tight complement, by exhaustive representation search.

    A quasitree uses exactly |V|-1 hyperedges, so the walk goes over
    used-subsets of that size and every 2-subset choice within them; the
    remaining maps are non-trees by counting alone.  Tightness is decided by
    partition enumeration.  With limit=k the search stops after k finds.
    """
    n, m = len(h.vertices), len(h.hyperedges)
    if n > BRUTE_MAX_VERTICES or m > BRUTE_MAX_EDGES:
        raise SizeGuardError(
            f"brute force guard: at most {BRUTE_MAX_VERTICES} vertices "
            f"and {BRUTE_MAX_EDGES} hyperedges"
        )
    if n == 0:
        return []
    if n == 1:
        return [Quasigraph.empty(h)]  # no hyperedges can exist; trivially tight
    ids = h.edge_ids()
    need = n - 1
    out: list = []
    if need > m:
        return out
    empty_rep = {eid: () for eid in ids}
    for used in itertools.combinations(ids, need):
        option_lists = [
            sorted(itertools.combinations(sorted_vertices(h.hyperedges[eid]), 2))
            for eid in used
        ]
        for choice in itertools.product(*option_lists):
            if not _is_spanning_tree(h.vertices, choice):
                continue
            rep = dict(empty_rep)
            rep.update(zip(used, choice))
            pi = Quasigraph(h, rep)
            if tight_by_narrow_enumeration(pi):
                out.append(pi)
                if limit is not None and len(out) >= limit:
                    return out
    return out


def enumerate_quasigraphs(h: Hypergraph3):
    """Every representation map over the host, in deterministic order."""
    if len(h.hyperedges) > BRUTE_MAX_EDGES:
        raise SizeGuardError(
            f"quasigraph enumeration guard: at most {BRUTE_MAX_EDGES} hyperedges"
        )
    ids = h.edge_ids()
    option_lists = [
        [frozenset()]
        + [
            frozenset(p)
            for p in sorted(itertools.combinations(sorted_vertices(h.hyperedges[eid]), 2))
        ]
        for eid in ids
    ]
    for choice in itertools.product(*option_lists):
        yield Quasigraph(h, dict(zip(ids, choice)))


def brute_force_hamilton(l_graph: Multigraph, mode: str = "cycle", ends=None):
    """Exhaustive backtracking Hamilton search; vertex sequence or None.

    mode "cycle" finds a Hamilton cycle (returned without the closing
    repeat); mode "path" needs ends=(u, v) and finds a Hamilton path from u
    to v.  Parallel edges add nothing to vertex adjacency and are ignored.
    """
    n = len(l_graph.vertices)
    if n > HAMILTON_MAX_VERTICES:
        raise SizeGuardError(
            f"hamilton search guard: at most {HAMILTON_MAX_VERTICES} vertices"
        )
    adj: dict = {v: set() for v in l_graph.vertices}
    for a, b in l_graph.edges.values():
        adj[a].add(b)
        adj[b].add(a)

    def extend(path, seen, accept):
        if len(path) == n:
            return accept(path)
        for w in sorted(adj[path[-1]], key=order_key):
            if w not in seen:
                path.append(w)
                seen.add(w)
                if extend(path, seen, accept):
                    return True
                path.pop()
                seen.remove(w)
        return False

    if mode == "cycle":
        if n < 3:
            return None
        start = min(l_graph.vertices, key=order_key)
        path = [start]
        if extend(path, {start}, lambda p: start in adj[p[-1]]):
            return list(path)
        return None
    if mode == "path":
        if ends is None:
            raise DomainError("path mode needs ends=(u, v)")
        u, v = ends
        for x in (u, v):
            if x not in l_graph.vertices:
                raise DomainError(f"unknown vertex {x!r}")
        if u == v:
            return [u] if n == 1 else None
        path = [u]
        if extend(path, {u}, lambda p: p[-1] == v):
            return list(path)
        return None
    raise DomainError(f"unknown mode {mode!r}")


HYPERGRAPH_CONSTRAINT = "4-edge-connected+no-3-in-4-cut"
GRAPH_CONSTRAINT = "essentially-5ec+weight>=6"


def enumerate_hypergraphs(n: int, max_edges: int = BRUTE_MAX_EDGES, constraint: str = "none"):
    """Exhaustive stream of simple 3-hypergraphs on vertices 1..n.

    Simple means each 2- or 3-subset appears at most once; ids are e1..ek in
    sorted vertex-set order, so the stream is id-canonical (no dedup across
    vertex relabelings).  constraint "4-edge-connected+no-3-in-4-cut"
    prefilters with a bitmask cut scan over all bipartitions, which is the
    cut definition evaluated directly.
    """
    if constraint not in ("none", HYPERGRAPH_CONSTRAINT):
        raise DomainError(f"unknown hypergraph constraint {constraint!r}")
    verts = list(range(1, n + 1))
    sets = [
        frozenset(c)
        for k in (2, 3)
        for c in itertools.combinations(verts, k)
    ]
    m = len(sets)
    check = constraint != "none"
    cross = []
    if check and n >= 2:
        rest = verts[1:]
        for mask in range(1 << (n - 1)):
            side = {verts[0]} | {rest[i] for i in range(n - 1) if mask >> i & 1}
            if len(side) == n:
                continue
            bits = 0
            for j, s in enumerate(sets):
                if 0 < len(s & side) < len(s):
                    bits |= 1 << j
            cross.append(bits)
    triple_bits = sum(1 << j for j, s in enumerate(sets) if len(s) == 3)
    for emask in range(1, 1 << m):
        ecount = emask.bit_count()
        if ecount > max_edges:
            continue
        if check:
            cuts = [(emask & c).bit_count() for c in cross]
            if not cuts or min(cuts) < 4:
                continue
            # only size-4 cuts can be inclusion-minimal of size <= 4 here
            bad = False
            for ci, c in enumerate(cross):
                if cuts[ci] != 4:
                    continue
                cutset = emask & c
                if not cutset & triple_bits:
                    continue
                if any(
                    (emask & c2) != cutset and (emask & c2) & ~cutset == 0
                    for c2 in cross
                ):
                    continue  # not inclusion-minimal
                bad = True
                break
            if bad:
                continue
        chosen = [sets[j] for j in range(m) if emask >> j & 1]
        yield Hypergraph3(verts, {f"e{i + 1}": s for i, s in enumerate(chosen)})


def generate_instances(spec: dict):
    """Seeded infinite stream of random instances matching the constraints.

    spec keys: kind ("hypergraph" or "graph"), n (vertex count), constraints
    (kind-specific name or "none"), seed, and optional max_edges / attempts.
    Rejection sampling; the same seed replays the identical stream.  When a
    single instance takes more than the attempt budget, the stream raises
    GenerationExhausted instead of spinning forever.
    """
    kind = spec.get("kind")
    n = spec.get("n")
    constraints = spec.get("constraints", "none")
    seed = spec.get("seed", 0)
    max_edges = spec.get("max_edges", BRUTE_MAX_EDGES)
    attempts = spec.get("attempts", 20000)
    if kind not in ("hypergraph", "graph"):
        raise DomainError(f"unknown instance kind {kind!r}")
    if not isinstance(n, int) or n < 1:
        raise DomainError("n must be a positive vertex count")
    if kind == "graph" and n < 2:
        raise DomainError("graph instances need at least two vertices")
    allowed = {
        "hypergraph": ("none", HYPERGRAPH_CONSTRAINT),
        "graph": ("none", GRAPH_CONSTRAINT),
    }[kind]
    if constraints not in allowed:
        raise DomainError(f"unknown constraints {constraints!r} for kind {kind!r}")
    rng = random.Random(seed)
    verts = list(range(1, n + 1))
    dense = constraints != "none"

    def stream():
        while True:
            for _ in range(attempts):
                if kind == "hypergraph":
                    inst = _random_hypergraph(rng, verts, max_edges, dense)
                    if constraints == "none" or _hypergraph_ok(inst):
                        break
                else:
                    inst = _random_graph(rng, verts, max_edges)
                    if constraints == "none" or _graph_ok(inst):
                        break
            else:
                raise GenerationExhausted(
                    f"no {kind} on {n} vertices with {constraints!r} "
                    f"in {attempts} attempts"
                )
            yield inst

    return stream()


def _random_hypergraph(
    rng: random.Random, verts: list, max_edges: int, dense: bool = False
) -> Hypergraph3:
    n = len(verts)
    # constrained sampling needs degree sums near 4n, so bias the proposals
    # toward triples and full edge counts; the filter stays the authority
    lo = min(max(1, n, (4 * n + 2) // 3 if dense else 0), max_edges)
    m = rng.randint(lo, max_edges)
    if dense:
        triple_bias = 1.0 if n >= 6 else (0.85 if n == 5 else 0.5)
    else:
        triple_bias = 1 / 3
    edges = {}
    for i in range(m):
        arity = 3 if n >= 3 and rng.random() < triple_bias else 2
        edges[f"e{i + 1}"] = frozenset(rng.sample(verts, arity))
    return Hypergraph3(verts, edges)


def _random_graph(rng: random.Random, verts: list, max_edges: int) -> Multigraph:
    lo = min(max(1, len(verts)), max_edges)
    m = rng.randint(lo, max_edges)
    edges = {}
    for i in range(m):
        edges[f"m{i + 1}"] = frozenset(rng.sample(verts, 2))
    return Multigraph(verts, edges)


def _hypergraph_ok(h: Hypergraph3) -> bool:
    report = edge_connectivity_report(h)
    return (
        report.connected
        and not report.truncated
        and report.min_cut_size >= 4
        and not report.forbidden_3cut
    )


def _graph_ok(g: Multigraph) -> bool:
    if not g.edges or not mg_is_connected(g):
        return False
    analysis = analyze_graph(g)
    return analysis.essential_connectivity >= 5 and analysis.min_edge_weight >= 6
