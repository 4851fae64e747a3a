"""Quasigraphs: representation maps over 3-hypergraphs.

A quasigraph picks, for each hyperedge, either nothing or a 2-subset of that
hyperedge (its representation).  The chosen pairs form an ordinary multigraph
on the host's full vertex set; most structure in this package is read off
that graph.
"""

from __future__ import annotations

import enum
from typing import Iterable, Optional

from .core import (
    Hypergraph3,
    Multigraph,
    Vertex,
    induced_subhypergraph,
    mg_components,
    mg_is_forest,
    mg_is_tree,
    sorted_vertices,
)
from .errors import DomainError


class QuasiClass(enum.Enum):
    QUASITREE = "quasitree"
    QUASICYCLE = "quasicycle"
    QUASIFOREST = "quasiforest"
    OTHER = "other"


class Quasigraph:
    """Host hypergraph plus a total representation map id -> 2-subset | ∅."""

    __slots__ = ("host", "rep", "_hash")

    def __init__(self, host: Hypergraph3, rep: dict[str, Iterable[Vertex]]):
        self.host = host
        fixed: dict[str, frozenset] = {}
        for eid in host.edge_ids():
            if eid not in rep:
                raise DomainError(f"representation missing hyperedge {eid!r}")
            val = frozenset(rep[eid] or ())
            if val and len(val) != 2:
                raise DomainError(
                    f"representation of {eid!r} must be empty or a 2-subset"
                )
            if not val <= host.hyperedges[eid]:
                raise DomainError(f"representation of {eid!r} leaves the hyperedge")
            fixed[eid] = val
        extra = set(rep) - set(fixed)
        if extra:
            raise DomainError(f"representation has unknown hyperedges: {sorted(extra)}")
        self.rep = fixed
        self._hash = hash((host, tuple(sorted(fixed.items()))))

    @classmethod
    def empty(cls, host: Hypergraph3) -> "Quasigraph":
        return cls(host, {eid: () for eid in host.edge_ids()})

    def __eq__(self, other):
        if not isinstance(other, Quasigraph):
            return NotImplemented
        return self.host == other.host and self.rep == other.rep

    def __hash__(self):
        return self._hash

    def __repr__(self):
        used = {e: sorted_vertices(p) for e, p in sorted(self.rep.items()) if p}
        return f"Quasigraph(used={used})"

    def value(self, eid: str) -> frozenset:
        try:
            return self.rep[eid]
        except KeyError:
            raise DomainError(f"unknown hyperedge id {eid!r}") from None

    def used_ids(self) -> list[str]:
        return [eid for eid in self.host.edge_ids() if self.rep[eid]]

    def unused_ids(self) -> list[str]:
        return [eid for eid in self.host.edge_ids() if not self.rep[eid]]

    def is_empty(self) -> bool:
        return not any(self.rep.values())

    def with_rep(self, eid: str, value: Iterable[Vertex]) -> "Quasigraph":
        self.value(eid)
        new = dict(self.rep)
        new[eid] = frozenset(value or ())
        return Quasigraph(self.host, new)

    def remove(self, eid: str) -> "Quasigraph":
        return self.with_rep(eid, ())


def underlying_graph(pi: Quasigraph) -> Multigraph:
    """π*: one edge per used hyperedge, spanning every host vertex."""
    return Multigraph(
        pi.host.vertices,
        {eid: pi.rep[eid] for eid in pi.used_ids()},
    )


def classify(pi: Quasigraph) -> QuasiClass:
    g = underlying_graph(pi)
    if mg_is_tree(g):
        return QuasiClass.QUASITREE
    comps = mg_components(g)
    degs = g.degrees()
    cycle_comps = 0
    ok = True
    for comp in comps:
        comp_degs = [degs[v] for v in comp]
        if len(comp) == 1 and comp_degs == [0]:
            continue
        edge_count = sum(1 for ends in g.edges.values() if ends <= comp)
        if all(d == 2 for d in comp_degs) and edge_count == len(comp):
            cycle_comps += 1
        else:
            ok = False
    if ok and cycle_comps == 1:
        return QuasiClass.QUASICYCLE
    if mg_is_forest(g):
        return QuasiClass.QUASIFOREST
    return QuasiClass.OTHER


def complement(pi: Quasigraph) -> Hypergraph3:
    """Spanning subhypergraph of the unused hyperedges."""
    unused = pi.unused_ids()
    return Hypergraph3(
        pi.host.vertices,
        {eid: pi.host.hyperedges[eid] for eid in unused},
        parent=pi.host,
        provenance={eid: eid for eid in unused},
    )


def section(pi: Quasigraph, x: Iterable[Vertex]) -> Hypergraph3:
    """Section of the host at X: traces e∩X of size ≥ 2 whose rep stays in X.

    Differs from the induced subhypergraph exactly on used hyperedges whose
    representation leaves X.  Ids are reused from the host (parallel traces of
    distinct copies stay distinct); provenance records the identity.
    """
    xs = frozenset(x)
    if not xs <= pi.host.vertices:
        raise DomainError("section vertex set leaves the host")
    edges = {}
    prov = {}
    for eid in pi.host.edge_ids():
        inter = pi.host.hyperedges[eid] & xs
        if len(inter) >= 2 and pi.rep[eid] <= xs:
            edges[eid] = inter
            prov[eid] = eid
    return Hypergraph3(xs, edges, parent=pi.host, provenance=prov)


def induced_quasigraph(pi: Quasigraph, x: Iterable[Vertex]) -> Quasigraph:
    """π[X] over section(π, X); each trace keeps the original representation."""
    host = section(pi, x)
    return Quasigraph(host, {eid: pi.rep[eid] for eid in host.edge_ids()})


def is_restriction(sigma: Quasigraph, pi: Quasigraph) -> bool:
    """σ keeps or empties π's value at every hyperedge of the common host."""
    if sigma.host != pi.host:
        raise DomainError("restriction check needs a common host")
    return all(
        sigma.rep[eid] == pi.rep[eid] or not sigma.rep[eid] for eid in pi.host.edge_ids()
    )
