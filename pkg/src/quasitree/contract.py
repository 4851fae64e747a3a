"""Contraction by a partition, substitution into sections, cycle dichotomy.

Contracting a hypergraph by a partition keeps only the hyperedges meeting at
least two classes and replaces each by the set of classes it meets; the
quasigraph over it uses a hyperedge exactly when the original representation
crossed.  Ids are reused, so the provenance map of a contraction is the
identity on the surviving ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .core import Hypergraph3, Vertex, sorted_vertices
from .errors import DomainError, InvariantViolation
from .partitions import Partition
from .quasigraph import QuasiClass, Quasigraph, classify, induced_quasigraph, section


@dataclass(frozen=True)
class ContractedHypergraph:
    """H/P with its class map; vertices of `base` are the class labels."""

    base: Hypergraph3
    class_map: Mapping
    partition: Partition

    def label(self, v: Vertex):
        return self.class_map[v]


def contract_hypergraph(h: Hypergraph3, p: Partition) -> ContractedHypergraph:
    """Keep crossing hyperedges only; each becomes the set of classes it meets."""
    if p.ground != h.vertices:
        raise DomainError("contraction needs a partition of the host vertices")
    class_map = {v: p.label_of(v) for v in h.vertices}
    edges = {}
    prov = {}
    for eid in h.edge_ids():
        labels = frozenset(class_map[v] for v in h.hyperedges[eid])
        if len(labels) >= 2:
            edges[eid] = labels
            prov[eid] = eid
    base = Hypergraph3(
        frozenset(class_map.values()), edges, parent=h, provenance=prov
    )
    return ContractedHypergraph(base, class_map, p)


def contract(pi: Quasigraph, p: Partition) -> tuple[ContractedHypergraph, Quasigraph]:
    """(H/P, π/P): a contracted hyperedge is used iff its representation crossed."""
    ch = contract_hypergraph(pi.host, p)
    rep = {}
    for eid in ch.base.edge_ids():
        val = pi.rep[eid]
        labels = frozenset(ch.class_map[v] for v in val)
        rep[eid] = labels if len(labels) == 2 else ()
    return ch, Quasigraph(ch.base, rep)


def substitute(pi: Quasigraph, assignments: Mapping) -> Quasigraph:
    """Replace π's values inside each X by the assigned quasigraph over π[X].

    Keys are disjoint vertex sets; values are quasigraphs whose host equals
    section(π, X).  Hyperedges outside every section keep π's value.  A
    hyperedge trace lies in at most one section, so application order is
    immaterial.
    """
    keys = [frozenset(k) for k in assignments]
    seen: set = set()
    for k in keys:
        if k & seen:
            raise DomainError("substitution sets must be pairwise disjoint")
        seen |= k
    rep = dict(pi.rep)
    for k in keys:
        sigma = assignments[k] if k in assignments else assignments[tuple(k)]
        sec = section(pi, k)
        if sigma.host != sec:
            raise DomainError("substituted quasigraph host differs from the section")
        for eid in sec.edge_ids():
            val = sigma.rep[eid]
            if val and not val <= pi.host.hyperedges[eid]:
                raise InvariantViolation("substituted value leaves the hyperedge")
            rep[eid] = val
    return Quasigraph(pi.host, rep)


@dataclass(frozen=True)
class CaseWithin:
    """The whole quasicycle lies inside one class of the coarser partition."""

    x: frozenset
    cycle: Quasigraph

    kind = "within-class"


@dataclass(frozen=True)
class CaseEulerian:
    """Contracting by the coarser partition leaves a nonempty even-degree quasigraph."""

    contracted: Quasigraph

    kind = "eulerian"


def cycle_dichotomy(gamma: Quasigraph, r: Partition, p: Partition):
    """Either γ fits inside one class of P, or γ/P is eulerian and nonempty.

    γ is given on the host (its contraction by R is the quasicycle the caller
    found); R must refine P.  Detection: the first P-crossing used hyperedge
    in id order sends us to the eulerian case.
    """
    if not r.refines(p):
        raise DomainError("cycle dichotomy needs the finer partition to refine the coarser")
    ch_r, gamma_r = contract(gamma, r)
    if classify(gamma_r) is not QuasiClass.QUASICYCLE:
        raise DomainError("the contraction by the finer partition must be a quasicycle")
    crossing = [
        eid for eid in gamma.used_ids()
        if len({p.label_of(v) for v in gamma.rep[eid]}) == 2
    ]
    if not crossing:
        used_verts: set = set()
        for eid in gamma.used_ids():
            used_verts |= gamma.rep[eid]
        labels = {p.label_of(v) for v in used_verts}
        if len(labels) != 1:
            raise InvariantViolation("no crossing representation yet several classes touched")
        x = p.class_of(next(iter(used_verts)))
        sub = induced_quasigraph(gamma, x)
        return CaseWithin(x, sub)
    _, gamma_p = contract(gamma, p)
    degs = {}
    for eid in gamma_p.used_ids():
        for v in gamma_p.rep[eid]:
            degs[v] = degs.get(v, 0) + 1
    if not degs or any(d % 2 for d in degs.values()):
        raise InvariantViolation("eulerian case produced an odd-degree contraction")
    return CaseEulerian(gamma_p)


def provenance_signature(h: Hypergraph3) -> dict:
    """Root id -> (canonical vertex tuple) for comparing derived hypergraphs.

    Vertices are canonicalized by the minimum vertex label in each hyperedge's
    own ordering; two derived hypergraphs of the same ancestor are "the same"
    when their signatures agree.
    """
    return {
        h.root_id(eid): tuple(sorted_vertices(h.hyperedges[eid]))
        for eid in h.edge_ids()
    }
