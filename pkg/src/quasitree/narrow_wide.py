"""Narrow and wide partitions, their finest representatives, tight complements.

A partition is narrow for a quasigraph when every crossing hyperedge has a
crossing representation (an empty representation never crosses), and wide when
every representation sits inside a single class.  Both families are closed
under meet and have a unique finest member; the finest narrow partition is
trivial exactly when the quasigraph's complement is tight.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .core import Hypergraph3, mg_components, sorted_vertices
from .errors import DomainError, InvariantViolation
from .partitions import Partition
from .quasigraph import Quasigraph, complement, induced_quasigraph, underlying_graph


def is_narrow(p: Partition, pi: Quasigraph) -> bool:
    if p.ground != pi.host.vertices:
        raise DomainError("narrowness needs a partition of the host vertices")
    for eid in pi.host.edge_ids():
        if p.crosses(pi.host.hyperedges[eid]):
            rep = pi.rep[eid]
            if not rep or not p.crosses(rep):
                return False
    return True


def is_wide(p: Partition, pi: Quasigraph) -> bool:
    if p.ground != pi.host.vertices:
        raise DomainError("wideness needs a partition of the host vertices")
    return all(not p.crosses(rep) for rep in pi.rep.values() if rep)


def finest_wide(pi: Quasigraph) -> Partition:
    """Components of the underlying graph; verified wide before returning."""
    comps = mg_components(underlying_graph(pi))
    out = Partition(pi.host.vertices, comps)
    if not is_wide(out, pi):
        raise InvariantViolation("component partition failed the wideness check")
    return out


def finest_narrow(pi: Quasigraph) -> Partition:
    """Singleton-up merging to the unique finest narrow partition.

    While some hyperedge crosses the working partition with a non-crossing
    representation, all classes met by that hyperedge must be one class in
    every narrow partition, so they are merged.  Smallest id first; the
    fixpoint is order-independent.  The result is re-verified.
    """
    label = {v: sorted_vertices([v])[0] for v in pi.host.vertices}

    def cls(v):
        while label[v] != v:
            label[v] = label[label[v]]
            v = label[v]
        return v

    changed = True
    while changed:
        changed = False
        for eid in pi.host.edge_ids():
            verts = pi.host.hyperedges[eid]
            roots = {cls(v) for v in verts}
            if len(roots) < 2:
                continue
            rep = pi.rep[eid]
            if rep and len({cls(v) for v in rep}) >= 2:
                continue
            keep = sorted_vertices(roots)[0]
            for r in roots:
                label[r] = keep
            changed = True
    groups: dict = {}
    for v in pi.host.vertices:
        groups.setdefault(cls(v), set()).add(v)
    out = Partition(pi.host.vertices, groups.values())
    if not is_narrow(out, pi):
        raise InvariantViolation("merge fixpoint failed the narrowness check")
    return out


@dataclass(frozen=True)
class ConnectedComplement:
    """Leaf witness: the complement of the (induced) quasigraph is connected."""

    def as_dict(self):
        return "connected"


@dataclass(frozen=True)
class Split:
    """Binary witness: both sides tight, bridged by a used hyperedge.

    The bridge's representation lies in x1 and the hyperedge reaches x2.
    """

    x1: frozenset
    x2: frozenset
    bridge: str
    left: "TightWitness"
    right: "TightWitness"

    def as_dict(self):
        return {
            "split": {
                "x1": sorted_vertices(self.x1),
                "x2": sorted_vertices(self.x2),
                "bridge": self.bridge,
                "left": self.left.as_dict(),
                "right": self.right.as_dict(),
            }
        }


TightWitness = Union[ConnectedComplement, Split]


def has_tight_complement(pi: Quasigraph):
    """Decide tightness; return (True, witness) or (False, narrow partition).

    Decision: the complement is tight iff the finest narrow partition is
    trivial.  The witness is built by merging, starting from the connected
    components of the complement (each a leaf) and joining two classes at a
    time through a used hyperedge whose representation sits in one of them;
    every join is a literal two-sided split, so the tree needs no search.
    """
    fn = finest_narrow(pi)
    if not fn.is_trivial():
        return False, fn

    comp_sets = [vs for vs, _ in complement(pi).components()]
    witness: dict[frozenset, TightWitness] = {vs: ConnectedComplement() for vs in comp_sets}
    cls_of = {v: vs for vs in comp_sets for v in vs}

    while len(witness) > 1:
        merged = False
        for eid in pi.host.edge_ids():
            rep = pi.rep[eid]
            if not rep:
                continue
            x1 = cls_of[next(iter(rep))]
            if not rep <= x1:
                continue  # representation crosses: not a usable bridge
            outside = [v for v in sorted_vertices(pi.host.hyperedges[eid]) if v not in x1]
            if not outside:
                continue
            x2 = cls_of[outside[0]]
            union = x1 | x2
            witness[union] = Split(x1, x2, eid, witness.pop(x1), witness.pop(x2))
            for v in union:
                cls_of[v] = union
            merged = True
            break
        if not merged:
            raise InvariantViolation(
                "tightness merge stalled although the finest narrow partition is trivial"
            )
    (w,) = witness.values()
    if not check_witness(pi, pi.host.vertices, w):
        raise InvariantViolation("constructed tightness witness failed its check")
    return True, w


def check_witness(pi: Quasigraph, ground: frozenset, w: TightWitness) -> bool:
    """Independent recursive evaluation of the tightness definition."""
    if isinstance(w, ConnectedComplement):
        sub = induced_quasigraph(pi, ground)
        return complement(sub).is_connected()
    if not isinstance(w, Split):
        raise DomainError(f"unknown witness node {w!r}")
    if not w.x1 or not w.x2 or (w.x1 & w.x2) or (w.x1 | w.x2) != ground:
        return False
    rep = pi.rep.get(w.bridge)
    if not rep or not rep <= w.x1:
        return False
    if not pi.host.hyperedges[w.bridge] & w.x2:
        return False
    return check_witness(pi, w.x1, w.left) and check_witness(pi, w.x2, w.right)
