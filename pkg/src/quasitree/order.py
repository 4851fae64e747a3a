"""Partition sequences and the two quasigraph orders; solid sets; skeletal test.

The coarse order compares the finest wide and finest narrow partitions of two
quasigraphs over the same host; the refined order additionally compares their
partition sequences lexicographically.  Both are partial: `incomparable` is a
normal verdict and downstream search treats it as "no improvement".
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Vertex, expand_to_graph, mg_is_forest
from .errors import DomainError
from .narrow_wide import finest_narrow, finest_wide, has_tight_complement
from .partitions import Cmp, Partition, PartitionSequence, lex_compare, union_partition
from .quasigraph import QuasiClass, Quasigraph, classify, induced_quasigraph

# A strictly refining sequence can move at most |V| - 1 times per direction;
# anything past this bound means the stabilization detection is broken.
def _term_cap(n: int) -> int:
    return 2 * n + 4


def partition_sequence(pi: Quasigraph) -> PartitionSequence:
    """Alternating wide/narrow refinement sequence of the quasigraph.

    Term 0 is the finest wide partition.  Odd terms refine each class by the
    finest narrow partition of the induced quasigraph at that class, even
    terms by the finest wide partition; sections are taken in the original
    quasigraph at the current classes.  Stops once a term equals the term two
    places earlier (from there the sequence repeats forever).
    """
    terms = [finest_wide(pi)]
    cap = _term_cap(len(pi.host.vertices))
    while True:
        i = len(terms)
        prev = terms[-1]
        pieces = []
        for cls in prev.classes():
            sub = induced_quasigraph(pi, cls)
            pieces.append(finest_narrow(sub) if i % 2 == 1 else finest_wide(sub))
        nxt = union_partition(pieces) if pieces else Partition.trivial(pi.host.vertices)
        terms.append(nxt)
        if len(terms) >= 3 and terms[-1] == terms[-3]:
            break
        if len(terms) > cap:
            raise DomainError("partition sequence failed to stabilize within its bound")
    return PartitionSequence(terms)


def stable_partition(pi: Quasigraph) -> Partition:
    """The eventually-constant value of the sequence (its final recorded term)."""
    return partition_sequence(pi).final()


@dataclass(frozen=True)
class QuasiOrderVerdict:
    """Both order relations between a fixed pair (π, σ), π on the left."""

    unlhd: Cmp       # coarse order from the two finest partitions
    preceq: Cmp      # refined order: coarse order plus sequence comparison

    def as_dict(self):
        return {"unlhd": self.unlhd.value, "preceq": self.preceq.value}


def _partition_cmp(a: Partition, b: Partition) -> Cmp:
    if a == b:
        return Cmp.EQUAL
    if a.refines(b):
        return Cmp.LESS
    if b.refines(a):
        return Cmp.GREATER
    return Cmp.INCOMPARABLE


def _combine(c1: Cmp, c2: Cmp) -> Cmp:
    """Product order of two comparison outcomes."""
    if Cmp.INCOMPARABLE in (c1, c2):
        return Cmp.INCOMPARABLE
    if c1 is Cmp.EQUAL:
        return c2
    if c2 is Cmp.EQUAL or c1 is c2:
        return c1
    return Cmp.INCOMPARABLE


def compare_quasigraphs(pi: Quasigraph, sigma: Quasigraph) -> QuasiOrderVerdict:
    """Evaluate π ⊴ σ and π ⪯ σ exactly (and their reverses, as one verdict)."""
    if pi.host != sigma.host:
        raise DomainError("order comparison needs a common host")
    wide = _partition_cmp(finest_wide(pi), finest_wide(sigma))
    narrow = _partition_cmp(finest_narrow(pi), finest_narrow(sigma))
    unlhd = _combine(wide, narrow)
    if unlhd is Cmp.INCOMPARABLE:
        return QuasiOrderVerdict(unlhd, Cmp.INCOMPARABLE)
    lex = lex_compare(partition_sequence(pi), partition_sequence(sigma))
    return QuasiOrderVerdict(unlhd, _combine(unlhd, lex))


def strictly_improves(sigma: Quasigraph, pi: Quasigraph) -> bool:
    """σ ≻ π in the refined order."""
    return compare_quasigraphs(pi, sigma).preceq is Cmp.LESS


def is_solid(pi: Quasigraph, x) -> bool:
    """X is solid when π[X] is a quasitree whose complement is tight."""
    sub = induced_quasigraph(pi, x)
    if classify(sub) is not QuasiClass.QUASITREE:
        return False
    ok, _ = has_tight_complement(sub)
    return ok


def is_skeletal(pi: Quasigraph, p: Partition) -> bool:
    """All classes solid and the contracted complement is acyclic."""
    from .contract import contract
    from .quasigraph import complement as qg_complement

    if p.ground != pi.host.vertices:
        raise DomainError("skeletal test needs a partition of the host vertices")
    if not all(is_solid(pi, cls) for cls in p.classes()):
        return False
    _, contracted = contract(pi, p)
    return mg_is_forest(expand_to_graph(qg_complement(contracted)))
