"""Vertex partitions, their meet lattice, and lexicographic sequence order."""

from __future__ import annotations

import enum
from typing import Iterable, Optional

from .core import Vertex, order_key, sorted_vertices
from .errors import DomainError


class Partition:
    """Canonical partition of a vertex set: label map with minimum-id labels."""

    __slots__ = ("ground", "_label", "_classes", "_hash")

    def __init__(self, ground: Iterable[Vertex], classes: Iterable[Iterable[Vertex]]):
        self.ground = frozenset(ground)
        label: dict = {}
        seen: set = set()
        for cls in classes:
            cs = frozenset(cls)
            if not cs:
                raise DomainError("partition classes must be nonempty")
            if cs & seen:
                raise DomainError("partition classes must be disjoint")
            if not cs <= self.ground:
                raise DomainError("partition class leaves the ground set")
            seen |= cs
            lab = sorted_vertices(cs)[0]
            for v in cs:
                label[v] = lab
        if seen != self.ground:
            raise DomainError("partition classes must cover the ground set")
        self._label = label
        groups: dict = {}
        for v, lab in label.items():
            groups.setdefault(lab, set()).add(v)
        self._classes = tuple(
            frozenset(groups[lab]) for lab in sorted(groups, key=order_key)
        )
        self._hash = hash((self.ground, frozenset(self._classes)))

    @classmethod
    def trivial(cls, ground: Iterable[Vertex]) -> "Partition":
        g = frozenset(ground)
        return cls(g, [g] if g else [])

    @classmethod
    def discrete(cls, ground: Iterable[Vertex]) -> "Partition":
        g = frozenset(ground)
        return cls(g, [{v} for v in g])

    @classmethod
    def from_label_map(cls, labels: dict) -> "Partition":
        groups: dict = {}
        for v, lab in labels.items():
            groups.setdefault(lab, set()).add(v)
        return cls(labels.keys(), groups.values())

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.ground == other.ground and self._classes == other._classes

    def __hash__(self):
        return self._hash

    def __repr__(self):
        body = "; ".join(
            "{" + ",".join(str(v) for v in sorted_vertices(c)) + "}"
            for c in self._classes
        )
        return f"Partition[{body}]"

    def classes(self) -> tuple[frozenset, ...]:
        return self._classes

    def class_of(self, v: Vertex) -> frozenset:
        lab = self.label_of(v)
        for c in self._classes:
            if lab in c:
                return c
        raise AssertionError("label map out of sync")

    def label_of(self, v: Vertex):
        try:
            return self._label[v]
        except KeyError:
            raise DomainError(f"{v!r} is not in the partition ground set") from None

    def same_class(self, u: Vertex, v: Vertex) -> bool:
        return self.label_of(u) == self.label_of(v)

    def is_trivial(self) -> bool:
        return len(self._classes) <= 1

    def is_discrete(self) -> bool:
        return all(len(c) == 1 for c in self._classes)

    def crosses(self, verts: Iterable[Vertex]) -> bool:
        """True when the given vertices meet at least two classes."""
        labs = {self.label_of(v) for v in verts}
        return len(labs) >= 2

    def refines(self, other: "Partition") -> bool:
        """Every class of self lies inside a class of other."""
        if self.ground != other.ground:
            raise DomainError("refinement comparison needs a common ground set")
        return all(not other.crosses(c) for c in self._classes if c)

    def as_lists(self) -> list[list]:
        return [sorted_vertices(c) for c in self._classes]


def meet(p: Partition, r: Partition) -> Partition:
    """P∧R: classes are the nonempty pairwise intersections."""
    if p.ground != r.ground:
        raise DomainError("meet needs a common ground set")
    labels = {v: (p.label_of(v), r.label_of(v)) for v in p.ground}
    groups: dict = {}
    for v, lab in labels.items():
        groups.setdefault(lab, set()).add(v)
    return Partition(p.ground, groups.values())


def meet_all(parts: Iterable[Partition], ground) -> Partition:
    out = Partition.trivial(ground)
    for p in parts:
        out = meet(out, p)
    return out


def induced_partition(p: Partition, y: Iterable[Vertex]) -> Partition:
    """P[Y]: nonempty traces of classes on Y.  Y=∅ gives the empty partition."""
    ys = frozenset(y)
    if not ys <= p.ground:
        raise DomainError("induced partition needs Y inside the ground set")
    return Partition(ys, [c & ys for c in p.classes() if c & ys])


def union_partition(parts: Iterable[Partition]) -> Partition:
    """Disjoint union: one partition whose classes are all the given classes."""
    ground: set = set()
    classes: list = []
    for p in parts:
        if p.ground & ground:
            raise DomainError("union of partitions needs disjoint grounds")
        ground |= p.ground
        classes.extend(p.classes())
    return Partition(ground, classes)


class Cmp(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


class PartitionSequence:
    """Finite prefix of an eventually-constant partition sequence.

    `terms` must already contain the constant tail (the producer stops once a
    term repeats); `term(i)` extends past the stored prefix by repeating the
    final term.
    """

    __slots__ = ("terms", "ground")

    def __init__(self, terms: list[Partition]):
        if not terms:
            raise DomainError("a partition sequence needs at least one term")
        self.terms = tuple(terms)
        self.ground = terms[0].ground
        for t in terms:
            if t.ground != self.ground:
                raise DomainError("sequence terms must share a ground set")

    def __eq__(self, other):
        if not isinstance(other, PartitionSequence):
            return NotImplemented
        n = max(len(self.terms), len(other.terms))
        return all(self.term(i) == other.term(i) for i in range(n))

    def __hash__(self):
        return hash((self.ground, self.terms))

    def __repr__(self):
        return f"PartitionSequence({len(self.terms)} terms)"

    def term(self, i: int) -> Partition:
        if i < 0:
            raise DomainError("sequence index must be nonnegative")
        return self.terms[min(i, len(self.terms) - 1)]

    def final(self) -> Partition:
        return self.terms[-1]


def lex_compare(a: PartitionSequence, b: PartitionSequence) -> Cmp:
    """Lexicographic comparison by strict refinement at the first difference.

    Both sequences are extended by their constant tails to a common length.
    """
    if a.ground != b.ground:
        raise DomainError("lexicographic comparison needs a common ground set")
    n = max(len(a.terms), len(b.terms))
    for i in range(n):
        ta, tb = a.term(i), b.term(i)
        if ta == tb:
            continue
        if ta.refines(tb):
            return Cmp.LESS
        if tb.refines(ta):
            return Cmp.GREATER
        return Cmp.INCOMPARABLE
    return Cmp.EQUAL
