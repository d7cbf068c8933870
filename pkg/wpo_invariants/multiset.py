"""
Finite multisets over the elements of a finite poset, with the multiset
embedding order and the multiset ordering.
"""
import itertools
from collections import Counter
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, List, Mapping, Tuple

import networkx as nx
from networkx.algorithms import bipartite

from .exceptions import ForeignElementError, PosetError
from .poset import FinitePoset, Label


@dataclass(frozen=True)
class Multiset:
    """
    An immutable multiset.

    Attributes:
        support: ``(element, multiplicity)`` pairs with multiplicity >= 1.
    """

    support: FrozenSet[Tuple[Label, int]] = frozenset()

    def __post_init__(self):
        seen = set()
        for element, count in self.support:
            if element in seen:
                raise PosetError(f"element {element!r} listed twice in multiset support")
            if isinstance(count, bool) or not isinstance(count, int) or count < 1:
                raise PosetError(f"multiplicity of {element!r} must be a positive integer")
            seen.add(element)

    @classmethod
    def of(cls, *elements: Label) -> "Multiset":
        return cls.from_counts(Counter(elements))

    @classmethod
    def from_counts(cls, counts: Mapping[Label, int]) -> "Multiset":
        return cls(frozenset((e, c) for e, c in counts.items() if c > 0))

    def counter(self) -> Counter:
        return Counter(dict(self.support))

    def multiplicity(self, element: Label) -> int:
        return self.counter()[element]

    @property
    def size(self) -> int:
        return sum(c for _, c in self.support)

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[Label]:
        """Each element repeated by its multiplicity."""
        return self.counter().elements()

    def elements(self) -> FrozenSet[Label]:
        return frozenset(e for e, _ in self.support)

    def union(self, other: "Multiset") -> "Multiset":
        """m u m': multiplicities add."""
        return Multiset.from_counts(self.counter() + other.counter())

    def intersection(self, other: "Multiset") -> "Multiset":
        return Multiset.from_counts(self.counter() & other.counter())

    def difference(self, other: "Multiset") -> "Multiset":
        return Multiset.from_counts(self.counter() - other.counter())

    def times(self, n: int) -> "Multiset":
        """m x n, the union of n copies of m."""
        return Multiset.from_counts({e: c * n for e, c in self.support})

    def restrict(self, labels: Iterable[Label]) -> "Multiset":
        keep = set(labels)
        return Multiset(frozenset((e, c) for e, c in self.support if e in keep))

    def relabel(self, mapping: Mapping[Label, Label]) -> "Multiset":
        counts: Counter = Counter()
        for e, c in self.support:
            counts[mapping[e]] += c
        return Multiset.from_counts(counts)

    def __str__(self) -> str:
        copies = sorted((repr(e) for e in self), key=str)
        return "[[" + ", ".join(copies) + "]]"


def _check_members(poset: FinitePoset, *multisets: Multiset):
    for m in multisets:
        for element in m.elements():
            if element not in poset:
                raise ForeignElementError(element)


def leq_emb(poset: FinitePoset, m: Multiset, n: Multiset) -> bool:
    """
    Multiset embedding: an injection f from the copies of m into the copies
    of n with x <= f(x) for every copy x.

    Decided as a perfect-matching feasibility test on the bipartite graph of
    copies.

    Raises:
        ForeignElementError: If either multiset leaves the poset.
    """
    _check_members(poset, m, n)
    if m.size > n.size:
        return False
    if m.size == 0:
        return True
    left = [("m", i, x) for i, x in enumerate(m)]
    right = [("n", j, y) for j, y in enumerate(n)]
    graph = nx.Graph()
    graph.add_nodes_from(left)
    graph.add_nodes_from(right)
    graph.add_edges_from((u, v) for u in left for v in right if poset.leq(u[2], v[2]))
    matching = bipartite.hopcroft_karp_matching(graph, top_nodes=left)
    return all(u in matching for u in left)


def leq_r(poset: FinitePoset, m: Multiset, n: Multiset) -> bool:
    """
    Multiset ordering: after cancelling the common part, every leftover
    element of m lies strictly below some leftover element of n.

    Raises:
        ForeignElementError: If either multiset leaves the poset.
    """
    _check_members(poset, m, n)
    common = m.intersection(n)
    rest_m, rest_n = m.difference(common), n.difference(common)
    targets = rest_n.elements()
    return all(any(poset.lt(x, y) for y in targets) for x in rest_m.elements())


def enumerate_multisets(poset: FinitePoset, k: int) -> List[Multiset]:
    """
    Every multiset over the poset with at most k copies, each exactly once.

    Sizes ascend; within a size the order follows the poset's element order.
    """
    if k < 0:
        raise PosetError("size bound must be natural")
    result = []
    for size in range(k + 1):
        for combination in itertools.combinations_with_replacement(poset.elements, size):
            result.append(Multiset.of(*combination))
    return result
