"""
Explicit finite partial orders.

A ``FinitePoset`` stores its full strict order as one bitmask per element,
so residuals, incomparability tests and induced substructures are mask
operations. Graph algorithms (cycle detection, transitive closure,
topological sorts, longest paths, bipartite matching) come from networkx.
"""
import itertools
import logging
import random
from enum import Enum
from typing import Callable, Dict, Hashable, Iterable, Iterator, List, Sequence, Tuple

import networkx as nx
from networkx.algorithms import bipartite

from .exceptions import (
    CycleError,
    DuplicateElementError,
    GuardExceededError,
    PosetError,
    UnknownElementError,
)

logger = logging.getLogger(__name__)

Label = Hashable


class ResidualKind(Enum):
    NOT_GEQ = "not-geq"
    STRICTLY_BELOW = "strictly-below"
    INCOMPARABLE = "incomparable"
    NOT_GEQ_SET = "not-geq-set"


class CompositionKind(Enum):
    DISJOINT_SUM = "disjoint-sum"
    LEX_SUM = "lex-sum"
    CARTESIAN = "cartesian"
    LEX_PRODUCT = "lex-product"


class FinitePoset:
    """
    An immutable finite partial order over hashable labels.

    Build instances with ``from_relations`` or the named constructors; the
    raw constructor trusts its masks.

    Attributes:
        elements: Labels in a fixed order; element i owns bit ``1 << i``.
    """

    def __init__(self, elements: Sequence[Label], up_masks: Sequence[int]):
        self.elements: Tuple[Label, ...] = tuple(elements)
        self._index: Dict[Label, int] = {e: i for i, e in enumerate(self.elements)}
        self._up = tuple(up_masks)
        down = [0] * len(self.elements)
        for i, mask in enumerate(self._up):
            for j in iter_bits(mask):
                down[j] |= 1 << i
        self._down = tuple(down)
        full = self.full_mask
        self._incomparable = tuple(
            full & ~(self._up[i] | self._down[i] | (1 << i)) for i in range(len(self.elements))
        )

    @classmethod
    def from_relations(cls, elements: Iterable[Label], pairs: Iterable[Tuple[Label, Label]]) -> "FinitePoset":
        """
        Close a set of ``(a, b)`` assertions meaning a <= b into a partial order.

        Raises:
            DuplicateElementError: If a label repeats.
            UnknownElementError: If a pair mentions an undeclared label.
            CycleError: If the closure is not antisymmetric.
        """
        labels: List[Label] = []
        index: Dict[Label, int] = {}
        for element in elements:
            if element in index:
                raise DuplicateElementError(element)
            index[element] = len(labels)
            labels.append(element)

        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(labels)))
        for a, b in pairs:
            for x in (a, b):
                if x not in index:
                    raise UnknownElementError(x)
            if a != b:
                graph.add_edge(index[a], index[b])

        if not nx.is_directed_acyclic_graph(graph):
            cycle = [labels[u] for u, _ in nx.find_cycle(graph)]
            raise CycleError(cycle + cycle[:1])

        up = [0] * len(labels)
        for u, v in nx.transitive_closure_dag(graph).edges():
            up[u] |= 1 << v
        return cls(labels, up)

    @classmethod
    def _from_predicate(cls, labels: Sequence[Label], leq: Callable[[int, int], bool]) -> "FinitePoset":
        up = [0] * len(labels)
        for i, j in itertools.permutations(range(len(labels)), 2):
            if leq(i, j):
                up[i] |= 1 << j
        return cls(labels, up)

    @classmethod
    def chain(cls, n: int) -> "FinitePoset":
        """0 < 1 < ... < n-1."""
        return cls(range(n), [((1 << n) - 1) & ~((1 << (i + 1)) - 1) for i in range(n)])

    @classmethod
    def antichain(cls, k: int, labels: Sequence[Label] = None) -> "FinitePoset":
        """Gamma_k: k pairwise incomparable elements."""
        labels = list(range(k)) if labels is None else list(labels)
        if len(labels) != k:
            raise PosetError(f"expected {k} labels, got {len(labels)}")
        return cls.from_relations(labels, [])

    @classmethod
    def empty(cls) -> "FinitePoset":
        return cls((), ())

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.elements)) - 1

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Label]:
        return iter(self.elements)

    def __contains__(self, element) -> bool:
        return element in self._index

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return set(self.elements) == set(other.elements) and set(self.relations()) == set(other.relations())

    def __hash__(self) -> int:
        return hash((frozenset(self.elements), frozenset(self.relations())))

    def __repr__(self) -> str:
        return f"FinitePoset(elements={list(self.elements)!r}, relations={self.relations()!r})"

    def index(self, element: Label) -> int:
        try:
            return self._index[element]
        except (KeyError, TypeError):
            raise UnknownElementError(element) from None

    def up_mask(self, i: int) -> int:
        """Elements strictly above element i."""
        return self._up[i]

    def down_mask(self, i: int) -> int:
        """Elements strictly below element i."""
        return self._down[i]

    def incomparable_mask(self, i: int) -> int:
        return self._incomparable[i]

    def mask_of(self, labels: Iterable[Label]) -> int:
        mask = 0
        for label in labels:
            mask |= 1 << self.index(label)
        return mask

    def labels_of(self, mask: int) -> List[Label]:
        return [self.elements[i] for i in iter_bits(mask)]

    def leq(self, x: Label, y: Label) -> bool:
        i, j = self.index(x), self.index(y)
        return i == j or bool(self._up[i] >> j & 1)

    def lt(self, x: Label, y: Label) -> bool:
        return bool(self._up[self.index(x)] >> self.index(y) & 1)

    def incomparable(self, x: Label, y: Label) -> bool:
        return bool(self._incomparable[self.index(x)] >> self.index(y) & 1)

    def relations(self) -> List[Tuple[Label, Label]]:
        """All strict pairs (x, y) with x < y, in element order."""
        return [(self.elements[i], self.elements[j]) for i in range(len(self.elements)) for j in iter_bits(self._up[i])]

    def induced(self, labels: Iterable[Label]) -> "FinitePoset":
        """The induced substructure on the given labels, keeping element order."""
        return self.induced_mask(self.mask_of(labels))

    def induced_mask(self, mask: int) -> "FinitePoset":
        kept = list(iter_bits(mask))
        position = {old: new for new, old in enumerate(kept)}
        up = []
        for old in kept:
            new_mask = 0
            for j in iter_bits(self._up[old] & mask):
                new_mask |= 1 << position[j]
            up.append(new_mask)
        return FinitePoset([self.elements[i] for i in kept], up)

    def residual_mask(self, kind: ResidualKind, pivots: Sequence[Label]) -> int:
        if not pivots:
            raise PosetError("a residual needs at least one pivot")
        if kind is not ResidualKind.NOT_GEQ_SET and len(pivots) != 1:
            raise PosetError(f"{kind.value} residual takes exactly one pivot")
        mask = self.full_mask
        for pivot in pivots:
            i = self.index(pivot)
            if kind in (ResidualKind.NOT_GEQ, ResidualKind.NOT_GEQ_SET):
                mask &= ~(self._up[i] | (1 << i))
            elif kind is ResidualKind.STRICTLY_BELOW:
                mask &= self._down[i]
            else:
                mask &= self._incomparable[i]
        return mask

    def residual(self, kind: ResidualKind, *pivots: Label) -> "FinitePoset":
        """
        The residual X_{*x}: elements y with y * x for the given relation kind.

        ``NOT_GEQ_SET`` intersects the not-geq residuals of every pivot.

        Raises:
            UnknownElementError: If a pivot is not an element.
        """
        return self.induced_mask(self.residual_mask(kind, pivots))

    def stripped_mask(self) -> int:
        mask = 0
        for i, incomparable in enumerate(self._incomparable):
            if incomparable:
                mask |= 1 << i
        return mask

    def stripped_subset(self) -> "FinitePoset":
        """str(X): the elements incomparable to at least one other element."""
        return self.induced_mask(self.stripped_mask())

    def is_linear(self) -> bool:
        return not any(self._incomparable)

    def compose(self, kind: CompositionKind, other: "FinitePoset") -> "FinitePoset":
        return compose(kind, self, other)

    def to_digraph(self) -> nx.DiGraph:
        """The strict order as a transitively closed networkx digraph."""
        graph = nx.DiGraph()
        graph.add_nodes_from(self.elements)
        graph.add_edges_from(self.relations())
        return graph

    def linear_extensions(self, guard: int = 10) -> Iterator[Tuple[Label, ...]]:
        """
        Every linear extension, each exactly once, as tuples listed bottom-up.

        Raises:
            GuardExceededError: If the poset has more than ``guard`` elements.
        """
        if len(self) > guard:
            raise GuardExceededError("extension_guard", guard, len(self))
        for order in nx.all_topological_sorts(self.to_digraph()):
            yield tuple(order)

    def longest_chain(self) -> Tuple[int, List[Label]]:
        """Height with a witness chain, listed bottom-up."""
        if not self.elements:
            return 0, []
        path = nx.dag_longest_path(self.to_digraph())
        return len(path), path

    def widest_antichain(self) -> Tuple[int, List[Label]]:
        """
        Width with a witness antichain.

        Uses the Dilworth/Koenig construction: a maximum matching in the split
        comparability graph gives a minimum vertex cover, and the elements
        with neither copy covered form a maximum antichain.
        """
        if not self.elements:
            return 0, []
        graph = nx.Graph()
        left = [("L", i) for i in range(len(self))]
        graph.add_nodes_from(left)
        graph.add_nodes_from(("R", i) for i in range(len(self)))
        for i in range(len(self)):
            for j in iter_bits(self._up[i]):
                graph.add_edge(("L", i), ("R", j))
        matching = bipartite.hopcroft_karp_matching(graph, top_nodes=left)
        cover = bipartite.to_vertex_cover(graph, matching, top_nodes=left)
        witness = [self.elements[i] for i in range(len(self)) if ("L", i) not in cover and ("R", i) not in cover]
        return len(witness), witness


def iter_bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def compose(kind: CompositionKind, a: FinitePoset, b: FinitePoset) -> FinitePoset:
    """
    Combine two posets.

    Sums label their carriers ``(0, x)`` and ``(1, y)``; products label pairs
    ``(p, q)``. The lexicographic product compares the right component
    first: (p, q) <= (p', q') iff q < q', or q = q' and p <= p'.
    """
    if kind in (CompositionKind.DISJOINT_SUM, CompositionKind.LEX_SUM):
        labels = [(0, x) for x in a.elements] + [(1, y) for y in b.elements]
        offset = len(a)
        cross = (((1 << len(b)) - 1) << offset) if kind is CompositionKind.LEX_SUM else 0
        up = [a.up_mask(i) | cross for i in range(len(a))]
        up += [b.up_mask(j) << offset for j in range(len(b))]
        return FinitePoset(labels, up)

    labels = [(p, q) for p in a.elements for q in b.elements]
    width = len(b)

    def leq_a(i, j):
        return i == j or bool(a.up_mask(i) >> j & 1)

    def leq_b(i, j):
        return i == j or bool(b.up_mask(i) >> j & 1)

    if kind is CompositionKind.CARTESIAN:
        def leq(u, v):
            return leq_a(u // width, v // width) and leq_b(u % width, v % width)
    else:
        def leq(u, v):
            (pu, qu), (pv, qv) = divmod(u, width), divmod(v, width)
            if qu != qv:
                return leq_b(qu, qv)
            return leq_a(pu, pv)

    return FinitePoset._from_predicate(labels, leq)


def is_substructure(a: FinitePoset, b: FinitePoset) -> bool:
    """A <=_st B: A's carrier lies in B and A's order is B's order restricted."""
    if not all(x in b for x in a.elements):
        return False
    return b.induced(a.elements) == a


def is_augmentation(a: FinitePoset, b: FinitePoset) -> bool:
    """True iff a has b's carrier and every relation of b holds in a."""
    if set(a.elements) != set(b.elements):
        return False
    return set(b.relations()) <= set(a.relations())


def is_isomorphic(a: FinitePoset, b: FinitePoset, guard: int = 10) -> bool:
    """
    Order isomorphism test via networkx graph isomorphism on the closures.

    Raises:
        GuardExceededError: If either side has more than ``guard`` elements.
    """
    for side in (a, b):
        if len(side) > guard:
            raise GuardExceededError("isomorphism_guard", guard, len(side))
    if len(a) != len(b) or len(a.relations()) != len(b.relations()):
        return False
    return nx.is_isomorphic(a.to_digraph(), b.to_digraph())


def all_posets(n: int) -> Iterator[FinitePoset]:
    """
    Every labeled poset on {0, ..., n-1}.

    Yields 1, 1, 3, 19 and 219 posets for n = 0..4.
    """
    if n > 4:
        raise GuardExceededError("all_posets", 4, n)
    pairs = list(itertools.permutations(range(n), 2))
    for chosen in itertools.product((False, True), repeat=len(pairs)):
        strict = {pair for pair, keep in zip(pairs, chosen) if keep}
        if any((j, i) in strict for i, j in strict):
            continue
        if any((i, k) not in strict for i, j in strict for j2, k in strict if j == j2):
            continue
        up = [0] * n
        for i, j in strict:
            up[i] |= 1 << j
        yield FinitePoset(range(n), up)


def random_poset(n: int, rng: random.Random, density: float = 0.3) -> FinitePoset:
    """A poset on {0, ..., n-1} closing randomly chosen pairs i < j."""
    pairs = [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < density]
    return FinitePoset.from_relations(range(n), pairs)
