"""
Wpo expressions: leaves (ordinals, explicit posets, antichains, H) combined
by sums, products and the two multiset constructions.
"""
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

from .exceptions import PosetError
from .ordinal import OMEGA, Ordinal, render_ordinal
from .poset import CompositionKind, FinitePoset, random_poset


class WpoTerm(ABC):
    """Base class of expression nodes. Nodes are immutable and hashable."""

    @abstractmethod
    def children(self) -> Tuple["WpoTerm", ...]:
        pass

    @abstractmethod
    def render(self) -> str:
        """The node in query syntax."""
        pass

    def walk(self) -> Iterator["WpoTerm"]:
        """Nodes in post-order."""
        for child in self.children():
            yield from child.walk()
        yield self

    def __str__(self) -> str:
        return self.render()


class Leaf(WpoTerm):
    def children(self) -> Tuple[WpoTerm, ...]:
        return ()


@dataclass(frozen=True)
class OrdinalLeaf(Leaf):
    value: Ordinal

    def render(self) -> str:
        text = render_ordinal(self.value)
        return f"({text})" if len(self.value.terms) > 1 else text


@dataclass(frozen=True)
class PosetLeaf(Leaf):
    """
    An explicit finite poset.

    Attributes:
        poset: The poset.
        source: How the leaf was obtained, e.g. ``poset:path.json``.
    """
    poset: FinitePoset
    source: str = ""

    def render(self) -> str:
        return self.source or f"poset<{len(self.poset)}>"


@dataclass(frozen=True)
class GammaLeaf(Leaf):
    k: int

    def __post_init__(self):
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 0:
            raise PosetError(f"Gamma needs a natural number, got {self.k!r}")

    def render(self) -> str:
        return f"Gamma({self.k})"


@dataclass(frozen=True)
class HLeaf(Leaf):
    """H, the lexicographic sum of Gamma_0, Gamma_1, Gamma_2, ..."""

    def render(self) -> str:
        return "H"


@dataclass(frozen=True)
class Binary(WpoTerm):
    left: WpoTerm
    right: WpoTerm

    kind = None
    symbol = ""

    def children(self) -> Tuple[WpoTerm, ...]:
        return self.left, self.right

    def render(self) -> str:
        return f"{_operand(self.left)} {self.symbol} {_operand(self.right)}"


def _operand(term: WpoTerm) -> str:
    text = term.render()
    return f"({text})" if isinstance(term, Binary) else text


@dataclass(frozen=True)
class DisjointSum(Binary):
    kind = CompositionKind.DISJOINT_SUM
    symbol = "U"


@dataclass(frozen=True)
class LexSum(Binary):
    kind = CompositionKind.LEX_SUM
    symbol = "+"


@dataclass(frozen=True)
class Cartesian(Binary):
    kind = CompositionKind.CARTESIAN
    symbol = "x"


@dataclass(frozen=True)
class LexProduct(Binary):
    kind = CompositionKind.LEX_PRODUCT
    symbol = "."


@dataclass(frozen=True)
class MultisetEmb(WpoTerm):
    child: WpoTerm

    def children(self) -> Tuple[WpoTerm, ...]:
        return (self.child,)

    def render(self) -> str:
        return f"Md({self.child.render()})"


@dataclass(frozen=True)
class MultisetOrd(WpoTerm):
    child: WpoTerm

    def children(self) -> Tuple[WpoTerm, ...]:
        return (self.child,)

    def render(self) -> str:
        return f"Mr({self.child.render()})"


BINARY_TYPES = (DisjointSum, LexSum, Cartesian, LexProduct)


def explicit_poset(term: WpoTerm) -> Optional[FinitePoset]:
    """The explicit poset behind a finite leaf, or None for anything else."""
    if isinstance(term, PosetLeaf):
        return term.poset
    if isinstance(term, GammaLeaf):
        return FinitePoset.antichain(term.k)
    if isinstance(term, OrdinalLeaf) and term.value.is_finite:
        return FinitePoset.chain(term.value.finite_value)
    return None


_INFINITE_LEAVES = (
    OrdinalLeaf(OMEGA),
    OrdinalLeaf(Ordinal(((Ordinal.of(2), 1),))),
    OrdinalLeaf(Ordinal(((Ordinal.of(1), 1), (Ordinal.of(0), 1)))),
    HLeaf(),
)


def random_term(rng: random.Random, depth: int = 2, finite_only: bool = False) -> WpoTerm:
    """
    Draw a term from a seeded generator.

    With ``finite_only`` the leaves are finite posets, antichains and finite
    ordinals and no multiset node is produced, so the whole term denotes a
    finite poset.
    """
    if depth <= 0 or rng.random() < 0.3:
        choice = rng.randrange(4 if finite_only else 6)
        if choice == 0:
            return GammaLeaf(rng.randint(0, 3))
        if choice == 1:
            return OrdinalLeaf(Ordinal.of(rng.randint(1, 3)))
        if choice == 2:
            return PosetLeaf(random_poset(rng.randint(1, 3), rng, 0.5))
        if choice == 3:
            return GammaLeaf(rng.randint(1, 2))
        return rng.choice(_INFINITE_LEAVES)
    kinds = len(BINARY_TYPES) if finite_only else len(BINARY_TYPES) + 2
    choice = rng.randrange(kinds)
    if choice < len(BINARY_TYPES):
        node = BINARY_TYPES[choice]
        return node(random_term(rng, depth - 1, finite_only), random_term(rng, depth - 1, finite_only))
    wrapper = MultisetEmb if choice == len(BINARY_TYPES) else MultisetOrd
    return wrapper(random_term(rng, depth - 1, finite_only))
