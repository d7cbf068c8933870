"""
Parser for invariant queries such as ``w(Md(Gamma(3)))``.

Grammar, loosest binding first::

    query   := ('o' | 'h' | 'w' | 'sot' | 'all') '(' expr ')'
    expr    := union ('+' union)*
    union   := product ('U' product)*
    product := unary (('x' | '.') unary)*     -- no mixing without parentheses
    unary   := 'Md(' expr ')' | 'Mr(' expr ')' | primary
    primary := 'Gamma(' nat ')' | 'H' | 'poset:' path | '(' expr ')' | ordinal term

Ordinal literals are single Cantor normal form terms; runs of literals joined
by '+' are merged into one ordinal leaf, so ``w^2 + w + 3`` is one leaf.
"""
from typing import Callable, List, Optional

from .exceptions import OrdinalSyntaxError, QuerySyntaxError
from .models import FUNCTIONS, Query
from .ordinal import ZERO, add
from .ordinal_parser import OrdinalParser
from .poset import FinitePoset
from .poset_loader import load_poset
from .terms import (
    Cartesian,
    DisjointSum,
    GammaLeaf,
    HLeaf,
    LexProduct,
    LexSum,
    MultisetEmb,
    MultisetOrd,
    OrdinalLeaf,
    PosetLeaf,
    WpoTerm,
)

PosetSource = Callable[[str], FinitePoset]

_PRODUCTS = {"x": Cartesian, ".": LexProduct}


class QueryParser:
    def __init__(self, text: str, poset_source: Optional[PosetSource] = None):
        self.text = text
        self.position = 0
        self.poset_source = poset_source or load_poset

    def _skip(self):
        while self.position < len(self.text) and self.text[self.position].isspace():
            self.position += 1

    def _peek(self, token: str) -> bool:
        self._skip()
        return self.text.startswith(token, self.position)

    def _found(self) -> Optional[str]:
        return self.text[self.position] if self.position < len(self.text) else None

    def _fail(self, *expected: str):
        raise QuerySyntaxError(self.position, expected, self._found())

    def _expect(self, token: str):
        if not self._peek(token):
            self._fail(repr(token))
        self.position += len(token)

    def parse(self) -> Query:
        self._skip()
        start = self.position
        while self.position < len(self.text) and self.text[self.position].isalpha():
            self.position += 1
        function = self.text[start:self.position]
        if function not in FUNCTIONS:
            self.position = start
            self._fail(*(repr(f) for f in FUNCTIONS))
        self._expect("(")
        term = self.expression()
        self._expect(")")
        self._skip()
        if self.position < len(self.text):
            self._fail("end of input")
        return Query(function, term, self.text)

    def expression(self) -> WpoTerm:
        operands = [self.union()]
        while self._peek("+"):
            self.position += 1
            operands.append(self.union())
        merged: List[WpoTerm] = []
        for operand in operands:
            if merged and isinstance(operand, OrdinalLeaf) and isinstance(merged[-1], OrdinalLeaf):
                merged[-1] = OrdinalLeaf(add(merged[-1].value, operand.value))
            else:
                merged.append(operand)
        term = merged[0]
        for operand in merged[1:]:
            term = LexSum(term, operand)
        return term

    def union(self) -> WpoTerm:
        term = self.product()
        while self._peek("U"):
            self.position += 1
            term = DisjointSum(term, self.product())
        return term

    def product(self) -> WpoTerm:
        term = self.unary()
        operator = None
        while True:
            self._skip()
            symbol = self._found()
            if symbol not in _PRODUCTS:
                return term
            if operator is not None and symbol != operator:
                self._fail(f"{operator!r} (parenthesize to mix 'x' and '.')")
            operator = symbol
            self.position += 1
            term = _PRODUCTS[symbol](term, self.unary())

    def unary(self) -> WpoTerm:
        for keyword, node in (("Md(", MultisetEmb), ("Mr(", MultisetOrd)):
            if self._peek(keyword):
                self.position += len(keyword)
                child = self.expression()
                self._expect(")")
                return node(child)
        return self.primary()

    def primary(self) -> WpoTerm:
        if self._peek("Gamma("):
            self.position += len("Gamma(")
            k = self._nat()
            self._expect(")")
            return GammaLeaf(k)
        if self._peek("H"):
            self.position += 1
            return HLeaf()
        if self._peek("poset:"):
            self.position += len("poset:")
            start = self.position
            while self.position < len(self.text) and not self.text[self.position].isspace() and self.text[self.position] != ")":
                self.position += 1
            path = self.text[start:self.position]
            if not path:
                self._fail("a poset file path")
            return PosetLeaf(self.poset_source(path), f"poset:{path}")
        if self._peek("("):
            self.position += 1
            term = self.expression()
            self._expect(")")
            return term
        if self._peek("0") and not self.text[self.position + 1:self.position + 2].isdigit():
            self.position += 1
            return OrdinalLeaf(ZERO)
        ordinals = OrdinalParser(self.text, self.position)
        if not ordinals.starts_term():
            self._fail("'Md('", "'Mr('", "'Gamma('", "'H'", "'poset:'", "'('", "an ordinal")
        try:
            value = ordinals.parse_term()
        except OrdinalSyntaxError as error:
            self.position = error.position
            self._fail("an ordinal term")
        self.position = ordinals.position
        return OrdinalLeaf(value)

    def _nat(self) -> int:
        self._skip()
        start = self.position
        while self.position < len(self.text) and self.text[self.position].isdigit():
            self.position += 1
        if start == self.position:
            self._fail("a natural number")
        return int(self.text[start:self.position])


def parse_query(text: str, poset_source: Optional[PosetSource] = None) -> Query:
    """
    Parse a query.

    Args:
        text: The query text.
        poset_source: Loader for ``poset:PATH`` leaves; defaults to reading
            JSON poset files.

    Raises:
        QuerySyntaxError: With the offset and the accepted tokens.
    """
    return QueryParser(text, poset_source).parse()
