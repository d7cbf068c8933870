"""
Reader for the ASCII ordinal notation produced by ``render_ordinal``.

Grammar (whitespace between tokens is ignored)::

    ordinal  := '0' | term ('+' term)*
    term     := 'w' ('^' exponent)? ('*' nat)? | 'eps' nat | nat
    exponent := nat | 'w' | 'eps' nat | '(' ordinal ')'

Terms must appear in strictly decreasing exponent order, so every accepted
string denotes exactly one Cantor normal form.
"""
from typing import List, Tuple

from .exceptions import NotNormalFormError, OrdinalSyntaxError
from .ordinal import OMEGA, ZERO, Epsilon, Exponent, Ordinal, Term, render_ordinal

__all__ = ["OrdinalParser", "parse_ordinal", "render_ordinal"]


class OrdinalParser:
    """
    Recursive-descent parser over a text buffer.

    The parser can start at any offset, which lets the query reader hand over
    ordinal literals embedded in larger expressions and resume after them.
    """

    def __init__(self, text: str, position: int = 0):
        self.text = text
        self.position = position

    def skip_whitespace(self):
        while self.position < len(self.text) and self.text[self.position].isspace():
            self.position += 1

    def at_end(self) -> bool:
        self.skip_whitespace()
        return self.position >= len(self.text)

    def peek(self, token: str) -> bool:
        self.skip_whitespace()
        return self.text.startswith(token, self.position)

    def _expect(self, token: str):
        if not self.peek(token):
            raise OrdinalSyntaxError(f"expected {token!r}", self.position)
        self.position += len(token)

    def _nat(self) -> int:
        self.skip_whitespace()
        start = self.position
        while self.position < len(self.text) and self.text[self.position].isdigit():
            self.position += 1
        if start == self.position:
            raise OrdinalSyntaxError("expected a natural number", start)
        return int(self.text[start:self.position])

    def starts_term(self) -> bool:
        self.skip_whitespace()
        if self.position >= len(self.text):
            return False
        return self.peek("w") or self.peek("eps") or self.text[self.position].isdigit()

    def parse_ordinal(self) -> Ordinal:
        self.skip_whitespace()
        start = self.position
        if self.peek("0") and not self._digit_follows(start + 1):
            self.position += 1
            return ZERO
        terms: List[Term] = []
        while True:
            term_start = self.position
            terms.append(self.parse_term_pair())
            try:
                Ordinal(tuple(terms))
            except NotNormalFormError:
                raise OrdinalSyntaxError("terms must have strictly decreasing exponents", term_start) from None
            if not self.peek("+"):
                break
            self.position += 1
            self.skip_whitespace()
        return Ordinal(tuple(terms))

    def _digit_follows(self, index: int) -> bool:
        return index < len(self.text) and self.text[index].isdigit()

    def parse_term(self) -> Ordinal:
        """Parse one CNF term and return it as a single-term ordinal."""
        return Ordinal((self.parse_term_pair(),))

    def parse_term_pair(self) -> Tuple[Exponent, int]:
        self.skip_whitespace()
        start = self.position
        if self.peek("eps"):
            self.position += 3
            return Epsilon(self._nat()), 1
        if self.peek("w"):
            self.position += 1
            exponent: Exponent = Ordinal.of(1)
            if self.peek("^"):
                self.position += 1
                exponent = self._exponent()
            coefficient = 1
            if self.peek("*"):
                self.position += 1
                coefficient = self._positive(self.position)
            return exponent, coefficient
        if self.position < len(self.text) and self.text[self.position].isdigit():
            return ZERO, self._positive(start)
        raise OrdinalSyntaxError("expected 'w', 'eps' or a natural number", start)

    def _positive(self, start: int) -> int:
        value = self._nat()
        if value == 0:
            raise OrdinalSyntaxError("coefficients must be positive", start)
        return value

    def _exponent(self) -> Exponent:
        self.skip_whitespace()
        if self.peek("("):
            self.position += 1
            inner = self.parse_ordinal()
            self._expect(")")
            return inner
        if self.peek("eps"):
            self.position += 3
            return Epsilon(self._nat())
        if self.peek("w"):
            self.position += 1
            return OMEGA
        return Ordinal.of(self._nat())


def parse_ordinal(text: str) -> Ordinal:
    """
    Parse a complete ordinal notation.

    Raises:
        OrdinalSyntaxError: On any deviation from the grammar, including
            trailing input and sums that are not in normal form.
    """
    parser = OrdinalParser(text)
    value = parser.parse_ordinal()
    if not parser.at_end():
        raise OrdinalSyntaxError("unexpected trailing input", parser.position)
    return value
