from typing import Any, Optional, Sequence


class WpoError(Exception):
    """
    Base class for every error raised by the toolkit.

    The command line catches this type, prints the message and exits with
    status 1; anything else is a bug.
    """


class OrdinalError(WpoError):
    """An arithmetic precondition on ordinal notations was violated."""


class NotNormalFormError(OrdinalError):
    """A notation is not in canonical Cantor normal form."""


class OrdinalSyntaxError(OrdinalError):
    """
    Raised when ordinal text does not match the grammar.

    Attributes:
        position: Offset in the input where parsing failed.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class PosetError(WpoError):
    """Invalid finite poset construction or query."""


class CycleError(PosetError):
    """The supplied relation is not antisymmetric."""

    def __init__(self, cycle: Sequence[Any]):
        rendered = " <= ".join(str(x) for x in cycle)
        super().__init__(f"cycle detected: {rendered}")
        self.cycle = list(cycle)


class UnknownElementError(PosetError):
    def __init__(self, element: Any):
        super().__init__(f"unknown element: {element!r}")
        self.element = element


class DuplicateElementError(PosetError):
    def __init__(self, element: Any):
        super().__init__(f"duplicate element: {element!r}")
        self.element = element


class ForeignElementError(PosetError):
    """A multiset mentions an element outside its ambient poset."""

    def __init__(self, element: Any):
        super().__init__(f"element {element!r} does not belong to the ambient poset")
        self.element = element


class PosetFileError(PosetError):
    """A poset document could not be read or is malformed."""


class GuardExceededError(WpoError):
    """
    An exhaustive search was asked to run beyond its configured size limit.

    Attributes:
        guard: Name of the limit (for example ``sot_guard``).
        limit: The configured maximum.
        actual: The size that was requested.
    """

    def __init__(self, guard: str, limit: int, actual: int):
        super().__init__(f"{guard} exceeded: size {actual} > limit {limit}")
        self.guard = guard
        self.limit = limit
        self.actual = actual


class QuerySyntaxError(WpoError):
    """
    Raised when a query does not match the query grammar.

    Attributes:
        position: Offset in the query text.
        expected: Tokens that would have been accepted at that offset.
    """

    def __init__(self, position: int, expected: Sequence[str], found: Optional[str] = None):
        wanted = ", ".join(expected)
        got = "end of input" if found is None else repr(found)
        super().__init__(f"parse error at position {position}: expected {wanted}, found {got}")
        self.position = position
        self.expected = list(expected)
        self.found = found


class ConfigError(WpoError):
    """A verification configuration is out of range."""


class OracleMismatchError(WpoError):
    """A brute-force oracle disagreed with a combinatorial identity it must satisfy."""
