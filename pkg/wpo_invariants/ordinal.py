"""
Exact arithmetic on ordinal notations below epsilon_omega.

Values are kept in Cantor normal form: a tuple of ``(exponent, coefficient)``
terms with strictly decreasing exponents. An exponent is either another
``Ordinal`` or an ``Epsilon`` atom standing for the epsilon number eps_k.
Because omega^eps_k = eps_k, the ordinal eps_k itself is the single term
``(Epsilon(k), 1)`` and an exponent whose value is eps_k is always stored as
the atom, which keeps structural equality identical to ordinal equality.
"""
import logging
import random
from dataclasses import dataclass
from enum import Enum
from functools import cmp_to_key, total_ordering
from typing import List, Optional, Tuple, Union

from .exceptions import NotNormalFormError, OrdinalError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Epsilon:
    """The epsilon number eps_index, usable as a CNF exponent."""

    index: int

    def __post_init__(self):
        if isinstance(self.index, bool) or not isinstance(self.index, int) or self.index < 0:
            raise OrdinalError(f"epsilon index must be a natural number, got {self.index!r}")


Exponent = Union["Ordinal", Epsilon]
Term = Tuple[Exponent, int]


@total_ordering
@dataclass(frozen=True, repr=False)
class Ordinal:
    """
    An ordinal below epsilon_omega in Cantor normal form.

    Attributes:
        terms: ``(exponent, coefficient)`` pairs, exponents strictly
            decreasing, coefficients >= 1. The empty tuple is 0.
    """

    terms: Tuple[Term, ...] = ()

    def __post_init__(self):
        normalized = tuple((_canonical_exponent(e), c) for e, c in self.terms)
        for exponent, coefficient in normalized:
            if not isinstance(exponent, (Ordinal, Epsilon)):
                raise NotNormalFormError(f"invalid exponent {exponent!r}")
            if isinstance(coefficient, bool) or not isinstance(coefficient, int) or coefficient < 1:
                raise NotNormalFormError(f"coefficients must be positive integers, got {coefficient!r}")
        for (left, _), (right, _) in zip(normalized, normalized[1:]):
            if _compare_exponents(left, right) <= 0:
                raise NotNormalFormError("exponents must be strictly decreasing")
        object.__setattr__(self, "terms", normalized)

    @classmethod
    def of(cls, n: int) -> "Ordinal":
        """The finite ordinal n."""
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise OrdinalError(f"finite ordinals are natural numbers, got {n!r}")
        return ZERO if n == 0 else cls(((ZERO, n),))

    @classmethod
    def eps(cls, k: int) -> "Ordinal":
        """The epsilon number eps_k."""
        return cls(((Epsilon(k), 1),))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _is_zero_exponent(self.terms[0][0]))

    @property
    def finite_value(self) -> int:
        if not self.is_finite:
            raise OrdinalError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and _is_zero_exponent(self.terms[-1][0])

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and not _is_zero_exponent(self.terms[-1][0])

    @property
    def epsilon_index(self) -> Optional[int]:
        """k when this ordinal is exactly eps_k, otherwise None."""
        if len(self.terms) == 1:
            exponent, coefficient = self.terms[0]
            if isinstance(exponent, Epsilon) and coefficient == 1:
                return exponent.index
        return None

    @property
    def has_epsilon(self) -> bool:
        """True iff the value is at least eps_0."""
        return any(isinstance(e, Epsilon) or e.has_epsilon for e, _ in self.terms)

    def __lt__(self, other):
        if not isinstance(other, (Ordinal, int)):
            return NotImplemented
        return compare(self, _coerce(other)) < 0

    def __add__(self, other):
        if not isinstance(other, (Ordinal, int)):
            return NotImplemented
        return add(self, _coerce(other))

    def __radd__(self, other):
        if not isinstance(other, int):
            return NotImplemented
        return add(_coerce(other), self)

    def __mul__(self, other):
        if not isinstance(other, (Ordinal, int)):
            return NotImplemented
        return multiply(self, _coerce(other))

    def __rmul__(self, other):
        if not isinstance(other, int):
            return NotImplemented
        return multiply(_coerce(other), self)

    def __str__(self) -> str:
        return render_ordinal(self)

    def __repr__(self) -> str:
        return f"Ordinal('{render_ordinal(self)}')"


class OrdinalKind(Enum):
    ZERO = "zero"
    SUCCESSOR = "successor"
    LIMIT = "limit"


@dataclass(frozen=True)
class OrdinalClassification:
    kind: OrdinalKind
    additively_indecomposable: bool
    multiplicatively_indecomposable: bool
    epsilon_number: bool


def _coerce(value: Union[Ordinal, int]) -> Ordinal:
    return value if isinstance(value, Ordinal) else Ordinal.of(value)


def _is_zero_exponent(exponent: Exponent) -> bool:
    return isinstance(exponent, Ordinal) and not exponent.terms


def _canonical_exponent(exponent):
    if isinstance(exponent, Ordinal):
        index = exponent.epsilon_index
        if index is not None:
            return Epsilon(index)
    return exponent


def _exponent_value(exponent: Exponent) -> Ordinal:
    if isinstance(exponent, Epsilon):
        return Ordinal(((exponent, 1),))
    return exponent


def _compare_exponents(left: Exponent, right: Exponent) -> int:
    if isinstance(left, Epsilon) and isinstance(right, Epsilon):
        return (left.index > right.index) - (left.index < right.index)
    return compare(_exponent_value(left), _exponent_value(right))


def compare(a: Ordinal, b: Ordinal) -> int:
    """
    Three-way comparison of two notations.

    Returns:
        -1, 0 or 1 as a is less than, equal to or greater than b.
    """
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        order = _compare_exponents(ea, eb)
        if order:
            return order
        if ca != cb:
            return -1 if ca < cb else 1
    return (len(a.terms) > len(b.terms)) - (len(a.terms) < len(b.terms))


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal sum a + b."""
    if b.is_zero:
        return a
    lead, lead_coefficient = b.terms[0]
    kept: List[Term] = []
    for exponent, coefficient in a.terms:
        order = _compare_exponents(exponent, lead)
        if order > 0:
            kept.append((exponent, coefficient))
            continue
        if order == 0:
            lead_coefficient += coefficient
        break
    return Ordinal(tuple(kept) + ((lead, lead_coefficient),) + b.terms[1:])


def multiply(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal product a * b, distributing over the terms of b."""
    if a.is_zero or b.is_zero:
        return ZERO
    lead, lead_coefficient = a.terms[0]
    result = ZERO
    for exponent, coefficient in b.terms:
        if _is_zero_exponent(exponent):
            piece = Ordinal(((lead, lead_coefficient * coefficient),) + a.terms[1:])
        else:
            shifted = add(_exponent_value(lead), _exponent_value(exponent))
            piece = Ordinal(((shifted, coefficient),))
        result = add(result, piece)
    return result


def left_subtract(a: Ordinal, b: Ordinal) -> Ordinal:
    """
    The unique c with b + c = a.

    By convention 0 - 1 is 0, so that "alpha - 1" is total.

    Raises:
        OrdinalError: If b > a (other than the 0 - 1 convention).
    """
    if compare(b, a) > 0:
        if a.is_zero and b == ONE:
            return ZERO
        raise OrdinalError(f"cannot subtract {b} from the smaller ordinal {a}")
    i = 0
    while i < len(b.terms) and b.terms[i] == a.terms[i]:
        i += 1
    if i == len(b.terms):
        return Ordinal(a.terms[i:])
    (eb, cb), (ea, ca) = b.terms[i], a.terms[i]
    if _compare_exponents(eb, ea) == 0:
        return Ordinal(((ea, ca - cb),) + a.terms[i + 1:])
    return Ordinal(a.terms[i:])


def minus_one(a: Ordinal) -> Ordinal:
    """alpha - 1: alpha itself when infinite, n - 1 when alpha = n (0 stays 0)."""
    return left_subtract(a, ONE)


def nat_sum(a: Ordinal, b: Ordinal) -> Ordinal:
    """Natural (Hessenberg) sum: merge the exponent multisets."""
    merged: List[Term] = []
    i = j = 0
    while i < len(a.terms) and j < len(b.terms):
        (ea, ca), (eb, cb) = a.terms[i], b.terms[j]
        order = _compare_exponents(ea, eb)
        if order > 0:
            merged.append((ea, ca))
            i += 1
        elif order < 0:
            merged.append((eb, cb))
            j += 1
        else:
            merged.append((ea, ca + cb))
            i += 1
            j += 1
    merged.extend(a.terms[i:])
    merged.extend(b.terms[j:])
    return Ordinal(tuple(merged))


def nat_prod(a: Ordinal, b: Ordinal) -> Ordinal:
    """Natural product: natural sum of omega^(a_i (+) b_j) over all term pairs."""
    result = ZERO
    for ea, ca in a.terms:
        for eb, cb in b.terms:
            exponent = nat_sum(_exponent_value(ea), _exponent_value(eb))
            result = nat_sum(result, Ordinal(((exponent, ca * cb),)))
    return result


def split_finite(a: Ordinal) -> Tuple[Ordinal, int]:
    """Write a = lambda + n with lambda zero or limit; return (lambda, n)."""
    if a.is_successor:
        return Ordinal(a.terms[:-1]), a.terms[-1][1]
    return a, 0


def predecessor(a: Ordinal) -> Ordinal:
    if not a.is_successor:
        raise OrdinalError(f"{a} is not a successor ordinal")
    limit_part, n = split_finite(a)
    return add(limit_part, Ordinal.of(n - 1))


def hess_prod(a: Ordinal, b: Ordinal) -> Ordinal:
    """
    Hessenberg-based product.

    Uses the closed form a (.) (lambda + n) = (a * lambda) (+) (a (x) n), with
    lambda zero or limit and n finite. It agrees with the recursive
    definition (zero, successor via natural sum, supremum at limits); the
    oracle module checks that agreement on every ordinal below omega^3.
    """
    if a.is_zero or b.is_zero:
        return ZERO
    limit_part, n = split_finite(b)
    return nat_sum(multiply(a, limit_part), nat_prod(a, Ordinal.of(n)))


def omega_power(a: Ordinal) -> Ordinal:
    """omega^a; epsilon numbers are fixed points."""
    if a.epsilon_index is not None:
        return a
    return Ordinal(((a, 1),))


def _is_epsilon_plus_finite(exponent: Exponent) -> bool:
    if isinstance(exponent, Epsilon):
        return True
    if not exponent.terms:
        return False
    head, head_coefficient = exponent.terms[0]
    if not isinstance(head, Epsilon) or head_coefficient != 1:
        return False
    rest = exponent.terms[1:]
    return not rest or (len(rest) == 1 and _is_zero_exponent(rest[0][0]))


def hat_transform(a: Ordinal) -> Ordinal:
    """
    Bump every CNF exponent of the form eps_k + n (n finite) by one.

    Exponents such as eps_k + omega are left alone; below eps_0 the
    transform is the identity.
    """
    bumped = []
    for exponent, coefficient in a.terms:
        if _is_epsilon_plus_finite(exponent):
            exponent = add(_exponent_value(exponent), ONE)
        bumped.append((exponent, coefficient))
    return Ordinal(tuple(bumped))


def h_star(a: Ordinal) -> Ordinal:
    """a when a is infinite and additively indecomposable, else a * omega."""
    if not a.is_finite and classify(a).additively_indecomposable:
        return a
    return multiply(a, OMEGA)


def delta_bound(a: Ordinal) -> Ordinal:
    """a if a is zero or limit; gamma + floor(n / 2) when a = gamma + n."""
    limit_part, n = split_finite(a)
    if n == 0:
        return a
    return add(limit_part, Ordinal.of(n // 2))


def last_exponent(a: Ordinal) -> Exponent:
    if a.is_zero:
        raise OrdinalError("0 has no terms")
    return a.terms[-1][0]


def truncate(a: Ordinal, exponent: Exponent) -> Ordinal:
    """The terms of a whose exponent is at least the given one."""
    return Ordinal(tuple(t for t in a.terms if _compare_exponents(t[0], exponent) >= 0))


def drop_last(a: Ordinal) -> Ordinal:
    """Remove one copy of the last CNF term."""
    exponent, coefficient = a.terms[-1]
    tail = ((exponent, coefficient - 1),) if coefficient > 1 else ()
    return Ordinal(a.terms[:-1] + tail)


def h_sup_product(a: Ordinal, b: Ordinal) -> Ordinal:
    """
    sup { x (+) y + 1 | x < a, y < b }, the height of a product of chains.

    Closed form by cases: two successors give (a-1) (+) (b-1) + 1; a
    successor against a limit L adds to L the part of the predecessor whose
    exponents reach L's last exponent; for two limits the one with the larger
    last exponent absorbs the truncated other side minus its last term.

    Raises:
        OrdinalError: If either argument is 0.
    """
    if a.is_zero or b.is_zero:
        raise OrdinalError("h_sup_product is only defined for nonzero arguments")
    if a.is_successor and b.is_successor:
        return add(nat_sum(predecessor(a), predecessor(b)), ONE)
    if a.is_successor:
        return nat_sum(b, truncate(predecessor(a), last_exponent(b)))
    if b.is_successor:
        return nat_sum(a, truncate(predecessor(b), last_exponent(a)))
    ea, eb = last_exponent(a), last_exponent(b)
    if _compare_exponents(ea, eb) >= 0:
        return nat_sum(a, truncate(drop_last(b), ea))
    return nat_sum(b, truncate(drop_last(a), eb))


def _is_additively_indecomposable(a: Ordinal) -> bool:
    return len(a.terms) == 1 and a.terms[0][1] == 1


def classify(a: Ordinal) -> OrdinalClassification:
    if a.is_zero:
        return OrdinalClassification(OrdinalKind.ZERO, False, False, False)
    kind = OrdinalKind.SUCCESSOR if a.is_successor else OrdinalKind.LIMIT
    additive = _is_additively_indecomposable(a)
    multiplicative = additive and _is_additively_indecomposable(_exponent_value(a.terms[0][0]))
    return OrdinalClassification(kind, additive, multiplicative, a.epsilon_index is not None)


def fundamental_step(a: Ordinal, i: int) -> Ordinal:
    """
    The i-th element of the canonical fundamental sequence of a limit a < eps_0.

    A last term omega^(b+1) becomes omega^b * i; a last term omega^l with l
    limit becomes omega^(l[i]).

    Raises:
        OrdinalError: On zero, successor or epsilon-level input.
    """
    if i < 0:
        raise OrdinalError("fundamental sequence index must be natural")
    if a.has_epsilon:
        raise OrdinalError(f"no fundamental sequence for {a}: at or above eps0")
    if not a.is_limit:
        raise OrdinalError(f"no fundamental sequence for non-limit {a}")
    exponent, coefficient = a.terms[-1]
    prefix = a.terms[:-1] + (((exponent, coefficient - 1),) if coefficient > 1 else ())
    if exponent.is_successor:
        tail = ((predecessor(exponent), i),) if i > 0 else ()
    else:
        tail = ((fundamental_step(exponent, i), 1),)
    return Ordinal(prefix + tail)


def _render_exponent(exponent: Ordinal) -> str:
    if exponent.is_finite:
        return str(exponent.finite_value)
    if exponent == OMEGA:
        return "w"
    return f"({render_ordinal(exponent, nested=True)})"


def _render_term(exponent: Exponent, coefficient: int) -> str:
    if isinstance(exponent, Epsilon):
        if coefficient == 1:
            return f"eps{exponent.index}"
        return f"w^eps{exponent.index}*{coefficient}"
    if exponent.is_zero:
        return str(coefficient)
    base = "w" if exponent == ONE else f"w^{_render_exponent(exponent)}"
    return base if coefficient == 1 else f"{base}*{coefficient}"


def render_ordinal(a: Ordinal, nested: bool = False) -> str:
    """
    Canonical ASCII rendering, e.g. ``w^(w*2+3)*2 + w*5 + 1``.

    Sums nested inside an exponent are written without spaces.
    """
    if a.is_zero:
        return "0"
    separator = "+" if nested else " + "
    return separator.join(_render_term(e, c) for e, c in a.terms)


def random_ordinal(
    rng: random.Random,
    depth: int = 2,
    max_terms: int = 3,
    max_coefficient: int = 3,
    epsilon_rate: float = 0.1,
    max_epsilon: int = 2,
) -> Ordinal:
    """
    Draw a notation below eps_omega from a seeded generator.

    Exponents are drawn recursively up to ``depth``; with probability
    ``epsilon_rate`` an exponent is eps_k or eps_k + n so that the
    epsilon-sensitive branches get exercised.
    """
    exponents = set()
    for _ in range(rng.randint(0, max_terms)):
        if rng.random() < epsilon_rate:
            exponent = Ordinal.eps(rng.randint(0, max_epsilon))
            if rng.random() < 0.5:
                exponent = add(exponent, Ordinal.of(rng.randint(1, 2)))
        elif depth > 0:
            exponent = random_ordinal(rng, depth - 1, max_terms, max_coefficient, epsilon_rate, max_epsilon)
        else:
            exponent = Ordinal.of(rng.randint(0, 3))
        exponents.add(_canonical_exponent(exponent))
    ordered = sorted(exponents, key=cmp_to_key(_compare_exponents), reverse=True)
    return Ordinal(tuple((e, rng.randint(1, max_coefficient)) for e in ordered))
