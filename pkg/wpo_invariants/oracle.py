"""
Brute-force ground truth on finite posets and bounded multisets.

Everything here is exhaustive and therefore guarded: each search refuses
inputs beyond its configured size and raises ``GuardExceededError``.
"""
import functools
import itertools
import logging
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .exceptions import ConfigError, ForeignElementError, GuardExceededError, OracleMismatchError, OrdinalError
from .models import LemmaReport, SafeSubsetWitness
from .multiset import Multiset, enumerate_multisets, leq_emb, leq_r
from .ordinal import (
    ONE,
    Ordinal,
    add,
    compare,
    delta_bound,
    fundamental_step,
    h_sup_product,
    hess_prod,
    nat_sum,
    predecessor,
)
from .poset import CompositionKind, FinitePoset, ResidualKind, iter_bits, compose

logger = logging.getLogger(__name__)

LEMMAS = ("emb-sqcup", "r-sqcup", "r-plus", "emb-plus-aug", "emb-plus-iso")


def _guard(name: str, limit: int, poset: FinitePoset):
    if len(poset) > limit:
        raise GuardExceededError(name, limit, len(poset))


def rank_invariants(poset: FinitePoset, guard: int = 9) -> Tuple[int, int, int]:
    """
    Maximal order type, height and width by memoized recursion on residuals.

    o(X) = max(o(X_{not >= x}) + 1), h(X) = max(h(X_{< x}) + 1) and
    w(X) = max(w(X_{incomparable x}) + 1), each 0 on the empty poset. The
    results are checked against |X|, the longest chain and the widest
    antichain before being returned.

    Raises:
        GuardExceededError: If the poset is larger than ``guard``.
        OracleMismatchError: If a recursion disagrees with its direct count.
    """
    _guard("rank_guard", guard, poset)
    n = len(poset)
    not_geq = [poset.full_mask & ~(poset.up_mask(i) | (1 << i)) for i in range(n)]
    below = [poset.down_mask(i) for i in range(n)]
    beside = [poset.incomparable_mask(i) for i in range(n)]

    def ranker(residuals: Sequence[int]) -> Callable[[int], int]:
        @functools.lru_cache(maxsize=None)
        def rank(mask: int) -> int:
            return max((rank(mask & residuals[i]) + 1 for i in iter_bits(mask)), default=0)
        return rank

    full = poset.full_mask
    o = ranker(not_geq)(full)
    h = ranker(below)(full)
    w = ranker(beside)(full)

    height, _ = poset.longest_chain()
    width, _ = poset.widest_antichain()
    if (o, h, w) != (n, height, width):
        raise OracleMismatchError(
            f"rank recursion gave (o, h, w) = ({o}, {h}, {w}) but direct counts are ({n}, {height}, {width})"
        )
    return o, h, w


def _upward_closure(poset: FinitePoset, mask: int) -> int:
    closure = mask
    for i in iter_bits(mask):
        closure |= poset.up_mask(i)
    return closure


def _safe(poset: FinitePoset, x: int, later: int) -> bool:
    """Some y is incomparable to x and above none of the later elements."""
    return bool(poset.incomparable_mask(x) & ~_upward_closure(poset, later))


def sot_brute_force(
    poset: FinitePoset, guard: int = 8, restrict_to_stripped: bool = True
) -> Tuple[int, SafeSubsetWitness]:
    """
    Maximal safe order type of a finite poset, with a witness.

    A subset is safe when it has a linear extension in which every element
    x, against every nonempty set S of elements placed after it, still has
    some y in X incomparable to x with y above no member of S. The residual
    shrinks as S grows, so checking S = "everything after x" suffices; the
    search runs over subsets built from the top position downwards.

    With ``restrict_to_stripped`` (the default reading) candidates come from
    str(X), so every element of a safe subset also has a nonempty
    incomparability residual. Without it candidates range over all of X.

    Raises:
        GuardExceededError: If the poset is larger than ``guard``.
    """
    _guard("sot_guard", guard, poset)
    candidates = poset.stripped_mask() if restrict_to_stripped else poset.full_mask

    @functools.lru_cache(maxsize=None)
    def first_position(mask: int) -> Optional[int]:
        """An element that can open a safe linearisation of mask, or None; -1 for empty."""
        if not mask:
            return -1
        for x in iter_bits(mask):
            if poset.down_mask(x) & mask:
                continue
            rest = mask & ~(1 << x)
            if first_position(rest) is None:
                continue
            if rest and not _safe(poset, x, rest):
                continue
            return x
        return None

    best = 0
    for size in range(bin(candidates).count("1"), -1, -1):
        for combo in itertools.combinations(list(iter_bits(candidates)), size):
            mask = sum(1 << i for i in combo)
            if first_position(mask) is not None:
                best = mask
                break
        else:
            continue
        break

    order: List[int] = []
    remaining = best
    checked = 0
    while remaining:
        x = first_position(remaining)
        order.append(x)
        remaining &= ~(1 << x)
        if remaining:
            checked += (1 << bin(remaining).count("1")) - 1
    witness = SafeSubsetWitness(
        subset=tuple(poset.labels_of(best)),
        linearisation=tuple(poset.elements[i] for i in order),
        checked_tuples=checked,
    )
    return len(order), witness


def is_safe_linearisation(poset: FinitePoset, order: Sequence, restrict_to_stripped: bool = True) -> bool:
    """
    Check one explicit linearisation against the safety condition.

    Every nonempty set of later elements is tried individually, so this
    doubles as an independent check of the suffix shortcut used by
    ``sot_brute_force``.
    """
    indices = [poset.index(x) for x in order]
    if len(set(indices)) != len(indices):
        return False
    for p, i in enumerate(indices):
        if any(poset.up_mask(j) >> i & 1 for j in indices[p + 1:]):
            return False
        if restrict_to_stripped and not poset.incomparable_mask(i):
            return False
        later = indices[p + 1:]
        for r in range(1, len(later) + 1):
            for pivots in itertools.combinations(later, r):
                if not _safe(poset, i, sum(1 << j for j in pivots)):
                    return False
    return True


def sot_by_extensions(poset: FinitePoset, guard: int = 8, restrict_to_stripped: bool = True) -> int:
    """Maximal safe subset size by trying every linear extension of every subset."""
    _guard("sot_guard", guard, poset)
    candidates = poset.stripped_mask() if restrict_to_stripped else poset.full_mask
    pool = list(iter_bits(candidates))
    for size in range(len(pool), 0, -1):
        for combo in itertools.combinations(pool, size):
            sub = poset.induced_mask(sum(1 << i for i in combo))
            for order in sub.linear_extensions(guard=guard):
                if is_safe_linearisation(poset, order, restrict_to_stripped):
                    return size
    return 0


def sot_residual_check(poset: FinitePoset, guard: int = 8) -> bool:
    """
    The safe order type satisfies sot(X) = max(sot(X_{not >= x}) + 1) over
    elements x with a nonempty incomparability residual, or 0 if none.
    """
    value, _ = sot_brute_force(poset, guard)
    expected = 0
    for x in poset.labels_of(poset.stripped_mask()):
        residual_value, _ = sot_brute_force(poset.residual(ResidualKind.NOT_GEQ, x), guard)
        expected = max(expected, residual_value + 1)
    if value != expected:
        logger.debug("residual identity fails on %r: %d != %d", poset, value, expected)
    return value == expected


def delta_bound_check(poset: FinitePoset, guard: int = 8) -> bool:
    """delta(|str(X)|) <= sot(X) <= |str(X)|."""
    value, _ = sot_brute_force(poset, guard)
    stripped = bin(poset.stripped_mask()).count("1")
    return delta_bound(Ordinal.of(stripped)).finite_value <= value <= stripped


def chain_multiset_ordinal(n: int, m: Multiset) -> Ordinal:
    """
    Image of a multiset over the chain 0 < ... < n-1: the sum of
    omega^i * multiplicity(i).

    Raises:
        ForeignElementError: If m mentions anything outside range(n).
    """
    counts = m.counter()
    for element in counts:
        if isinstance(element, bool) or not isinstance(element, int) or not 0 <= element < n:
            raise ForeignElementError(element)
    return Ordinal(tuple((Ordinal.of(i), counts[i]) for i in sorted(counts, reverse=True)))


def check_height_width(poset: FinitePoset, guard: int = 9) -> bool:
    """|X| <= height * width."""
    o, h, w = rank_invariants(poset, guard)
    return o <= h * w


def cartesian_sot_bound_check(a: FinitePoset, b: FinitePoset, guard: int = 8) -> bool:
    """sot(A x B) >= (|A| - 1) * |B| for nonempty A and B."""
    product = compose(CompositionKind.CARTESIAN, a, b)
    value, _ = sot_brute_force(product, guard)
    return value >= (len(a) - 1) * len(b)


def _split(m: Multiset) -> Tuple[Multiset, Multiset]:
    counts = m.counter()
    left = Multiset.from_counts({label: c for (side, label), c in counts.items() if side == 0})
    right = Multiset.from_counts({label: c for (side, label), c in counts.items() if side == 1})
    return left, right


def check_transformation_lemma(lemma: str, a: FinitePoset, b: FinitePoset, k: int) -> LemmaReport:
    """
    Test a multiset transformation identity on all multisets of size <= k.

    ``emb-sqcup`` / ``r-sqcup``: multisets over A u B ordered by the
    embedding (resp. multiset) order match the cartesian product of the two
    factor orders under m -> (m restricted to A, m restricted to B).
    ``r-plus``: multisets over A + B under the multiset order match the
    lexicographic product, the B part compared first. ``emb-plus-aug``: the
    embedding order on A + B is contained in that lexicographic product.
    ``emb-plus-iso`` claims equality for the embedding order and is expected
    to fail; it serves as a negative control.

    Raises:
        ConfigError: On an unknown lemma id.
    """
    if lemma not in LEMMAS:
        raise ConfigError(f"unknown lemma {lemma!r}; choose from {', '.join(LEMMAS)}")
    relation = leq_emb if lemma.startswith("emb") else leq_r
    kind = CompositionKind.DISJOINT_SUM if lemma.endswith("sqcup") else CompositionKind.LEX_SUM
    composed = compose(kind, a, b)
    parameters = {"A": repr(a), "B": repr(b), "k": k}

    multisets = enumerate_multisets(composed, k)
    parts = {m: _split(m) for m in multisets}
    expected = {(ma, mb) for ma in enumerate_multisets(a, k) for mb in enumerate_multisets(b, k - ma.size)}
    image = set(parts.values())
    if image != expected or len(image) != len(multisets):
        stray = next(iter(image ^ expected), None)
        return LemmaReport(lemma, parameters, False, (stray, None), detail="split is not a bijection")

    @functools.lru_cache(maxsize=None)
    def left(m: Multiset, n: Multiset) -> bool:
        return relation(a, m, n)

    @functools.lru_cache(maxsize=None)
    def right(m: Multiset, n: Multiset) -> bool:
        return relation(b, m, n)

    def product(p, q) -> bool:
        if kind is CompositionKind.DISJOINT_SUM:
            return left(p[0], q[0]) and right(p[1], q[1])
        if p[1] != q[1]:
            return right(p[1], q[1])
        return left(p[0], q[0])

    for m in multisets:
        for n in multisets:
            whole = relation(composed, m, n)
            split = product(parts[m], parts[n])
            ok = (not whole or split) if lemma == "emb-plus-aug" else whole == split
            if not ok:
                logger.debug("%s fails on %s vs %s", lemma, m, n)
                return LemmaReport(
                    lemma,
                    parameters,
                    False,
                    (m, n),
                    detail=f"composed order says {whole}, product order says {split}",
                )
    return LemmaReport(lemma, parameters, True)


def _relation_matrix(poset: FinitePoset, multisets: List[Multiset], relation) -> Dict[Tuple[int, int], bool]:
    return {
        (i, j): relation(poset, m, n)
        for i, m in enumerate(multisets)
        for j, n in enumerate(multisets)
    }


def check_partial_order(poset: FinitePoset, k: int, relation_name: str) -> LemmaReport:
    """Reflexivity, antisymmetry and transitivity of leq_emb or leq_r up to size k."""
    relation = leq_emb if relation_name == "emb" else leq_r
    multisets = enumerate_multisets(poset, k)
    matrix = _relation_matrix(poset, multisets, relation)
    lemma = f"partial-order-{relation_name}"
    parameters = {"A": repr(poset), "k": k}
    indices = range(len(multisets))
    for i in indices:
        if not matrix[i, i]:
            return LemmaReport(lemma, parameters, False, (multisets[i], multisets[i]), "not reflexive")
        for j in indices:
            if i != j and matrix[i, j] and matrix[j, i]:
                return LemmaReport(lemma, parameters, False, (multisets[i], multisets[j]), "not antisymmetric")
            if not matrix[i, j]:
                continue
            for l in indices:
                if matrix[j, l] and not matrix[i, l]:
                    return LemmaReport(lemma, parameters, False, (multisets[i], multisets[l]), "not transitive")
    return LemmaReport(lemma, parameters, True)


def check_augmentation(poset: FinitePoset, k: int) -> LemmaReport:
    """Every embedding-order pair is also a multiset-order pair."""
    parameters = {"A": repr(poset), "k": k}
    multisets = enumerate_multisets(poset, k)
    for m, n in itertools.product(multisets, repeat=2):
        if leq_emb(poset, m, n) and not leq_r(poset, m, n):
            return LemmaReport("augmentation", parameters, False, (m, n), "embedding holds, multiset order fails")
    return LemmaReport("augmentation", parameters, True)


def check_size_monotone(poset: FinitePoset, k: int) -> LemmaReport:
    parameters = {"A": repr(poset), "k": k}
    multisets = enumerate_multisets(poset, k)
    for m, n in itertools.product(multisets, repeat=2):
        if leq_emb(poset, m, n) and m.size > n.size:
            return LemmaReport("size-monotone", parameters, False, (m, n), "embedding into a smaller multiset")
    return LemmaReport("size-monotone", parameters, True)


def check_substructure_monotone(a: FinitePoset, b: FinitePoset, k: int) -> LemmaReport:
    """
    For A an induced substructure of B, both multiset orders over B restrict
    to the orders over A.
    """
    parameters = {"A": repr(a), "B": repr(b), "k": k}
    multisets = enumerate_multisets(a, k)
    for m, n in itertools.product(multisets, repeat=2):
        for relation in (leq_emb, leq_r):
            if relation(a, m, n) != relation(b, m, n):
                return LemmaReport("substructure-monotone", parameters, False, (m, n), relation.__name__)
    return LemmaReport("substructure-monotone", parameters, True)


def hess_prod_limit_check(a: Ordinal, b: Ordinal, steps: int = 8) -> bool:
    """
    At a limit b < eps0, a (.) b is the least upper bound of the a (.) b[i].

    The approximations must increase and stay below a (.) b. For leastness,
    a (.) b must itself be a limit and the i-th approximation must reach the
    i-th fundamental step of a (.) b, so no ordinal below a (.) b bounds them.
    """
    if a.is_zero or not b.is_limit or a.has_epsilon or b.has_epsilon:
        raise OrdinalError("hess_prod_limit_check needs a >= 1 and a limit b below eps0")
    value = hess_prod(a, b)
    approximations = [hess_prod(a, fundamental_step(b, i)) for i in range(steps + 1)]
    if any(compare(x, y) >= 0 for x, y in zip(approximations, approximations[1:])):
        return False
    if any(compare(x, value) >= 0 for x in approximations):
        return False
    if not value.is_limit:
        return False
    return all(compare(approximations[i], fundamental_step(value, i)) >= 0 for i in range(1, steps + 1))


def hess_prod_successor_check(a: Ordinal, b: Ordinal) -> bool:
    """a (.) (b + 1) = (a (.) b) (+) a."""
    return hess_prod(a, add(b, ONE)) == nat_sum(hess_prod(a, b), a)


def _approximants(a: Ordinal, steps: int) -> List[Ordinal]:
    if a.is_successor:
        return [predecessor(a)]
    return [fundamental_step(a, i) for i in range(steps + 1)]


def h_sup_product_sup_check(a: Ordinal, b: Ordinal, steps: int = 8) -> bool:
    """
    Compare h_sup_product with sup { x (+) y + 1 | x < a, y < b }.

    Finite arguments are searched exhaustively. Otherwise x and y range over
    the predecessor of a successor or the first fundamental steps of a
    limit: every candidate must stay below the closed form, and the
    candidates must attain it (successor value) or pass its first
    fundamental steps (limit value).
    """
    value = h_sup_product(a, b)
    if a.is_finite and b.is_finite:
        brute = max(x + y + 1 for x in range(a.finite_value) for y in range(b.finite_value))
        return value == Ordinal.of(brute)
    if a.has_epsilon or b.has_epsilon:
        raise OrdinalError("h_sup_product_sup_check works below eps0")
    reached = [add(nat_sum(x, y), ONE) for x in _approximants(a, steps) for y in _approximants(b, steps)]
    if any(compare(r, value) > 0 for r in reached):
        return False
    if value.is_successor:
        return value in reached
    if value in reached:
        return False
    return all(any(compare(r, fundamental_step(value, j)) >= 0 for r in reached) for j in range(1, 4))
