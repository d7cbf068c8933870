"""
Compositional evaluation of maximal order type, height, width and maximal
safe order type over wpo expressions.

Each node is evaluated from its children's invariants with a fixed rule.
Where no rule determines a value the result is an ``InvariantValue`` marked
unknown with a reason; unknowns propagate upwards with their reasons
chained, and bounds are pushed through rules that are monotone.
"""
import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

from .exceptions import OrdinalError
from .models import InvariantTuple, InvariantValue, SettingsData, TraceRecord
from .oracle import rank_invariants, sot_brute_force
from .ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    add,
    classify,
    compare,
    h_star,
    h_sup_product,
    hat_transform,
    hess_prod,
    minus_one,
    multiply,
    nat_prod,
    nat_sum,
    omega_power,
)
from .poset import compose
from .terms import (
    Binary,
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
    explicit_poset,
)

logger = logging.getLogger(__name__)

CITE_ORDINAL = "ordinal-leaf"
CITE_ANTICHAIN = "antichain-leaf"
CITE_ORACLE = "finite-oracle"
CITE_H = "h-leaf"
CITE_LINEAR_SOT = "linear-sot"
CITE_SOT_UNSTATED = "sot-unstated"
CITE_DISJOINT_SUM = "disjoint-sum"
CITE_DISJOINT_SUM_SOT = "disjoint-sum-sot"
CITE_LEX_SUM = "lex-sum"
CITE_LEX_SUM_SOT = "lex-sum-sot"
CITE_CARTESIAN = "cartesian-o-h"
CITE_CARTESIAN_WIDTH = "cartesian-width-not-functional"
CITE_OMEGA_POWER_WIDTH = "omega-power-width"
CITE_LEX_PRODUCT = "lex-product-o-w"
CITE_LEX_PRODUCT_HEIGHT = "lex-product-height-unstated"
CITE_MD_O = "md-order-type"
CITE_MD_H = "md-height"
CITE_MD_W = "md-width"
CITE_MR_O = "mr-order-type"
CITE_MR_H = "mr-height"
CITE_MR_W = "mr-width"
CITE_EMPTY_MULTISET = "empty-multiset"

CITATIONS = frozenset(
    {
        CITE_ORDINAL,
        CITE_ANTICHAIN,
        CITE_ORACLE,
        CITE_H,
        CITE_LINEAR_SOT,
        CITE_SOT_UNSTATED,
        CITE_DISJOINT_SUM,
        CITE_DISJOINT_SUM_SOT,
        CITE_LEX_SUM,
        CITE_LEX_SUM_SOT,
        CITE_CARTESIAN,
        CITE_CARTESIAN_WIDTH,
        CITE_OMEGA_POWER_WIDTH,
        CITE_LEX_PRODUCT,
        CITE_LEX_PRODUCT_HEIGHT,
        CITE_MD_O,
        CITE_MD_H,
        CITE_MD_W,
        CITE_MR_O,
        CITE_MR_H,
        CITE_MR_W,
        CITE_EMPTY_MULTISET,
    }
)


def rule_key(*citations: str) -> str:
    """One trace key per node: the rule-table rows applied, joined with '+'."""
    return "+".join(citations)


RULE_ORDINAL = rule_key(CITE_ORDINAL, CITE_LINEAR_SOT)
RULE_ORACLE = rule_key(CITE_ORACLE)
RULE_ANTICHAIN = rule_key(CITE_ANTICHAIN)
RULE_H = rule_key(CITE_H)
RULE_DISJOINT_SUM = rule_key(CITE_DISJOINT_SUM, CITE_DISJOINT_SUM_SOT)
RULE_LEX_SUM = rule_key(CITE_LEX_SUM, CITE_LEX_SUM_SOT)
RULE_CARTESIAN = rule_key(CITE_CARTESIAN, CITE_CARTESIAN_WIDTH, CITE_SOT_UNSTATED)
RULE_CARTESIAN_OMEGA = rule_key(CITE_CARTESIAN, CITE_OMEGA_POWER_WIDTH, CITE_SOT_UNSTATED)
RULE_LEX_PRODUCT = rule_key(CITE_LEX_PRODUCT, CITE_LEX_PRODUCT_HEIGHT, CITE_SOT_UNSTATED)
RULE_MULTISET_EMB = rule_key(CITE_MD_O, CITE_MD_H, CITE_MD_W, CITE_SOT_UNSTATED)
RULE_MULTISET_EMB_LINEAR = rule_key(CITE_MD_O, CITE_MD_H, CITE_MD_W, CITE_LINEAR_SOT)
RULE_MULTISET_ORD = rule_key(CITE_MR_O, CITE_MR_H, CITE_MR_W, CITE_SOT_UNSTATED)
RULE_MULTISET_ORD_LINEAR = rule_key(CITE_MR_O, CITE_MR_H, CITE_MR_W, CITE_LINEAR_SOT)
RULE_EMPTY_MULTISET = rule_key(CITE_EMPTY_MULTISET)

CARTESIAN_WIDTH_REASON = "width of cartesian product not functional"

Known = InvariantValue.known


def _max(a: Ordinal, b: Ordinal) -> Ordinal:
    return a if compare(a, b) >= 0 else b


def _lower(value: InvariantValue) -> Optional[Ordinal]:
    return value.value if value.is_known else value.lower


def _upper(value: InvariantValue) -> Optional[Ordinal]:
    return value.value if value.is_known else value.upper


def _bound(fn: Callable[..., Ordinal], arguments: Sequence[Optional[Ordinal]]) -> Optional[Ordinal]:
    if any(a is None for a in arguments):
        return None
    try:
        return fn(*arguments)
    except OrdinalError:
        return None


def derive(
    label: str,
    fn: Callable[..., Ordinal],
    inputs: Sequence[Tuple[str, InvariantValue]],
    monotone: bool = True,
) -> InvariantValue:
    """
    Apply ``fn`` to known inputs, or produce an unknown that names the
    unknown inputs and carries bounds when ``fn`` is monotone.
    """
    values = [v for _, v in inputs]
    if all(v.is_known for v in values):
        return Known(fn(*(v.value for v in values)))
    causes = "; ".join(f"{name}: {v.reason}" for name, v in inputs if not v.is_known)
    lower = upper = None
    if monotone:
        lower = _bound(fn, [_lower(v) for v in values])
        upper = _bound(fn, [_upper(v) for v in values])
        if lower is not None and upper is not None and compare(lower, upper) > 0:
            lower = upper = None
    return InvariantValue.unknown(f"{label} depends on {causes}", lower, upper)


def _unknown_sot(reason: str, o: InvariantValue) -> InvariantValue:
    return InvariantValue.unknown(reason, upper=o.value)


def _finite_tuple(o: int, h: int, w: int, sot: int) -> InvariantTuple:
    return InvariantTuple(Known(Ordinal.of(o)), Known(Ordinal.of(h)), Known(Ordinal.of(w)), Known(Ordinal.of(sot)))


EMPTY = _finite_tuple(0, 0, 0, 0)
SINGLETON_OF_EMPTY = _finite_tuple(1, 1, 1, 0)


def omega_factor_count(term: WpoTerm) -> Optional[int]:
    """k when the term is a cartesian product of k copies of omega, else None."""
    if isinstance(term, OrdinalLeaf) and term.value == OMEGA:
        return 1
    if isinstance(term, Cartesian):
        left, right = omega_factor_count(term.left), omega_factor_count(term.right)
        if left is not None and right is not None:
            return left + right
    return None


class InvariantEngine:
    """
    Bottom-up evaluator that records one trace entry per visited node.

    Attributes:
        settings: Guards for the brute-force oracle.
        trace: Records in post-order of the evaluated term.
    """

    def __init__(self, settings: Optional[SettingsData] = None):
        self.settings = settings or SettingsData()
        self.trace: List[TraceRecord] = []

    def evaluate(self, term: WpoTerm) -> InvariantTuple:
        child_results = [self.evaluate(child) for child in term.children()]
        rule, result = self._apply_rule(term, child_results)
        self.trace.append(TraceRecord(term.render(), rule, result))
        logger.debug("%s -> %s by %s", term.render(), result, rule)
        return result

    def _apply_rule(self, term: WpoTerm, children: List[InvariantTuple]) -> Tuple[str, InvariantTuple]:
        if isinstance(term, OrdinalLeaf):
            return RULE_ORDINAL, self._ordinal_leaf(term.value)
        if isinstance(term, GammaLeaf):
            k = term.k
            return RULE_ANTICHAIN, _finite_tuple(k, 1, k, k - 1) if k else EMPTY
        if isinstance(term, PosetLeaf):
            return RULE_ORACLE, self._poset_leaf(term)
        if isinstance(term, HLeaf):
            return RULE_H, InvariantTuple(Known(OMEGA), Known(OMEGA), Known(OMEGA), Known(OMEGA))
        if isinstance(term, DisjointSum):
            return RULE_DISJOINT_SUM, self._disjoint_sum(*children)
        if isinstance(term, LexSum):
            return RULE_LEX_SUM, self._lex_sum(*children)
        if isinstance(term, Cartesian):
            return self._cartesian(term, *children)
        if isinstance(term, LexProduct):
            return RULE_LEX_PRODUCT, self._lex_product(*children)
        if isinstance(term, MultisetEmb):
            if children[0].o.value.is_zero:
                return RULE_EMPTY_MULTISET, SINGLETON_OF_EMPTY
            result = self._multiset_emb(children[0])
            return (RULE_MULTISET_EMB_LINEAR if result.sot.is_known else RULE_MULTISET_EMB), result
        if isinstance(term, MultisetOrd):
            if children[0].o.value.is_zero:
                return RULE_EMPTY_MULTISET, SINGLETON_OF_EMPTY
            result = self._multiset_ord(children[0])
            return (RULE_MULTISET_ORD_LINEAR if result.sot.is_known else RULE_MULTISET_ORD), result
        raise TypeError(f"unsupported term node {type(term).__name__}")

    @staticmethod
    def _ordinal_leaf(alpha: Ordinal) -> InvariantTuple:
        width = ZERO if alpha.is_zero else ONE
        return InvariantTuple(Known(alpha), Known(alpha), Known(width), Known(ZERO))

    def _poset_leaf(self, term: PosetLeaf) -> InvariantTuple:
        o, h, w = rank_invariants(term.poset, self.settings.rank_guard)
        sot, witness = sot_brute_force(term.poset, self.settings.sot_guard)
        logger.debug("safe subset of %s: %s", term.render(), witness)
        return _finite_tuple(o, h, w, sot)

    @staticmethod
    def _disjoint_sum(left: InvariantTuple, right: InvariantTuple) -> InvariantTuple:
        o = Known(nat_sum(left.o.value, right.o.value))
        h = derive("h of disjoint sum", _max, [("h(left)", left.h), ("h(right)", right.h)])
        w = derive("w of disjoint sum", nat_sum, [("w(left)", left.w), ("w(right)", right.w)])
        if left.o.value.is_zero:
            sot = right.sot
        elif right.o.value.is_zero:
            sot = left.sot
        else:
            sot = Known(add(ONE, nat_sum(minus_one(left.o.value), minus_one(right.o.value))))
        return InvariantTuple(o, h, w, sot)

    @staticmethod
    def _lex_sum(left: InvariantTuple, right: InvariantTuple) -> InvariantTuple:
        o = Known(add(left.o.value, right.o.value))
        h = derive("h of lexicographic sum", add, [("h(left)", left.h), ("h(right)", right.h)])
        w = derive("w of lexicographic sum", _max, [("w(left)", left.w), ("w(right)", right.w)])
        if left.o.value.is_zero:
            sot = right.sot
        elif right.o.value.is_zero:
            sot = left.sot
        else:
            sot = derive("sot of lexicographic sum", add, [("sot(left)", left.sot), ("sot(right)", right.sot)])
        return InvariantTuple(o, h, w, sot)

    def _cartesian(self, term: Cartesian, left: InvariantTuple, right: InvariantTuple) -> Tuple[str, InvariantTuple]:
        if left.o.value.is_zero or right.o.value.is_zero:
            return RULE_CARTESIAN, EMPTY
        o = Known(nat_prod(left.o.value, right.o.value))
        h = derive(
            "h of cartesian product", h_sup_product, [("h(left)", left.h), ("h(right)", right.h)], monotone=False
        )
        sot = _unknown_sot("safe order type of cartesian product not stated", o)
        factors = omega_factor_count(term)
        if factors is not None:
            w = Known(omega_power(Ordinal.of(factors - 1)))
            return RULE_CARTESIAN_OMEGA, InvariantTuple(o, h, w, sot)
        w = InvariantValue.unknown(CARTESIAN_WIDTH_REASON)
        return RULE_CARTESIAN, InvariantTuple(o, h, w, sot)

    @staticmethod
    def _lex_product(left: InvariantTuple, right: InvariantTuple) -> InvariantTuple:
        if left.o.value.is_zero or right.o.value.is_zero:
            return EMPTY
        o = Known(multiply(left.o.value, right.o.value))
        h = InvariantValue.unknown("height of lexicographic product not stated")
        w = derive("w of lexicographic product", hess_prod, [("w(left)", left.w), ("w(right)", right.w)])
        sot = _unknown_sot("safe order type of lexicographic product not stated", o)
        return InvariantTuple(o, h, w, sot)

    @staticmethod
    def _multiset_emb(child: InvariantTuple) -> InvariantTuple:
        hat = hat_transform(child.o.value)
        o = Known(omega_power(hat))
        h = derive("h of Md", h_star, [("h(X)", child.h)])
        w = Known(omega_power(minus_one(hat)))
        if child.o.value == ONE:
            sot = Known(ZERO)
        else:
            sot = _unknown_sot("safe order type of Md(X) not stated", o)
        return InvariantTuple(o, h, w, sot)

    @staticmethod
    def _multiset_ord(child: InvariantTuple) -> InvariantTuple:
        o = Known(omega_power(child.o.value))
        h = derive("h of Mr", omega_power, [("h(X)", child.h)])
        w = derive("w of Mr", omega_power, [("sot(X)", child.sot)])
        if child.w.is_known and child.w.value == ONE:
            sot = Known(ZERO)
        else:
            sot = _unknown_sot("safe order type of Mr(X) not stated for non-linear X", o)
        return InvariantTuple(o, h, w, sot)


def fold_finite(term: WpoTerm, limit: int = 8) -> WpoTerm:
    """
    Replace every maximal sum or product of finite leaves by one explicit
    poset, as long as the result has at most ``limit`` elements.
    """
    if isinstance(term, Binary):
        left, right = fold_finite(term.left, limit), fold_finite(term.right, limit)
        left_poset, right_poset = explicit_poset(left), explicit_poset(right)
        if left_poset is not None and right_poset is not None:
            if isinstance(term, (DisjointSum, LexSum)):
                size = len(left_poset) + len(right_poset)
            else:
                size = len(left_poset) * len(right_poset)
            if size <= limit:
                folded = compose(term.kind, left_poset, right_poset)
                return PosetLeaf(folded, f"fold({term.render()})")
            logger.debug("not folding %s: %d elements > fold limit %d", term.render(), size, limit)
        return type(term)(left, right)
    if isinstance(term, (MultisetEmb, MultisetOrd)):
        return type(term)(fold_finite(term.child, limit))
    return term


def invariants(
    term: WpoTerm, settings: Optional[SettingsData] = None, fold: bool = True
) -> Tuple[InvariantTuple, List[TraceRecord]]:
    """
    Evaluate the four invariants of a term.

    Returns:
        The invariant tuple and the derivation trace, one record per node of
        the (folded, when ``fold``) term in post-order.
    """
    settings = settings or SettingsData()
    if fold:
        term = fold_finite(term, settings.fold_limit)
    engine = InvariantEngine(settings)
    result = engine.evaluate(term)
    return result, engine.trace


@dataclass(frozen=True)
class RelationCheck:
    """
    One comparison between Mr(t) and Md(t).

    Attributes:
        name: e.g. ``o(Mr) <= o(Md)``.
        holds: True or False, or None when a side is unknown.
        left: Rendering of the Mr side.
        right: Rendering of the Md side.
    """
    name: str
    holds: Optional[bool]
    left: str
    right: str


def consistency_relations(term: WpoTerm, settings: Optional[SettingsData] = None) -> List[RelationCheck]:
    """
    Compare the multiset ordering against the multiset embedding over the
    same term: o(Mr) <= o(Md), w(Mr) <= w(Md) and h(Mr) >= h(Md).
    """
    ordering, _ = invariants(MultisetOrd(term), settings)
    embedding, _ = invariants(MultisetEmb(term), settings)
    checks = []
    for name, expected in (("o", -1), ("w", -1), ("h", 1)):
        r, d = ordering.get(name), embedding.get(name)
        symbol = "<=" if expected < 0 else ">="
        holds = None
        if r.is_known and d.is_known:
            order = compare(r.value, d.value)
            holds = order == 0 or order == expected
        checks.append(RelationCheck(f"{name}(Mr) {symbol} {name}(Md)", holds, str(r), str(d)))
    return checks


def height_width_clause(result: InvariantTuple) -> Optional[bool]:
    """
    When o is multiplicatively indecomposable and h < o, the width equals o.

    Returns None when o, h or w is unknown or the hypothesis does not apply.
    """
    o, h, w = result.o, result.h, result.w
    if not (o.is_known and h.is_known and w.is_known):
        return None
    if not classify(o.value).multiplicatively_indecomposable or compare(h.value, o.value) >= 0:
        return None
    return w.value == o.value


def tuple_is_bounded(result: InvariantTuple) -> bool:
    """Known h, w and sot never exceed a known o."""
    if not result.o.is_known:
        return True
    return all(
        compare(result.get(name).value, result.o.value) <= 0
        for name in ("h", "w", "sot")
        if result.get(name).is_known
    )
