import unittest
from unittest.mock import Mock

from wpo_invariants.exceptions import QuerySyntaxError
from wpo_invariants.ordinal import OMEGA, Ordinal
from wpo_invariants.ordinal_parser import parse_ordinal
from wpo_invariants.poset import FinitePoset
from wpo_invariants.query_parser import parse_query
from wpo_invariants.terms import (
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
)


class TestParseQuery(unittest.TestCase):

    def test_function_and_term(self):
        query = parse_query("w(Md(Gamma(3)))")
        self.assertEqual(query.function, "w")
        self.assertEqual(query.term, MultisetEmb(GammaLeaf(3)))
        self.assertEqual(query.text, "w(Md(Gamma(3)))")

    def test_ordinal_literal(self):
        self.assertEqual(parse_query("h(Mr(w^w))").term, MultisetOrd(OrdinalLeaf(parse_ordinal("w^w"))))

    def test_ordinal_runs_are_merged(self):
        self.assertEqual(parse_query("o(w^2 + w + 3)").term, OrdinalLeaf(parse_ordinal("w^2 + w + 3")))
        self.assertEqual(parse_query("o(1 + w)").term, OrdinalLeaf(OMEGA))

    def test_zero(self):
        self.assertEqual(parse_query("all(0)").term, OrdinalLeaf(Ordinal.of(0)))

    def test_precedence(self):
        term = parse_query("o(H + Gamma(1) U Gamma(2) x w)").term
        expected = LexSum(HLeaf(), DisjointSum(GammaLeaf(1), Cartesian(GammaLeaf(2), OrdinalLeaf(OMEGA))))
        self.assertEqual(term, expected)

    def test_left_associative_products(self):
        term = parse_query("o(w . 2 . H)").term
        self.assertEqual(term, LexProduct(LexProduct(OrdinalLeaf(OMEGA), OrdinalLeaf(Ordinal.of(2))), HLeaf()))

    def test_parentheses(self):
        term = parse_query("sot((Gamma(2) x Gamma(2)) . H)").term
        self.assertEqual(term, LexProduct(Cartesian(GammaLeaf(2), GammaLeaf(2)), HLeaf()))

    def test_ordinal_sum_in_parentheses_stays_one_leaf(self):
        term = parse_query("o(Gamma(2) x (w + 1))").term
        self.assertEqual(term, Cartesian(GammaLeaf(2), OrdinalLeaf(parse_ordinal("w + 1"))))

    def test_render_round_trip(self):
        for text in ("Md(Gamma(3))", "H + (Gamma(2) x w)", "Mr((w + 1) . H)", "Gamma(1) U (Gamma(2) U H)"):
            with self.subTest(text=text):
                term = parse_query(f"o({text})").term
                self.assertEqual(parse_query(f"o({term.render()})").term, term)

    def test_poset_leaf_uses_source(self):
        poset = FinitePoset.chain(2)
        source = Mock(return_value=poset)
        term = parse_query("all(Md(poset:fixtures/chain.json))", poset_source=source).term
        source.assert_called_once_with("fixtures/chain.json")
        self.assertEqual(term, MultisetEmb(PosetLeaf(poset, "poset:fixtures/chain.json")))


class TestQueryErrors(unittest.TestCase):

    def assertSyntaxError(self, text, position):
        with self.assertRaises(QuerySyntaxError) as ctx:
            parse_query(text)
        self.assertEqual(ctx.exception.position, position)
        return ctx.exception

    def test_unknown_function(self):
        error = self.assertSyntaxError("q(H)", 0)
        self.assertIn("'sot'", error.expected)

    def test_mixed_products_need_parentheses(self):
        self.assertSyntaxError("o(w x 2 . H)", 8)

    def test_missing_parenthesis(self):
        error = self.assertSyntaxError("o(Gamma(2)", 10)
        self.assertIsNone(error.found)

    def test_trailing_input(self):
        self.assertSyntaxError("o(H) H", 5)

    def test_bad_ordinal(self):
        self.assertSyntaxError("o(w^)", 4)

    def test_missing_gamma_argument(self):
        self.assertSyntaxError("o(Gamma())", 8)

    def test_empty_poset_path(self):
        self.assertSyntaxError("o(poset:)", 8)


if __name__ == "__main__":
    unittest.main()
