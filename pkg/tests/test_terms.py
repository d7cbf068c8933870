import random
import unittest

from wpo_invariants.exceptions import PosetError
from wpo_invariants.ordinal import OMEGA, Ordinal
from wpo_invariants.ordinal_parser import parse_ordinal
from wpo_invariants.poset import FinitePoset
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
    explicit_poset,
    random_term,
)


class TestRender(unittest.TestCase):

    def test_leaves(self):
        self.assertEqual(OrdinalLeaf(OMEGA).render(), "w")
        self.assertEqual(OrdinalLeaf(parse_ordinal("w + 1")).render(), "(w + 1)")
        self.assertEqual(GammaLeaf(3).render(), "Gamma(3)")
        self.assertEqual(HLeaf().render(), "H")
        self.assertEqual(PosetLeaf(FinitePoset.chain(2)).render(), "poset<2>")

    def test_nested_binaries_are_parenthesised(self):
        term = LexSum(HLeaf(), Cartesian(GammaLeaf(2), OrdinalLeaf(OMEGA)))
        self.assertEqual(str(term), "H + (Gamma(2) x w)")
        self.assertEqual(MultisetOrd(DisjointSum(HLeaf(), HLeaf())).render(), "Mr(H U H)")
        self.assertEqual(MultisetEmb(LexProduct(OrdinalLeaf(OMEGA), HLeaf())).render(), "Md(w . H)")

    def test_gamma_needs_a_natural_number(self):
        for k in (-1, True, 2.0):
            with self.subTest(k=k):
                with self.assertRaises(PosetError):
                    GammaLeaf(k)


class TestWalk(unittest.TestCase):

    def test_post_order(self):
        term = MultisetEmb(LexSum(GammaLeaf(1), HLeaf()))
        self.assertEqual([node.render() for node in term.walk()], ["Gamma(1)", "H", "Gamma(1) + H", "Md(Gamma(1) + H)"])


class TestExplicitPoset(unittest.TestCase):

    def test_finite_leaves(self):
        self.assertEqual(explicit_poset(GammaLeaf(2)), FinitePoset.antichain(2))
        self.assertEqual(explicit_poset(OrdinalLeaf(Ordinal.of(3))), FinitePoset.chain(3))
        poset = FinitePoset.chain(1)
        self.assertIs(explicit_poset(PosetLeaf(poset)), poset)

    def test_other_nodes(self):
        self.assertIsNone(explicit_poset(OrdinalLeaf(OMEGA)))
        self.assertIsNone(explicit_poset(HLeaf()))
        self.assertIsNone(explicit_poset(DisjointSum(GammaLeaf(1), GammaLeaf(1))))


class TestRandomTerm(unittest.TestCase):

    def test_seeded(self):
        first = [random_term(random.Random(11), depth=3) for _ in range(3)]
        second = [random_term(random.Random(11), depth=3) for _ in range(3)]
        self.assertEqual(first, second)

    def test_finite_only(self):
        rng = random.Random(2)
        for _ in range(30):
            term = random_term(rng, depth=3, finite_only=True)
            for node in term.walk():
                self.assertNotIsInstance(node, (HLeaf, MultisetEmb, MultisetOrd))
                if isinstance(node, OrdinalLeaf):
                    self.assertTrue(node.value.is_finite)


if __name__ == "__main__":
    unittest.main()
