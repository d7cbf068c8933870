import unittest
from unittest.mock import patch

from wpo_invariants.exceptions import ConfigError, ForeignElementError, GuardExceededError, OrdinalError
from wpo_invariants.multiset import Multiset
from wpo_invariants.oracle import (
    cartesian_sot_bound_check,
    chain_multiset_ordinal,
    check_augmentation,
    check_height_width,
    check_partial_order,
    check_size_monotone,
    check_substructure_monotone,
    check_transformation_lemma,
    delta_bound_check,
    h_sup_product_sup_check,
    hess_prod_limit_check,
    hess_prod_successor_check,
    is_safe_linearisation,
    rank_invariants,
    sot_brute_force,
    sot_by_extensions,
    sot_residual_check,
)
from wpo_invariants.ordinal import OMEGA, ONE, ZERO, Ordinal, add, hess_prod
from wpo_invariants.ordinal_parser import parse_ordinal
from wpo_invariants.poset import CompositionKind, FinitePoset, all_posets, compose


def n_poset():
    return FinitePoset.from_relations("abcd", [("a", "c"), ("b", "c"), ("b", "d")])


class TestRankInvariants(unittest.TestCase):

    def test_examples(self):
        self.assertEqual(rank_invariants(FinitePoset.antichain(3)), (3, 1, 3))
        self.assertEqual(rank_invariants(FinitePoset.chain(4)), (4, 4, 1))
        self.assertEqual(rank_invariants(n_poset()), (4, 2, 2))
        self.assertEqual(rank_invariants(FinitePoset.empty()), (0, 0, 0))

    def test_guard(self):
        with self.assertRaises(GuardExceededError) as ctx:
            rank_invariants(FinitePoset.chain(10), guard=9)
        self.assertEqual(ctx.exception.guard, "rank_guard")

    def test_height_width(self):
        for poset in (FinitePoset.antichain(3), FinitePoset.chain(4), n_poset()):
            self.assertTrue(check_height_width(poset))


class TestSafeOrderType(unittest.TestCase):

    def test_chain_is_zero_with_empty_witness(self):
        value, witness = sot_brute_force(FinitePoset.chain(4))
        self.assertEqual(value, 0)
        self.assertEqual(witness.subset, ())

    def test_antichains(self):
        self.assertEqual(sot_brute_force(FinitePoset.antichain(3))[0], 2)
        self.assertEqual(sot_brute_force(FinitePoset.antichain(4))[0], 3)

    def test_disjoint_chains(self):
        two_chains = compose(CompositionKind.DISJOINT_SUM, FinitePoset.chain(2), FinitePoset.chain(2))
        self.assertEqual(sot_brute_force(two_chains)[0], 3)

    def test_witness_is_a_safe_linearisation(self):
        for poset in (FinitePoset.antichain(3), n_poset()):
            value, witness = sot_brute_force(poset)
            self.assertEqual(len(witness.linearisation), value)
            self.assertEqual(set(witness.linearisation), set(witness.subset))
            self.assertTrue(is_safe_linearisation(poset, witness.linearisation))

    def test_is_safe_linearisation(self):
        gamma = FinitePoset.antichain(3)
        self.assertTrue(is_safe_linearisation(gamma, [0, 1]))
        self.assertFalse(is_safe_linearisation(gamma, [0, 1, 2]))
        self.assertFalse(is_safe_linearisation(FinitePoset.chain(2), [0]))
        self.assertTrue(is_safe_linearisation(FinitePoset.chain(2), [0], restrict_to_stripped=False))

    def test_extension_search_agrees(self):
        for n in range(4):
            for poset in all_posets(n):
                self.assertEqual(sot_by_extensions(poset), sot_brute_force(poset)[0], repr(poset))

    def test_guard(self):
        with self.assertRaises(GuardExceededError):
            sot_brute_force(FinitePoset.antichain(9), guard=8)

    def test_residual_identity(self):
        self.assertTrue(sot_residual_check(FinitePoset.chain(5)))
        self.assertTrue(sot_residual_check(FinitePoset.antichain(2)))
        for poset in all_posets(3):
            self.assertTrue(sot_residual_check(poset), repr(poset))

    def test_delta_bound(self):
        self.assertTrue(delta_bound_check(FinitePoset.antichain(4)))
        self.assertTrue(delta_bound_check(FinitePoset.chain(6)))

    def test_cartesian_bound_fails_on_the_grid(self):
        self.assertTrue(cartesian_sot_bound_check(FinitePoset.antichain(2), FinitePoset.antichain(2)))
        self.assertFalse(cartesian_sot_bound_check(FinitePoset.chain(2), FinitePoset.chain(2)))


class TestChainMultisetOrdinal(unittest.TestCase):

    def test_positional_rule(self):
        self.assertEqual(chain_multiset_ordinal(3, Multiset()), ZERO)
        self.assertEqual(chain_multiset_ordinal(3, Multiset.of(2, 0, 0)), parse_ordinal("w^2 + 2"))

    def test_foreign_element(self):
        with self.assertRaises(ForeignElementError):
            chain_multiset_ordinal(2, Multiset.of(2))


class TestTransformationLemmas(unittest.TestCase):

    def test_emb_sqcup(self):
        report = check_transformation_lemma("emb-sqcup", FinitePoset.chain(2), FinitePoset.antichain(2), 3)
        self.assertTrue(report.passed, report.detail)

    def test_r_sqcup_and_r_plus(self):
        for lemma in ("r-sqcup", "r-plus"):
            with self.subTest(lemma=lemma):
                report = check_transformation_lemma(lemma, FinitePoset.chain(2), FinitePoset.antichain(2), 2)
                self.assertTrue(report.passed, report.detail)

    def test_r_plus_with_empty_factor(self):
        report = check_transformation_lemma("r-plus", n_poset(), FinitePoset.empty(), 2)
        self.assertTrue(report.passed, report.detail)

    def test_emb_plus_aug(self):
        report = check_transformation_lemma("emb-plus-aug", FinitePoset.antichain(2), FinitePoset.antichain(2), 2)
        self.assertTrue(report.passed, report.detail)

    def test_emb_plus_iso_is_refuted(self):
        report = check_transformation_lemma("emb-plus-iso", FinitePoset.antichain(2), FinitePoset.antichain(2), 2)
        self.assertFalse(report.passed)
        self.assertEqual(len(report.counterexample), 2)

    def test_unknown_lemma(self):
        with self.assertRaises(ConfigError):
            check_transformation_lemma("nope", FinitePoset.chain(1), FinitePoset.chain(1), 1)


class TestMultisetOrderProperties(unittest.TestCase):

    def setUp(self):
        self.vee = FinitePoset.from_relations("abc", [("a", "b"), ("a", "c")])

    def test_partial_orders(self):
        for relation in ("emb", "r"):
            report = check_partial_order(self.vee, 2, relation)
            self.assertTrue(report.passed, report.detail)

    def test_augmentation_and_size(self):
        self.assertTrue(check_augmentation(self.vee, 2).passed)
        self.assertTrue(check_size_monotone(self.vee, 2).passed)

    def test_substructure(self):
        sub = self.vee.induced(["a", "b"])
        self.assertTrue(check_substructure_monotone(sub, self.vee, 2).passed)


class TestOrdinalOracles(unittest.TestCase):

    def test_hess_prod_limit(self):
        self.assertTrue(hess_prod_limit_check(parse_ordinal("w + 1"), OMEGA))
        self.assertTrue(hess_prod_limit_check(Ordinal.of(2), parse_ordinal("w^2")))
        self.assertTrue(hess_prod_limit_check(parse_ordinal("w*2 + 1"), parse_ordinal("w^2 + w")))
        self.assertTrue(hess_prod_limit_check(parse_ordinal("w^2"), parse_ordinal("w*2")))

    def test_hess_prod_limit_rejects_a_larger_bound(self):
        def inflated(shift):
            def product(a, b):
                value = hess_prod(a, b)
                return add(value, shift) if b == OMEGA else value
            return product

        for shift in (ONE, OMEGA):
            with self.subTest(shift=str(shift)):
                with patch("wpo_invariants.oracle.hess_prod", new=inflated(shift)):
                    self.assertFalse(hess_prod_limit_check(Ordinal.of(1), OMEGA))

    def test_hess_prod_limit_rejects_successor(self):
        with self.assertRaises(OrdinalError):
            hess_prod_limit_check(OMEGA, Ordinal.of(3))

    def test_hess_prod_successor(self):
        self.assertTrue(hess_prod_successor_check(parse_ordinal("w^2 + 1"), parse_ordinal("w + 4")))

    def test_h_sup_product(self):
        self.assertTrue(h_sup_product_sup_check(Ordinal.of(2), Ordinal.of(3)))
        self.assertTrue(h_sup_product_sup_check(OMEGA, OMEGA))
        self.assertTrue(h_sup_product_sup_check(parse_ordinal("w + 1"), OMEGA))
        self.assertTrue(h_sup_product_sup_check(parse_ordinal("w + 1"), parse_ordinal("w + 2")))


if __name__ == "__main__":
    unittest.main()
