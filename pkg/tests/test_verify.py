import unittest
from unittest.mock import patch

from wpo_invariants.exceptions import ConfigError
from wpo_invariants.models import LemmaReport, SettingsData, VerifyConfig
from wpo_invariants.verify import (
    LEMMA_IDS,
    LEMMA_SAMPLES,
    MULTISET_ORDER_TYPES,
    ORDINALS_PER_SAMPLE,
    distinct_posets,
    run_verification,
)


def run(suite, **kwargs):
    return run_verification(VerifyConfig(suite, **kwargs), SettingsData())


class TestDistinctPosets(unittest.TestCase):

    def test_counts_isomorphism_classes(self):
        self.assertEqual(len(distinct_posets(3)), 9)
        self.assertEqual(len(distinct_posets(0)), 1)


class TestSuites(unittest.TestCase):

    def assertPassed(self, report):
        failed = [r.to_dict() for r in report.results if r.blocking and not r.passed]
        self.assertTrue(report.passed, failed)

    def test_residuals(self):
        report = run("residuals", max_size=3)
        self.assertPassed(report)
        names = {r.name for r in report.results}
        self.assertEqual(names, {"rank-invariants", "height-width", "stripped-idempotent", "linear-extension-count"})
        self.assertTrue(all(r.instances > 0 for r in report.results))

    def test_sot(self):
        report = run("sot", max_size=3, samples=5)
        self.assertPassed(report)
        cartesian = next(r for r in report.results if r.name == "cartesian-lower-bound")
        self.assertFalse(cartesian.blocking)

    def test_multiset_iso(self):
        report = run("multiset-iso", max_size=3, size_bound=2)
        self.assertPassed(report)
        names = [r.name for r in report.results]
        for lemma in LEMMA_IDS:
            self.assertIn(lemma, names)
        control = next(r for r in report.results if r.name == "emb-plus-iso-negative-control")
        self.assertEqual((control.instances, control.failures), (1, 0))

    def test_ordinal_arith(self):
        report = run("ordinal-arith", samples=5)
        self.assertPassed(report)
        render_parse = next(r for r in report.results if r.name == "render-parse")
        self.assertEqual(render_parse.instances, 5 * ORDINALS_PER_SAMPLE)

    def test_default_ordinal_draws(self):
        self.assertGreaterEqual(SettingsData().samples * ORDINALS_PER_SAMPLE, 1000)

    def test_relations(self):
        report = run("relations", samples=10)
        self.assertPassed(report)
        printed = next(r for r in report.results if r.name == "printed-values")
        self.assertEqual(printed.instances, 7)
        multiset_o = next(r for r in report.results if r.name == "multiset-order-types")
        self.assertEqual((multiset_o.instances, multiset_o.failures), (10, 0))

    def test_multiset_order_types_cover_epsilon_terms(self):
        self.assertEqual(len(MULTISET_ORDER_TYPES), 10)
        with_epsilon = [text for text, _ in MULTISET_ORDER_TYPES if "eps" in text]
        self.assertGreaterEqual(len(with_epsilon), 4)
        self.assertTrue(any(text.startswith("o(Mr(") for text in with_epsilon))
        self.assertTrue(any(text.startswith("o(Md(") for text in with_epsilon))

    def test_same_seed_same_report(self):
        first = [r.to_dict() for r in run("relations", samples=10, seed=5).results]
        second = [r.to_dict() for r in run("relations", samples=10, seed=5).results]
        self.assertEqual(first, second)


class TestLemmaCoverage(unittest.TestCase):

    def setUp(self):
        self.calls = []

        def record(lemma, a, b, k):
            self.calls.append((lemma, len(a), len(b), k))
            return LemmaReport(lemma, {}, True)

        patcher = patch("wpo_invariants.verify.check_transformation_lemma", new=record)
        patcher.start()
        self.addCleanup(patcher.stop)

    def test_every_pair_of_small_posets(self):
        run("multiset-iso", max_size=6, size_bound=3)
        for lemma in LEMMA_IDS:
            at_bound = [(m, n) for name, m, n, k in self.calls if name == lemma and k == 3]
            self.assertEqual(len(at_bound), 81)
            self.assertIn((3, 3), at_bound)

    def test_sampled_pairs_at_larger_bound(self):
        report = run("multiset-iso", max_size=6, size_bound=3)
        for lemma in LEMMA_IDS:
            larger = [c for c in self.calls if c[0] == lemma and c[3] == 4]
            self.assertEqual(len(larger), LEMMA_SAMPLES)
            row = next(r for r in report.results if r.name == f"{lemma}-k4-sampled")
            self.assertEqual(row.instances, LEMMA_SAMPLES)

    def test_sample_follows_seed(self):
        run("multiset-iso", max_size=6, size_bound=3, seed=9)
        first = [c for c in self.calls if c[3] == 4]
        self.calls.clear()
        run("multiset-iso", max_size=6, size_bound=3, seed=9)
        self.assertEqual([c for c in self.calls if c[3] == 4], first)


class TestConfigValidation(unittest.TestCase):

    def test_rejects_bad_configs(self):
        for config in (
            VerifyConfig("everything"),
            VerifyConfig("sot", max_size=12),
            VerifyConfig("sot", max_size=-1),
            VerifyConfig("sot", samples=0),
            VerifyConfig("multiset-iso", size_bound=-1),
        ):
            with self.subTest(config=config):
                with self.assertRaises(ConfigError):
                    run_verification(config, SettingsData())

    def test_guard_from_settings(self):
        with self.assertRaises(ConfigError):
            run_verification(VerifyConfig("residuals", max_size=4), SettingsData(rank_guard=3))


if __name__ == "__main__":
    unittest.main()
