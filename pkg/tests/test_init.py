import os
import subprocess
import sys
import unittest
import wpo_invariants
from wpo_invariants import FinitePoset, Ordinal, invariants, parse_query

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
MODULES = [
    "wpo_invariants.ordinal",
    "wpo_invariants.ordinal_parser",
    "wpo_invariants.poset",
    "wpo_invariants.multiset",
    "wpo_invariants.oracle",
    "wpo_invariants.terms",
    "wpo_invariants.algebra",
    "wpo_invariants.verify",
    "wpo_invariants.main",
]


class TestPackageImport(unittest.TestCase):

    def test_import(self):
        self.assertIsInstance(FinitePoset, type)
        self.assertIsInstance(Ordinal, type)
        self.assertTrue(callable(invariants))
        self.assertTrue(callable(parse_query))

    def test_version(self):
        self.assertEqual(wpo_invariants.__version__, "0.1.0")

    def test_public_names(self):
        for name in wpo_invariants.__all__:
            self.assertTrue(hasattr(wpo_invariants, name), name)

    def test_fresh_interpreter_import(self):
        for module in MODULES:
            with self.subTest(module=module):
                completed = subprocess.run(
                    [sys.executable, "-c", f"import {module}"],
                    cwd=ROOT,
                    capture_output=True,
                    text=True,
                )
                self.assertEqual(completed.returncode, 0, completed.stderr)

    def test_module_constants(self):
        from wpo_invariants.ordinal import OMEGA, ONE, ZERO

        self.assertEqual((str(ZERO), str(ONE), str(OMEGA)), ("0", "1", "w"))


if __name__ == "__main__":
    unittest.main()
