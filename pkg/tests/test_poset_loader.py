import json
import unittest
from unittest.mock import patch, mock_open

from wpo_invariants.exceptions import CycleError, PosetFileError
from wpo_invariants.poset import FinitePoset
from wpo_invariants.poset_loader import JsonPosetLoader, load_poset, poset_document


class TestJsonPosetLoader(unittest.TestCase):

    @patch("builtins.open", mock_open(read_data=json.dumps({
        "elements": ["a", "b", "c"],
        "le": [["a", "b"], ["b", "c"]]
    })))
    def test_load_closes_the_relation(self):
        poset = JsonPosetLoader("chain.json").load()
        self.assertEqual(poset.elements, ("a", "b", "c"))
        self.assertTrue(poset.lt("a", "c"))

    @patch("builtins.open", mock_open(read_data=json.dumps({"elements": [0, 1]})))
    def test_missing_le_means_antichain(self):
        self.assertEqual(load_poset("pair.json"), FinitePoset.antichain(2))

    @patch("builtins.open", mock_open(read_data=json.dumps({
        "elements": ["a", "b"],
        "le": [["a", "b"], ["b", "a"]]
    })))
    def test_cycle(self):
        with self.assertRaises(CycleError):
            load_poset("cycle.json")

    def test_malformed_documents(self):
        documents = [
            [1, 2],
            {"le": []},
            {"elements": "abc"},
            {"elements": [1.5]},
            {"elements": ["a"], "le": [["a"]]},
            {"elements": ["a"], "le": [["a", None]]},
        ]
        for document in documents:
            with self.subTest(document=document):
                with patch("builtins.open", mock_open(read_data=json.dumps(document))):
                    with self.assertRaises(PosetFileError):
                        load_poset("bad.json")

    @patch("builtins.open", mock_open(read_data="{not json"))
    def test_invalid_json(self):
        with self.assertRaises(PosetFileError):
            load_poset("bad.json")

    @patch("builtins.open", side_effect=FileNotFoundError("missing.json"))
    def test_missing_file(self, mock_file):
        with self.assertRaises(PosetFileError) as ctx:
            load_poset("missing.json")
        self.assertIn("missing.json", str(ctx.exception))

    def test_document_lists_strict_relations(self):
        document = poset_document(FinitePoset.chain(3))
        self.assertEqual(document, {"elements": [0, 1, 2], "le": [[0, 1], [0, 2], [1, 2]]})


if __name__ == "__main__":
    unittest.main()
