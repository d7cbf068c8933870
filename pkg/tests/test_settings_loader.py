import unittest
from unittest.mock import patch, mock_open
import json
import tempfile
from wpo_invariants.settings_loader import JsonSettingsLoader
from wpo_invariants.models import SettingsData


class TestJsonSettingsLoader(unittest.TestCase):

    @patch("builtins.open", mock_open(read_data=json.dumps({
        "rank_guard": 7,
        "sot_guard": 6,
        "fold_limit": 4,
        "samples": 50,
        "seed": 1
    })))
    def test_load_settings_success(self):
        loader = JsonSettingsLoader("config/settings.json")
        settings_data = loader.load_settings()

        self.assertIsInstance(settings_data, SettingsData)
        self.assertEqual(settings_data.rank_guard, 7)
        self.assertEqual(settings_data.sot_guard, 6)
        self.assertEqual(settings_data.fold_limit, 4)
        self.assertEqual(settings_data.samples, 50)
        self.assertEqual(settings_data.seed, 1)

    @patch("builtins.open", mock_open(read_data=json.dumps({
        "sot_guard": 7
    })))
    def test_load_settings_with_missing_keys(self):
        loader = JsonSettingsLoader("config/settings.json")
        settings_data = loader.load_settings()

        self.assertEqual(settings_data.sot_guard, 7)
        self.assertEqual(settings_data.rank_guard, 9)
        self.assertEqual(settings_data.max_size, 6)
        self.assertEqual(settings_data.size_bound, 3)

    @patch("builtins.open", mock_open(read_data=json.dumps({
        "rank_guard": "big",
        "samples": -3,
        "fold_limit": True,
        "colour": "blue"
    })))
    def test_load_settings_ignores_invalid_values(self):
        loader = JsonSettingsLoader("config/settings.json")
        with self.assertLogs("wpo_invariants.settings_loader", level="WARNING") as logs:
            settings_data = loader.load_settings()

        self.assertEqual(settings_data, SettingsData())
        self.assertTrue(any("colour" in line for line in logs.output))

    @patch("builtins.open", mock_open(read_data="[1, 2]"))
    def test_load_settings_not_an_object(self):
        loader = JsonSettingsLoader("config/settings.json")
        with self.assertLogs("wpo_invariants.settings_loader", level="WARNING"):
            settings_data = loader.load_settings()

        self.assertEqual(settings_data, SettingsData())

    @patch("builtins.open", mock_open())
    @patch("json.load", side_effect=json.JSONDecodeError("Error", "", 0))
    def test_load_settings_json_decode_error(self, mock_json):
        loader = JsonSettingsLoader("config/settings.json")
        with self.assertLogs("wpo_invariants.settings_loader", level="WARNING"):
            settings_data = loader.load_settings()

        self.assertEqual(settings_data, SettingsData())  # Default settings are used

    @patch("builtins.open", side_effect=FileNotFoundError("config/settings.json"))
    def test_load_settings_file_not_found(self, mock_file):
        loader = JsonSettingsLoader("config/settings.json")
        with self.assertLogs("wpo_invariants.settings_loader", level="WARNING"):
            settings_data = loader.load_settings()

        self.assertEqual(settings_data.rank_guard, 9)  # Default setting is used
        self.assertEqual(settings_data.seed, 42)

    def test_load_settings_from_a_directory(self):
        with tempfile.TemporaryDirectory() as directory:
            loader = JsonSettingsLoader(directory)
            with self.assertLogs("wpo_invariants.settings_loader", level="WARNING"):
                settings_data = loader.load_settings()

        self.assertEqual(settings_data, SettingsData())

    @patch("builtins.open", side_effect=PermissionError("config/settings.json"))
    def test_load_settings_permission_denied(self, mock_file):
        loader = JsonSettingsLoader("config/settings.json")
        with self.assertLogs("wpo_invariants.settings_loader", level="WARNING"):
            settings_data = loader.load_settings()

        self.assertEqual(settings_data, SettingsData())

    @patch("builtins.open", mock_open())
    @patch("json.load", side_effect=UnicodeDecodeError("utf-8", b"\xff", 0, 1, "invalid start byte"))
    def test_load_settings_undecodable_bytes(self, mock_json):
        loader = JsonSettingsLoader("config/settings.json")
        with self.assertLogs("wpo_invariants.settings_loader", level="WARNING") as logs:
            settings_data = loader.load_settings()

        self.assertIn("invalid start byte", logs.output[0])
        self.assertEqual(settings_data, SettingsData())


if __name__ == "__main__":
    unittest.main()
