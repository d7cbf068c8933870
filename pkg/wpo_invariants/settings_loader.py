from abc import ABC, abstractmethod
from dataclasses import asdict
import json
import logging
from typing import Dict, Any
from .models import SettingsData

logger = logging.getLogger(__name__)


class SettingsLoader(ABC):
    """
    Abstract base class defining the contract for loading configuration settings.

    Concrete implementations read guards and verification defaults from a
    particular source and always return a complete ``SettingsData``.
    """

    @abstractmethod
    def load_settings(self) -> SettingsData:
        """
        Load configuration settings from a source.

        Returns:
            SettingsData: A complete settings object.
        """
        pass


class JsonSettingsLoader(SettingsLoader):
    """
    Settings loader for JSON documents.

    Missing keys take their defaults; an unreadable or malformed file logs a
    warning and falls back to the defaults entirely.

    Attributes:
        settings_file (str): Path to the JSON configuration file.
    """

    def __init__(self, settings_file: str):
        """
        Args:
            settings_file (str): Absolute or relative path to the JSON settings file.

        Example:
            loader = JsonSettingsLoader("config/wpo.json")
        """
        self.settings_file = settings_file

    def load_settings(self) -> SettingsData:
        """
        Load settings from the JSON file and convert them to SettingsData.

        Returns:
            SettingsData: Validated settings, or the defaults when the file
            cannot be read or parsed.
        """
        try:
            with open(self.settings_file, "r") as f:
                settings = json.load(f)
            data = self._validate_settings(settings)
        except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
            logger.warning("Error loading settings from %s: %s", self.settings_file, e)
            data = self._default_settings()

        return SettingsData(**data)

    def _validate_settings(self, settings: Dict[str, Any]) -> Dict[str, Any]:
        """
        Fill missing keys with defaults and drop keys that are not settings.

        Values that are not non-negative integers are replaced by the default
        with a warning.

        Example:
            Input: {'sot_guard': 7}
            Output: {'rank_guard': 9, 'sot_guard': 7, ..., 'size_bound': 3}
        """
        defaults = self._default_settings()
        if not isinstance(settings, dict):
            logger.warning("Settings in %s are not a JSON object; using defaults", self.settings_file)
            return defaults
        data = {}
        for key, default in defaults.items():
            value = settings.get(key, default)
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                logger.warning("Ignoring invalid value %r for %s in %s", value, key, self.settings_file)
                value = default
            data[key] = value
        unknown = sorted(set(settings) - set(defaults))
        if unknown:
            logger.warning("Ignoring unknown settings in %s: %s", self.settings_file, ", ".join(unknown))
        return data

    def _default_settings(self) -> Dict[str, Any]:
        """
        Returns:
            Dict[str, Any]: The defaults of every setting.
        """
        return asdict(SettingsData())
