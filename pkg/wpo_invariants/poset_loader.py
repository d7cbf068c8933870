import json
import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Tuple

from .exceptions import PosetFileError
from .poset import FinitePoset

logger = logging.getLogger(__name__)


class PosetLoader(ABC):
    """
    Abstract source of explicit finite posets.

    Concrete loaders read a document, check its shape and hand the element
    list and the asserted pairs to ``FinitePoset.from_relations``.
    """

    @abstractmethod
    def load(self) -> FinitePoset:
        """
        Returns:
            FinitePoset: The transitively closed, validated poset.

        Raises:
            PosetFileError: If the source cannot be read or is malformed.
            PosetError: If the relation is not a partial order.
        """
        pass


class JsonPosetLoader(PosetLoader):
    """
    Loader for JSON poset documents of the form::

        {"elements": ["a", "b", "c"], "le": [["a", "b"], ["b", "c"]]}

    Each ``le`` pair asserts first <= second; the closure is computed on load.

    Attributes:
        path (str): Location of the document.
    """

    def __init__(self, path: str):
        self.path = path

    def load(self) -> FinitePoset:
        try:
            with open(self.path, "r") as f:
                document = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise PosetFileError(f"cannot read poset file {self.path}: {e}") from e

        elements, pairs = self._validate_document(document)
        logger.debug("loaded %d elements and %d pairs from %s", len(elements), len(pairs), self.path)
        return FinitePoset.from_relations(elements, pairs)

    def _validate_document(self, document: Any) -> Tuple[List[Any], List[Tuple[Any, Any]]]:
        """
        Check the document shape: an object with an ``elements`` list of
        strings or integers and an optional ``le`` list of two-element lists.
        """
        if not isinstance(document, dict) or "elements" not in document:
            raise PosetFileError(f"{self.path}: expected an object with an 'elements' list")
        elements = document["elements"]
        if not isinstance(elements, list) or not all(_is_label(e) for e in elements):
            raise PosetFileError(f"{self.path}: 'elements' must be a list of strings or integers")
        pairs = document.get("le", [])
        if not isinstance(pairs, list) or not all(isinstance(p, list) and len(p) == 2 and all(_is_label(x) for x in p) for p in pairs):
            raise PosetFileError(f"{self.path}: 'le' must be a list of [smaller, larger] pairs")
        return elements, [tuple(p) for p in pairs]


def _is_label(value: Any) -> bool:
    return isinstance(value, str) or (isinstance(value, int) and not isinstance(value, bool))


def load_poset(path: str) -> FinitePoset:
    return JsonPosetLoader(path).load()


def poset_document(poset: FinitePoset) -> Dict[str, Any]:
    """The JSON document for a poset, listing its strict relations."""
    return {"elements": list(poset.elements), "le": [list(pair) for pair in poset.relations()]}
