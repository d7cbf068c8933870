__version__ = "0.1.0"

from .algebra import invariants
from .exceptions import WpoError
from .models import InvariantTuple, InvariantValue, SettingsData
from .ordinal import Ordinal
from .ordinal_parser import parse_ordinal, render_ordinal
from .poset import FinitePoset
from .query_parser import parse_query

__all__ = [
    "FinitePoset",
    "InvariantTuple",
    "InvariantValue",
    "Ordinal",
    "SettingsData",
    "WpoError",
    "invariants",
    "parse_ordinal",
    "parse_query",
    "render_ordinal",
]
