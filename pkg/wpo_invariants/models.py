from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .exceptions import ConfigError
from .ordinal import Ordinal

SUITES = ("residuals", "sot", "multiset-iso", "ordinal-arith", "relations", "all")
FUNCTIONS = ("o", "h", "w", "sot", "all")
INVARIANT_NAMES = ("o", "h", "w", "sot")


@dataclass
class SettingsData:
    """
    Tunable limits and verification defaults.

    Attributes:
        rank_guard: Largest poset handed to the memoized rank recursion.
        sot_guard: Largest poset handed to the safe-subset search.
        extension_guard: Largest poset whose linear extensions are enumerated.
        isomorphism_guard: Largest poset compared up to isomorphism.
        fold_limit: Largest explicit poset produced by constant folding.
        max_size: Default poset size bound for ``verify``.
        samples: Default number of random instances per sampled property.
        seed: Default seed for ``verify``.
        size_bound: Default multiset size bound for the transformation checks.
    """
    rank_guard: int = 9
    sot_guard: int = 8
    extension_guard: int = 10
    isomorphism_guard: int = 10
    fold_limit: int = 8
    max_size: int = 6
    samples: int = 200
    seed: int = 42
    size_bound: int = 3


@dataclass(frozen=True)
class InvariantValue:
    """
    Either a known ordinal or an unknown with a reason and optional bounds.

    Attributes:
        value: The ordinal when known.
        reason: Why the value is unknown; nested causes are joined with "; ".
        lower: Proven lower bound for an unknown value.
        upper: Proven upper bound for an unknown value.
    """
    value: Optional[Ordinal] = None
    reason: Optional[str] = None
    lower: Optional[Ordinal] = None
    upper: Optional[Ordinal] = None

    def __post_init__(self):
        if (self.value is None) == (self.reason is None):
            raise ValueError("an invariant value is either known or carries a reason")
        if self.lower is not None and self.upper is not None and self.upper < self.lower:
            raise ValueError(f"inconsistent bounds: {self.lower} > {self.upper}")

    @classmethod
    def known(cls, value: Ordinal) -> "InvariantValue":
        return cls(value=value)

    @classmethod
    def unknown(cls, reason: str, lower: Optional[Ordinal] = None, upper: Optional[Ordinal] = None) -> "InvariantValue":
        return cls(reason=reason, lower=lower, upper=upper)

    @property
    def is_known(self) -> bool:
        return self.value is not None

    @property
    def status(self) -> str:
        return "known" if self.is_known else "unknown"

    def bounds_text(self) -> str:
        parts = []
        if self.lower is not None:
            parts.append(f"lower={self.lower}")
        if self.upper is not None:
            parts.append(f"upper={self.upper}")
        return ", ".join(parts)

    def __str__(self) -> str:
        if self.is_known:
            return str(self.value)
        bounds = self.bounds_text()
        return f"unknown: {self.reason}" + (f" [{bounds}]" if bounds else "")

    def to_dict(self) -> Dict[str, Any]:
        if self.is_known:
            return {"status": "known", "value": str(self.value)}
        data: Dict[str, Any] = {"status": "unknown", "reason": self.reason}
        bounds = {}
        if self.lower is not None:
            bounds["lower"] = str(self.lower)
        if self.upper is not None:
            bounds["upper"] = str(self.upper)
        if bounds:
            data["bounds"] = bounds
        return data


@dataclass(frozen=True)
class InvariantTuple:
    o: InvariantValue
    h: InvariantValue
    w: InvariantValue
    sot: InvariantValue

    def get(self, name: str) -> InvariantValue:
        return getattr(self, name)

    def __str__(self) -> str:
        return ", ".join(f"{name}={self.get(name)}" for name in INVARIANT_NAMES)


@dataclass(frozen=True)
class TraceRecord:
    """One evaluated term node: its rendering, the rule key applied, the result."""
    node: str
    rule: str
    result: InvariantTuple


@dataclass(frozen=True)
class Query:
    function: str
    term: Any  # WpoTerm; typed loosely to keep models free of the term module
    text: str = ""


@dataclass(frozen=True)
class SafeSubsetWitness:
    """
    A safe subset with the linearisation that certifies it.

    Attributes:
        subset: The safe elements.
        linearisation: The subset listed from first to last position.
        checked_tuples: Number of (pivot set, element) safety constraints verified.
    """
    subset: Tuple[Any, ...]
    linearisation: Tuple[Any, ...]
    checked_tuples: int


@dataclass(frozen=True)
class LemmaReport:
    lemma: str
    parameters: Dict[str, Any]
    passed: bool
    counterexample: Optional[Tuple[Any, Any]] = None
    detail: str = ""

    def __post_init__(self):
        if not self.passed and self.counterexample is None:
            raise ValueError("a failing lemma report needs a counterexample")


@dataclass
class PropertyResult:
    """
    One row of a verification report.

    Attributes:
        suite: Suite that ran the property.
        name: Property name.
        instances: Number of instances checked.
        failures: Number of instances that failed.
        blocking: Whether a failure fails the run.
        counterexample: Rendering of the first failing instance.
    """
    suite: str
    name: str
    instances: int = 0
    failures: int = 0
    blocking: bool = True
    counterexample: Optional[str] = None

    def record(self, ok: bool, instance: Any = None):
        self.instances += 1
        if not ok:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = str(instance)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "property": self.name,
            "instances": self.instances,
            "failures": self.failures,
            "blocking": self.blocking,
            "counterexample": self.counterexample,
        }


@dataclass
class VerifyConfig:
    suite: str
    max_size: int = 6
    samples: int = 200
    seed: int = 42
    size_bound: int = 3

    def validate(self, settings: SettingsData):
        """
        Raises:
            ConfigError: On an unknown suite or limits outside the guards.
        """
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")
        limit = min(settings.rank_guard, settings.sot_guard)
        if not 0 <= self.max_size <= limit:
            raise ConfigError(f"--max-size must be between 0 and {limit}, got {self.max_size}")
        if self.samples < 1:
            raise ConfigError(f"--samples must be at least 1, got {self.samples}")
        if self.size_bound < 0:
            raise ConfigError(f"--size-bound must be natural, got {self.size_bound}")


@dataclass
class VerifyReport:
    config: VerifyConfig
    results: List[PropertyResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results if r.blocking)

    def sorted_results(self) -> List[PropertyResult]:
        return sorted(self.results, key=lambda r: (r.suite, r.name))
