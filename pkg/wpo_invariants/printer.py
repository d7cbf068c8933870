from abc import ABC, abstractmethod
import json
import sys
from typing import Any, Dict, List, Optional, TextIO

from tabulate import tabulate

from .models import INVARIANT_NAMES, InvariantTuple, Query, TraceRecord, VerifyReport


class PrinterAbstract(ABC):
    """
    Abstract base class for rendering evaluation results and verification
    reports. Subclasses decide the format; all output goes to ``stream``.
    """

    def __init__(self, stream: Optional[TextIO] = None):
        self.stream = stream or sys.stdout

    @abstractmethod
    def print_evaluation(self, query: Query, result: InvariantTuple, trace: List[TraceRecord], show_trace: bool):
        """
        Print the answer to one query.

        Args:
            query: The parsed query.
            result: The invariants of the query's term.
            trace: Derivation records, one per evaluated node.
            show_trace: Whether to include the derivation.
        """
        pass

    @abstractmethod
    def print_report(self, report: VerifyReport):
        pass


def _trace_row(record: TraceRecord) -> List[str]:
    return [record.node, record.rule] + [str(record.result.get(name)) for name in INVARIANT_NAMES]


class PlainPrinter(PrinterAbstract):
    """
    Human-readable output: the value (or ``unknown: ...``) on the first
    lines, then an optional derivation table in tabulate's plain format.
    """

    def print_evaluation(self, query: Query, result: InvariantTuple, trace: List[TraceRecord], show_trace: bool):
        if query.function == "all":
            for name in INVARIANT_NAMES:
                print(f"{name}: {result.get(name)}", file=self.stream)
        else:
            print(result.get(query.function), file=self.stream)
        if show_trace:
            print(tabulate([_trace_row(r) for r in trace], tablefmt="plain"), file=self.stream)

    def print_report(self, report: VerifyReport):
        headers = ["Suite", "Property", "Instances", "Failures", "Blocking", "Counterexample"]
        rows = [
            [r.suite, r.name, r.instances, r.failures, "yes" if r.blocking else "no", r.counterexample or ""]
            for r in report.sorted_results()
        ]
        print(tabulate(rows, headers=headers, tablefmt="grid"), file=self.stream)
        print("PASS" if report.passed else "FAIL", file=self.stream)


class JsonPrinter(PrinterAbstract):
    """One JSON document per call, keys sorted, for byte-stable output."""

    def _dump(self, document: Dict[str, Any]):
        print(json.dumps(document, sort_keys=True, indent=2), file=self.stream)

    def print_evaluation(self, query: Query, result: InvariantTuple, trace: List[TraceRecord], show_trace: bool):
        document: Dict[str, Any] = {"query": query.text, "function": query.function}
        if query.function == "all":
            known = all(result.get(name).is_known for name in INVARIANT_NAMES)
            document["status"] = "known" if known else "unknown"
            document["value"] = {name: result.get(name).to_dict() for name in INVARIANT_NAMES}
        else:
            document.update(result.get(query.function).to_dict())
        if show_trace:
            document["trace"] = [
                dict(zip(("node", "rule") + INVARIANT_NAMES, _trace_row(record))) for record in trace
            ]
        self._dump(document)

    def print_report(self, report: VerifyReport):
        config = report.config
        self._dump({
            "suite": config.suite,
            "seed": config.seed,
            "max_size": config.max_size,
            "samples": config.samples,
            "size_bound": config.size_bound,
            "passed": report.passed,
            "results": [r.to_dict() for r in report.sorted_results()],
        })


def get_printer(json_output: bool, stream: Optional[TextIO] = None) -> PrinterAbstract:
    """
    Factory returning the printer for the requested format.

    Args:
        json_output: True for ``JsonPrinter``, False for ``PlainPrinter``.
        stream: Destination; standard output by default.
    """
    if json_output:
        return JsonPrinter(stream)
    else:
        return PlainPrinter(stream)
