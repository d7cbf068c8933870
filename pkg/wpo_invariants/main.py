import argparse
import logging
import sys
from abc import ABC, abstractmethod
from typing import List, Optional

from . import __version__
from .algebra import invariants
from .exceptions import WpoError
from .models import INVARIANT_NAMES, SUITES, SettingsData, VerifyConfig
from .printer import get_printer
from .query_parser import parse_query
from .settings_loader import JsonSettingsLoader
from .verify import run_verification

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNKNOWN = 2
EXIT_VERIFY_FAILED = 3


class CommandAbstract(ABC):
    """
    Abstract base class for a CLI subcommand.

    A command receives the loaded settings and the parsed arguments, writes
    its result to standard output and returns the process exit code.
    """

    def __init__(self, settings: SettingsData):
        self.settings = settings

    @abstractmethod
    def run(self, args: argparse.Namespace) -> int:
        """
        Execute the command.

        Returns:
            int: The exit code.

        Raises:
            WpoError: On invalid input; the caller maps it to exit code 1.
        """
        pass


class EvalCommand(CommandAbstract):
    """Evaluates one query such as ``w(Md(Gamma(3)))``."""

    def run(self, args: argparse.Namespace) -> int:
        query = parse_query(args.query)
        result, trace = invariants(query.term, self.settings)
        get_printer(args.json).print_evaluation(query, result, trace, args.trace)
        names = INVARIANT_NAMES if query.function == "all" else (query.function,)
        if all(result.get(name).is_known for name in names):
            return EXIT_OK
        return EXIT_UNKNOWN


class VerifyCommand(CommandAbstract):
    """Runs verification suites; exits 3 when any blocking property fails."""

    def run(self, args: argparse.Namespace) -> int:
        config = VerifyConfig(
            suite=args.suite,
            max_size=self.settings.max_size if args.max_size is None else args.max_size,
            samples=self.settings.samples if args.samples is None else args.samples,
            seed=self.settings.seed if args.seed is None else args.seed,
            size_bound=self.settings.size_bound if args.size_bound is None else args.size_bound,
        )
        report = run_verification(config, self.settings)
        get_printer(args.json).print_report(report)
        return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


COMMANDS = {"eval": EvalCommand, "verify": VerifyCommand}


class ArgumentParser(argparse.ArgumentParser):
    """Reports usage errors with exit code 1 like every other input error."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = ArgumentParser(
        prog="wpo-invariants",
        description="Compute ordinal invariants of well partial orders built from the wpo algebra.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--settings", metavar="PATH", help="JSON settings file (guards and verify defaults)")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="log progress on stderr; repeat for debug")
    subparsers = parser.add_subparsers(dest="command", required=True)

    eval_parser = subparsers.add_parser("eval", help="evaluate an invariant query")
    eval_parser.add_argument("query", help="e.g. 'w(Md(Gamma(3)))' or 'all(w^2 x Gamma(2))'")
    eval_parser.add_argument("--trace", action="store_true", help="print the per-node derivation")
    eval_parser.add_argument("--json", action="store_true", help="emit a JSON document")

    verify_parser = subparsers.add_parser("verify", help="run verification suites")
    verify_parser.add_argument("--suite", required=True, choices=SUITES)
    verify_parser.add_argument("--max-size", type=int, help="largest poset size checked")
    verify_parser.add_argument("--samples", type=int, help="random instances per sampled property")
    verify_parser.add_argument("--seed", type=int, help="seed for the random generators")
    verify_parser.add_argument("--size-bound", type=int, help="multiset size bound for the transformation checks")
    verify_parser.add_argument("--json", action="store_true", help="emit a JSON document")
    return parser


def configure_logging(verbosity: int):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")


def load_settings(path: Optional[str]) -> SettingsData:
    if path is None:
        return SettingsData()
    return JsonSettingsLoader(path).load_settings()


def main(argv: Optional[List[str]] = None) -> int:
    """
    Entry point of the ``wpo-invariants`` command.

    Args:
        argv: Arguments without the program name; ``sys.argv[1:]`` by default.

    Returns:
        int: 0 on a known value or a passing report, 1 on input errors,
        2 on an unknown value, 3 on a failing report.
    """
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        settings = load_settings(args.settings)
        logger.debug("settings: %s", settings)
        return COMMANDS[args.command](settings).run(args)
    except WpoError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
