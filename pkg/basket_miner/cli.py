"""Command line interface for basket_miner."""

from __future__ import annotations

import argparse
from collections.abc import Sequence
import logging
from pathlib import Path
import sys

from .config import RunConfig
from .const import (
    DIRECTION_Q2T,
    DIRECTION_T2Q,
    DISCRETIZE_MODES,
    DOMAIN,
    EXIT_CONFIG_ERROR,
    EXIT_DATA_ERROR,
    EXIT_OK,
    EXIT_ORACLE_MISMATCH,
    INTEREST_MODES,
    OUTPUT_FORMATS,
    TAXONOMY_INTERVAL_MODES,
)
from .coordinator import MiningCoordinator
from .exceptions import DataError, InvalidConfigError
from .output import format_rules

_LOGGER: logging.Logger = logging.getLogger(__package__)

# Namespace entries that are not run options
_CLI_ONLY = ("command", "verbose", "output")


def _add_thresholds(parser: argparse.ArgumentParser, confidence: bool = True) -> None:
    parser.add_argument(
        "--min-support", help='minimum support, as "0.3" or "30%%"')
    if confidence:
        parser.add_argument("--min-confidence", help="minimum confidence")


def _add_discretization(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--discretize", choices=DISCRETIZE_MODES, help="partitioning of quantified items")
    parser.add_argument("--partitions", type=int, help="partition count override")
    parser.add_argument(
        "--partitioning", help="saved partitioning export to use instead of partitioning")
    parser.add_argument(
        "--partial-completeness", "--K", dest="partial_completeness",
        help="partial completeness level K > 1 deriving the partition count")
    parser.add_argument("--max-support", help="maximum support of merged intervals")


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser with one subcommand per operation."""
    parser = argparse.ArgumentParser(
        prog=DOMAIN,
        description="Association rule mining over basket files.")
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="log progress to stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    mine = commands.add_parser(
        "mine", help="mine association rules", argument_default=argparse.SUPPRESS)
    mine.add_argument("input", help="basket file")
    _add_thresholds(mine)
    _add_discretization(mine)
    mine.add_argument("--taxonomy", help="is-a edge list for generalized rules")
    mine.add_argument(
        "--taxonomy-intervals", choices=TAXONOMY_INTERVAL_MODES,
        help="mine a tree taxonomy as intervals of its numbered leaves")
    mine.add_argument("--interest", choices=INTEREST_MODES, help="rule screening")
    mine.add_argument("--chi2-threshold", help="chi-squared significance cutoff")
    mine.add_argument("--bucket-count", type=int, help="hash tree fan-out")
    mine.add_argument("--leaf-split-threshold", type=int, help="hash tree leaf capacity")
    mine.add_argument(
        "--naive-counting", action="store_true", help="count without the hash tree")
    mine.add_argument("--format", choices=OUTPUT_FORMATS, help="report format")
    mine.add_argument("--threads", type=int, help="counting workers")

    discretize = commands.add_parser(
        "discretize", help="report the partitioning of quantified items",
        argument_default=argparse.SUPPRESS)
    discretize.add_argument("input", help="basket file")
    _add_thresholds(discretize, confidence=False)
    _add_discretization(discretize)

    transform = commands.add_parser(
        "transform", help="convert between quantities and taxonomies",
        argument_default=argparse.SUPPRESS)
    transform.add_argument("input", nargs="?", help="basket file")
    transform.add_argument(
        "--direction", choices=(DIRECTION_Q2T, DIRECTION_T2Q), required=True,
        help="q2t: quantities to a taxonomy; t2q: taxonomy to numbered leaves")
    transform.add_argument("--taxonomy", help="is-a edge list (t2q)")
    transform.add_argument(
        "--bisect", action="store_true", help="split partitions by recursive halving")
    _add_thresholds(transform, confidence=False)
    _add_discretization(transform)

    oracle = commands.add_parser(
        "oracle-check", help="compare the miners against brute force",
        argument_default=argparse.SUPPRESS)
    oracle.add_argument("input", help="basket file")
    _add_thresholds(oracle)
    oracle.add_argument("--taxonomy", help="also check generalized mining")
    oracle.add_argument("--random-trials", type=int, help="extra random databases")
    oracle.add_argument("--seed", type=int, help="seed of the random databases")

    for subparser in (mine, discretize, transform, oracle):
        subparser.add_argument("-o", "--output", help="write the report to a file")
    return parser


def _write(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def _lines(lines: list[str]) -> str:
    return "".join(f"{line}\n" for line in lines)


def run(args: argparse.Namespace) -> int:
    """Execute a parsed command and return the exit code."""
    options = {key: value for key, value in vars(args).items() if key not in _CLI_ONLY}
    config = RunConfig.from_dict(options)
    coordinator = MiningCoordinator(config)
    output = getattr(args, "output", None)

    if args.command == "mine":
        report = coordinator.mine()
        _write(format_rules(report.rules, report.item_names, config.format), output)
    elif args.command == "discretize":
        _write(_lines(coordinator.discretize_report()), output)
    elif args.command == "transform":
        _write(_lines(coordinator.transform(config.direction)), output)
    else:
        result = coordinator.oracle_check()
        _write(
            f"{result.checks} comparisons, {len(result.mismatches)} mismatches\n"
            + _lines(result.mismatches),
            output)
        if not result.ok:
            return EXIT_ORACLE_MISMATCH
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    """Parse the command line, run it and map failures to exit codes."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return run(args)
    except InvalidConfigError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except DataError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DATA_ERROR
    except OSError as err:
        _LOGGER.debug("Cannot write report", exc_info=True)
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DATA_ERROR
