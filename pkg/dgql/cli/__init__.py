"""Command line entry point: ``dgql <command> <input> [<modules>] [flags]``"""

from typing import Sequence
from logging import getLogger
import argparse
import logging
import re
import sys

from pydantic import ValidationError

from ..error import DGQLError
from .commands import Outcome, run
from .grammar import format_dg, parse_input, read_inputs
from .job import COMMANDS, JobSpec, parse_degrees

__all__ = [
    "JobSpec",
    "Outcome",
    "format_dg",
    "main",
    "normalize_argv",
    "parse_input",
    "read_inputs",
    "run",
]

VALUE_OPTIONS = ("--truncate", "--degrees", "--seed", "--d", "--shift")
NEGATIVE_VALUE = re.compile(r"-\d")


def normalize_argv(argv: Sequence[str]) -> list[str]:
    """Attach values starting with a minus sign to their option: ``--degrees -2..0``"""
    tokens = list(argv)
    normalized = []
    index = 0
    while index < len(tokens):
        token = tokens[index]
        following = tokens[index + 1] if index + 1 < len(tokens) else ""
        if token in VALUE_OPTIONS and NEGATIVE_VALUE.match(following):
            normalized.append(f"{token}={following}")
            index += 2
            continue

        normalized.append(token)
        index += 1

    return normalized


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dgql",
        description="Computations with differential graded quiver algebras",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("inputs", nargs="+", help="input file, then an optional .mod file")
    parser.add_argument("--truncate", type=int, help="truncation order N")
    parser.add_argument("--degrees", help="degree window a..b")
    parser.add_argument("--machine", action="store_true", help="key=value output")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--d", type=int, help="Calabi-Yau parameter")
    parser.add_argument("--shift", type=int, help="single shift for shifted-hom")
    parser.add_argument("--verbose", action="store_true")
    return parser


def job_from_args(args: argparse.Namespace) -> JobSpec:
    options = {
        "command": args.command,
        "inputs": tuple(args.inputs),
        "machine": args.machine,
        "seed": args.seed,
        "shift": args.shift,
        "verbose": args.verbose,
    }
    if args.truncate is not None:
        options["truncation"] = args.truncate
    if args.degrees is not None:
        options["degrees"] = parse_degrees(args.degrees)
    if args.d is not None:
        options["d"] = args.d

    return JobSpec(**options)


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    args = build_parser().parse_args(normalize_argv(argv))

    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    log = getLogger("dgql.cli")

    try:
        job = job_from_args(args)
    except (ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        outcome = run(job)
    except DGQLError as exc:
        log.debug(f"{job.command} failed", extra={"detail": exc.detail})
        print(f"error: {exc.message}", file=sys.stderr)
        if job.machine:
            print("\n".join(f"{key}={exc.detail[key]}" for key in sorted(exc.detail)))
        return exc.exit_code

    print(outcome.text)
    return outcome.exit_code
