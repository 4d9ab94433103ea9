# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
"""
Command line front end.

Exit codes: 0 when the verdict is pass, 1 on fail or not-exists and 2 when
the input cannot be read, parsed or validated.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from mhslib.config import Settings, configure_logging
from mhslib.problems import ProblemFile, ProblemKind, Report, run
from mhslib.tools.generate import generate
from mhslib.tools.serialisation import read_json_object, write_text

__all__ = ["main"]

log = logging.getLogger(__name__)

EXIT_INPUT_ERROR = 2


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mhslib",
        description="Exact checks for mixed Hodge theoretic linear algebra.",
    )
    parser.add_argument(
        "--verbosity", choices=["quiet", "info", "debug"], default=None
    )
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", help="check a problem file")
    check.add_argument("file", type=Path)
    check.add_argument("--format", choices=["text", "machine"], default=None)
    check.add_argument("--output", type=Path, default=None)
    check.add_argument("--no-timing", action="store_true")

    gen = commands.add_parser("generate", help="write a seeded random problem")
    gen.add_argument("kind", choices=[k.value for k in ProblemKind])
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--dim", type=int, default=4)
    gen.add_argument("--output", type=Path, default=None)

    report = commands.add_parser("report", help="render a machine report")
    report.add_argument("report", type=Path)
    report.add_argument("--format", choices=["text", "machine"], default=None)
    return parser


def _settings(args: argparse.Namespace) -> Settings:
    settings = Settings.from_env()
    update = {}
    if args.verbosity is not None:
        update["verbosity"] = args.verbosity
    if getattr(args, "format", None) is not None:
        update["report_format"] = args.format
    if getattr(args, "no_timing", False):
        update["include_timing"] = False
    return settings.model_copy(update=update)


def _emit(text: str, output: Path | None):
    if output is None:
        sys.stdout.write(text)
    else:
        write_text(output, text)
        log.info(f"wrote {output}")


def _render(report: Report, settings: Settings) -> str:
    if settings.report_format == "machine":
        return report.to_machine()
    return report.to_text()


def _check(args: argparse.Namespace, settings: Settings) -> int:
    problem = ProblemFile.read(args.file)
    report = run(problem, include_timing=settings.include_timing)
    _emit(_render(report, settings), args.output)
    return report.exit_code


def _generate(args: argparse.Namespace) -> int:
    problem = generate(args.kind, args.seed, args.dim)
    _emit(problem.to_json(), args.output)
    return 0


def _report(args: argparse.Namespace, settings: Settings) -> int:
    report = Report.model_validate(
        read_json_object(args.report, description="machine report")
    )
    sys.stdout.write(_render(report, settings))
    return report.exit_code


def main(argv: list[str] | None = None) -> int:
    """Run the command line

    Returns
    -------
    :
        The exit code
    """
    args = _parser().parse_args(argv)
    settings = _settings(args)
    configure_logging(settings)
    try:
        if args.command == "check":
            return _check(args, settings)
        if args.command == "generate":
            return _generate(args)
        return _report(args, settings)
    except ValueError as exc:
        log.error(f"input error: {exc}")  # noqa: TRY400
        return EXIT_INPUT_ERROR
