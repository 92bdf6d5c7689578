"""
Command-line router: one sub-command per module under critgroup.cli.commands
"""

import argparse
import logging
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from critgroup.cli.commands import catalog, chipfire, compute, export, regular, theorem4, verify
from critgroup.cli.output import emit
from critgroup.cli.sources import JobSpec
from critgroup.core.config import settings
from critgroup.core.exceptions import CritGroupError, MalformedInputError
from critgroup.core.logging_config import configure_logging

logger = logging.getLogger(__name__)

# Include all command modules
COMMANDS = {module.NAME: module for module in (compute, regular, verify, theorem4, chipfire, catalog, export)}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=settings.APP_NAME,
        description="Critical groups of modules over finite-dimensional Hopf algebras",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.VERSION}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in COMMANDS.values():
        module.register(subparsers)
    return parser


def run(job: JobSpec) -> int:
    """Execute a job, print its report and return the exit code"""
    try:
        outcome = COMMANDS[job.command].run(job)
        emit(outcome, job.format, job.output)
    except ValidationError as e:
        error: CritGroupError = MalformedInputError(f"malformed input: {e}")
    except CritGroupError as e:
        error = e
    else:
        return outcome.exit_code
    logger.debug("%s failed", job.command, exc_info=error)
    sys.stderr.write(f"[error] {error.detail}\n")
    return error.exit_code


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging("DEBUG" if args.verbose else None)
    try:
        job = JobSpec.from_args(args)
    except ValidationError as e:
        sys.stderr.write(f"[error] malformed arguments: {e}\n")
        return MalformedInputError.exit_code
    except CritGroupError as e:
        sys.stderr.write(f"[error] {e.detail}\n")
        return e.exit_code
    return run(job)
