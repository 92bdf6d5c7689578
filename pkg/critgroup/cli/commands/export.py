"""
export: write an entry in the JSON input format, so it can be edited and fed back with --input
"""

import argparse

from critgroup.cli.output import CommandOutcome
from critgroup.cli.sources import JobSpec, add_output_arguments, add_source_arguments, resolve_entry

NAME = "export"


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(NAME, help="export a datum (and its Brauer table) as JSON")
    add_source_arguments(parser)
    add_output_arguments(parser)


def run(job: JobSpec) -> CommandOutcome:
    entry = resolve_entry(job)
    # the export is JSON whatever --format says
    return CommandOutcome(report=entry, text=entry.model_dump_json(indent=2))
