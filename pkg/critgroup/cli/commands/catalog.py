"""
catalog: list the bundled entries
"""

import argparse
from typing import Dict, List

from pydantic import BaseModel

from critgroup.cli.output import CommandOutcome
from critgroup.cli.sources import JobSpec, add_output_arguments
from critgroup.services.catalog import catalog_service

NAME = "catalog"


class CatalogListing(BaseModel):
    entries: List[Dict[str, str]]


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(NAME, help="list bundled representation data")
    add_output_arguments(parser)


def run(job: JobSpec) -> CommandOutcome:
    listing = CatalogListing(entries=catalog_service.list_entries())
    width = max(len(row["key"]) for row in listing.entries)
    text = "\n".join(f"{row['key'].ljust(width)}  {row['label']}  [{row['provenance']}]" for row in listing.entries)
    return CommandOutcome(report=listing, text=text)
