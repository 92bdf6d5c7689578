"""
chipfire: stabilize a configuration under the reduced Laplacian and run the burning test
"""

import argparse
from typing import Literal, Tuple

from pydantic import BaseModel

from critgroup.cli.output import CommandOutcome, render_matrix, render_vector
from critgroup.cli.sources import (
    JobSpec,
    add_module_arguments,
    add_output_arguments,
    add_source_arguments,
    resolve_chips,
    resolve_entry,
    resolve_module,
)
from critgroup.services.chipfire import (
    ChipConfig,
    burning_config,
    burning_from_script,
    is_recurrent,
    stabilize,
)
from critgroup.services.exact_linalg import BigInt, IntMatrix
from critgroup.services.richness import reduced_laplacian

NAME = "chipfire"


class ChipfireReport(BaseModel):
    label: str
    module: Tuple[BigInt, ...]
    reduced_laplacian: IntMatrix
    initial: ChipConfig
    stable: ChipConfig
    firings: Tuple[BigInt, ...]
    burning: ChipConfig
    burning_source: Literal["trivial column of M_V", "least action script"]
    recurrent: bool


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(NAME, help="chip-firing under the reduced Laplacian")
    add_source_arguments(parser)
    add_module_arguments(parser)
    parser.add_argument("--chips", help="initial configuration c0,c1,... in reduced coordinates (default all zero)")
    add_output_arguments(parser)


def run(job: JobSpec) -> CommandOutcome:
    rep = resolve_entry(job).datum
    v = resolve_module(job, rep)
    lap = reduced_laplacian(rep, v)
    initial = resolve_chips(job, lap.rows)
    record = stabilize(lap, initial)

    if rep.is_semisimple:
        burning, source = burning_config(rep, v), "trivial column of M_V"
    else:
        burning, source = burning_from_script(lap), "least action script"
    recurrent = is_recurrent(lap, burning, record.stable)

    report = ChipfireReport(
        label=rep.label,
        module=v.c,
        reduced_laplacian=lap,
        initial=initial,
        stable=record.stable,
        firings=record.firings,
        burning=burning,
        burning_source=source,
        recurrent=recurrent,
    )
    text = "\n".join(
        [
            f"{rep.label}, V = {render_vector(v.c)}",
            "reduced L_V =",
            render_matrix(lap),
            f"initial:  {render_vector(initial.chips)}",
            f"stable:   {render_vector(record.stable.chips)}",
            f"firings:  {render_vector(record.firings)}",
            f"burning:  {render_vector(burning.chips)} ({source})",
            f"recurrent: {recurrent}",
        ]
    )
    return CommandOutcome(report=report, text=text)
