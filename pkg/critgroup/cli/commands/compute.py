"""
compute: K(V) for one module, with its order obtained by every available route
"""

import argparse
import logging
from typing import Optional, Tuple

from pydantic import BaseModel

from critgroup.cli.output import CommandOutcome, render_matrix, render_vector
from critgroup.cli.sources import JobSpec, add_module_arguments, add_output_arguments, add_source_arguments, resolve_entry, resolve_module
from critgroup.core.exceptions import InternalConsistencyError
from critgroup.services.brauer import brauer_tensor_rich, gaetz_cardinality
from critgroup.services.critical import critical_group, lorenzini_cardinality, reduced_cokernel, theorem2_cardinality
from critgroup.services.exact_linalg import AbelianGroupStructure, BigInt, IntMatrix, vector_gcd
from critgroup.services.rep_data import mckay_matrix

logger = logging.getLogger(__name__)

NAME = "compute"


class ComputeReport(BaseModel):
    label: str
    module: Tuple[BigInt, ...]
    dimension: BigInt
    mckay: IntMatrix
    laplacian: IntMatrix
    smith_diagonal: Tuple[BigInt, ...]
    group: AbelianGroupStructure
    group_text: str
    finite: bool
    cardinality_smith: Optional[BigInt] = None
    cardinality_theorem2: Optional[BigInt] = None
    cardinality_lorenzini: Optional[BigInt] = None
    cardinality_gaetz: Optional[BigInt] = None
    reduced_cokernel: str


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(NAME, help="critical group K(V) of a module")
    add_source_arguments(parser)
    add_module_arguments(parser)
    add_output_arguments(parser)


def _render(report: ComputeReport) -> str:
    lines = [
        f"{report.label}, V = {render_vector(report.module)}, dim V = {report.dimension}",
        "M_V =",
        render_matrix(report.mckay),
        "L_V = nI - M_V =",
        render_matrix(report.laplacian),
        f"Smith invariants: {render_vector(report.smith_diagonal)}",
        f"K(V) ≅ {report.group_text}",
    ]
    if report.finite:
        lines.append(f"|K(V)| = {report.cardinality_smith} (Smith form)")
        lines.append(f"|K(V)| = {report.cardinality_theorem2} (characteristic polynomial, γ/d)")
        lines.append(f"|K(V)| = {report.cardinality_lorenzini} (null vectors s and p/γ)")
        if report.cardinality_gaetz is not None:
            lines.append(f"|K(V)| = {report.cardinality_gaetz} (Brauer characters)")
    else:
        lines.append(f"K(V) is infinite (free rank {report.group.free_rank})")
    lines.append(f"reduced cokernel ≅ {report.reduced_cokernel}")
    return "\n".join(lines)


def run(job: JobSpec) -> CommandOutcome:
    entry = resolve_entry(job)
    rep = entry.datum
    v = resolve_module(job, rep)
    result = critical_group(rep, v)

    report = ComputeReport(
        label=rep.label,
        module=v.c,
        dimension=v.dimension(rep),
        mckay=mckay_matrix(rep, v),
        laplacian=result.laplacian,
        smith_diagonal=result.smith_diagonal,
        group=result.group,
        group_text=str(result.group),
        finite=result.finite,
        reduced_cokernel=str(reduced_cokernel(rep, v)),
    )
    if result.finite:
        gamma = vector_gcd(rep.p)
        routes = {
            "cardinality_smith": result.cardinality,
            "cardinality_theorem2": theorem2_cardinality(rep, v),
            "cardinality_lorenzini": lorenzini_cardinality(result.laplacian, tuple(x // gamma for x in rep.p), rep.s),
        }
        if entry.brauer is not None and brauer_tensor_rich(entry.brauer, v):
            routes["cardinality_gaetz"] = gaetz_cardinality(entry.brauer, v)
        if len(set(routes.values())) != 1:
            logger.error("Cardinality routes disagree for %s: %s", rep.label, routes)
            raise InternalConsistencyError(f"cardinality routes disagree: {routes}")
        report = report.model_copy(update=routes)

    return CommandOutcome(report=report, text=_render(report))
