"""
theorem4: the five equivalent finiteness conditions for K(V)
"""

import argparse
from typing import Optional, Tuple

from pydantic import BaseModel

from critgroup.cli.output import CommandOutcome, render_matrix, render_vector
from critgroup.cli.sources import JobSpec, add_module_arguments, add_output_arguments, add_source_arguments, resolve_entry, resolve_module
from critgroup.services.exact_linalg import BigInt, IntMatrix
from critgroup.services.richness import Theorem4Report, m_matrix_status, plemmons_certificate, reduced_laplacian, theorem4_report

NAME = "theorem4"


class FinitenessReport(BaseModel):
    label: str
    module: Tuple[BigInt, ...]
    conditions: Theorem4Report
    reduced_laplacian: Optional[IntMatrix] = None
    m_matrix_reason: str = ""
    certificate: Optional[Tuple[str, ...]] = None


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(NAME, help="equivalent conditions for K(V) to be finite")
    add_source_arguments(parser)
    add_module_arguments(parser)
    add_output_arguments(parser)


def _render(report: FinitenessReport) -> str:
    c = report.conditions
    lines = [f"{report.label}, V = {render_vector(report.module)}"]
    if report.reduced_laplacian is not None:
        lines += ["reduced L_V =", render_matrix(report.reduced_laplacian)]
    reason = f" ({report.m_matrix_reason})" if report.m_matrix_reason else ""
    lines += [
        f"(i)   nonsingular M-matrix:  {c.nonsingular_m_matrix}{reason}",
        f"(ii)  reduced L_V nonsingular: {c.reduced_nonsingular}",
        f"(iii) nullity of L_V is 1:  {c.nullity_one}",
        f"(iv)  K(V) finite:          {c.k_finite}",
        f"(v)   tensor-rich:          {c.tensor_rich}",
    ]
    if c.witness_t is not None:
        lines.append(f"⊕_(k<={c.witness_t}) V^k is rich")
    if report.certificate is not None:
        lines.append(f"x > 0 with Qx > 0: {render_vector(report.certificate)}")
    return "\n".join(lines)


def run(job: JobSpec) -> CommandOutcome:
    rep = resolve_entry(job).datum
    v = resolve_module(job, rep)
    conditions = theorem4_report(rep, v)
    report = FinitenessReport(label=rep.label, module=v.c, conditions=conditions)
    if rep.ell > 0:
        reduced = reduced_laplacian(rep, v)
        _, reason = m_matrix_status(reduced)
        certificate = None
        if conditions.nonsingular_m_matrix:
            certificate = tuple(str(x) for x in plemmons_certificate(reduced))
        report = report.model_copy(
            update={"reduced_laplacian": reduced, "m_matrix_reason": reason, "certificate": certificate}
        )
    return CommandOutcome(report=report, text=_render(report))
