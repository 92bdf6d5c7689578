"""
regular: K(A) of the regular representation, closed form against Smith form
"""

import argparse

from pydantic import BaseModel

from critgroup.cli.output import CommandOutcome
from critgroup.cli.sources import JobSpec, add_output_arguments, add_source_arguments, resolve_entry
from critgroup.core.exceptions import InternalConsistencyError
from critgroup.services.critical import critical_group, lemma_coker, theorem1_closed_form
from critgroup.services.exact_linalg import AbelianGroupStructure, BigInt, dot, vector_gcd
from critgroup.services.rep_data import regular_class

NAME = "regular"


class RegularReport(BaseModel):
    label: str
    gamma: BigInt
    d: BigInt
    num_simples: int
    closed_form: AbelianGroupStructure
    smith: AbelianGroupStructure
    group_text: str


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(NAME, help="critical group of the regular representation")
    add_source_arguments(parser)
    add_output_arguments(parser)


def run(job: JobSpec) -> CommandOutcome:
    rep = resolve_entry(job).datum
    gamma = vector_gcd(rep.p)
    d = dot(rep.s, rep.p)
    closed = theorem1_closed_form(gamma, d, rep.num_simples)
    smith = critical_group(rep, regular_class(rep)).group
    # full cokernel of d I - p s^T, checked against its own closed form
    lemma_coker(rep.s, rep.p)
    if closed != smith:
        raise InternalConsistencyError(f"closed form {closed} differs from Smith form {smith}")

    report = RegularReport(
        label=rep.label,
        gamma=gamma,
        d=d,
        num_simples=rep.num_simples,
        closed_form=closed,
        smith=smith,
        group_text=str(closed),
    )
    text = "\n".join(
        [
            f"{rep.label}: γ = gcd(p) = {gamma}, d = s^T p = {d}, ℓ + 1 = {rep.num_simples}",
            f"K(A) ≅ {closed}",
            "closed form and Smith form agree",
        ]
    )
    return CommandOutcome(report=report, text=text)
