"""
verify: structural identities of a datum, plus the Brauer-table checks when a table is present
"""

import argparse

from critgroup.cli.output import CommandOutcome
from critgroup.cli.sources import JobSpec, add_output_arguments, add_source_arguments, resolve_entry
from critgroup.services.brauer import eigen_check, eigenvalue_polynomial_check, nullity_via_characters
from critgroup.services.catalog import entry_report
from critgroup.services.exact_linalg import rank
from critgroup.services.rep_data import ValidationReport, laplacian, unit_class

NAME = "verify"


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(NAME, help="check every structural identity of a datum")
    add_source_arguments(parser)
    add_output_arguments(parser)


def _brauer_checks(entry, report: ValidationReport) -> None:
    table, rep = entry.brauer, entry.datum
    for i, name in enumerate(rep.labels()):
        v = unit_class(rep, i)
        report.extend(eigen_check(table, rep, v))
        report.record(f"det(xI - M_{name}) = Π (x - χ(g))", eigenvalue_polynomial_check(table, rep, v))
        nullity = rep.num_simples - rank(laplacian(rep, v))
        report.record(f"nullity of L_{name} from characters", nullity_via_characters(table, v) == nullity)


def run(job: JobSpec) -> CommandOutcome:
    entry = resolve_entry(job, strict=False)
    report = entry_report(entry)
    if entry.brauer is not None and report.ok:
        _brauer_checks(entry, report)

    lines = [f"{entry.datum.label} ({entry.key})"]
    for check in report.checks:
        detail = f"  {check.detail}" if check.detail else ""
        lines.append(f"  [{check.status}] {check.name}{detail}")
    passed = sum(1 for check in report.checks if check.status == "pass")
    lines.append(f"{passed} passed, {len(report.failures)} failed")
    return CommandOutcome(report=report, text="\n".join(lines), exit_code=0 if report.ok else 1)
