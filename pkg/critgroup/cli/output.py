"""
Report rendering for the command line
"""

import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import BaseModel

from critgroup.core.exceptions import MalformedInputError
from critgroup.services.exact_linalg import IntMatrix


class CommandOutcome(BaseModel):
    """What a command hands back to the router: a JSON-able report, its text form and an exit code"""

    report: BaseModel
    text: str
    exit_code: int = 0


def render_matrix(matrix: IntMatrix, indent: str = "  ") -> str:
    if matrix.rows == 0:
        return f"{indent}[]"
    width = max(len(str(x)) for x in matrix.entries)
    return "\n".join(indent + "[" + " ".join(str(x).rjust(width) for x in row) + "]" for row in matrix.to_rows())


def render_vector(values: Sequence[object]) -> str:
    return "(" + ", ".join(str(x) for x in values) + ")"


def emit(outcome: CommandOutcome, fmt: str, output: Optional[Path] = None) -> None:
    if fmt == "json":
        body = outcome.report.model_dump_json(indent=2)
    else:
        body = outcome.text
    if output is not None:
        try:
            output.write_text(body + "\n", encoding="utf-8")
        except OSError as e:
            raise MalformedInputError(f"cannot write {output}: {e.strerror}") from e
    else:
        sys.stdout.write(body + "\n")
