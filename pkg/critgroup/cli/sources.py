"""
Job specification and source resolution shared by the sub-commands
"""

import argparse
import json
from pathlib import Path
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from critgroup.core.config import settings
from critgroup.core.exceptions import MalformedInputError, ShapeMismatchError
from critgroup.services.catalog import CatalogEntry, catalog_service, entry_from_payload, require_valid
from critgroup.services.chipfire import ChipConfig
from critgroup.services.rep_data import ModuleClass, RepDatum, check_module, module_from_label

MODULE_COMMANDS = ("compute", "theorem4", "chipfire")
SOURCELESS_COMMANDS = ("catalog",)


class JobSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    command: str
    builtin: Optional[str] = None
    n: Optional[int] = None
    m: Optional[int] = None
    input: Optional[Path] = None
    module: Optional[str] = None
    module_file: Optional[Path] = None
    chips: Optional[str] = None
    format: Literal["text", "json"] = "text"
    output: Optional[Path] = None
    verbose: bool = False

    @model_validator(mode="after")
    def _check_sources(self) -> "JobSpec":
        if self.command not in SOURCELESS_COMMANDS and (self.builtin is None) == (self.input is None):
            raise MalformedInputError("give exactly one of --builtin or --input")
        if self.command in MODULE_COMMANDS and (self.module is None) == (self.module_file is None):
            raise MalformedInputError(f"{self.command} needs exactly one of --module or --module-file")
        return self

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "JobSpec":
        fields = {name: getattr(args, name, None) for name in cls.model_fields}
        fields["format"] = fields["format"] or settings.DEFAULT_FORMAT
        fields["verbose"] = bool(fields["verbose"])
        return cls(**fields)


def add_source_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--builtin", help="catalog key: s4p2, s4p3, s4p0, s5p3, taft or radford")
    parser.add_argument("--n", type=int, help="first parameter of taft / radford")
    parser.add_argument("--m", type=int, help="second parameter of taft / radford")
    parser.add_argument("--input", type=Path, help="JSON file with a datum (and optional Brauer table)")


def add_module_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--module", help="simple or projective label, 'regular', or multiplicities c0,c1,...")
    parser.add_argument("--module-file", type=Path, help='JSON file {"c": [...]}')


def add_output_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("text", "json"), default=None, help="output format")
    parser.add_argument("--output", type=Path, help="write the report to a file instead of standard output")
    parser.add_argument("--verbose", action="store_true", help="debug logging")


def _read_json(path: Path) -> Any:
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise MalformedInputError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise MalformedInputError(f"{path} is not valid JSON: {e}") from e


def resolve_entry(job: JobSpec, strict: bool = True) -> CatalogEntry:
    """Catalog entry named by --builtin, or loaded from --input (validated unless strict is off)"""
    if job.builtin is not None:
        return catalog_service.get(job.builtin, job.n, job.m)
    entry = entry_from_payload(_read_json(job.input), key=job.input.stem, provenance=str(job.input))
    return require_valid(entry) if strict else entry


def resolve_module(job: JobSpec, rep: RepDatum) -> ModuleClass:
    if job.module is not None:
        return module_from_label(rep, job.module)
    try:
        v = ModuleClass.model_validate(_read_json(job.module_file))
    except ValidationError as e:
        raise MalformedInputError(f"invalid module class: {e}") from e
    check_module(rep, v)
    return v


def resolve_chips(job: JobSpec, size: int) -> ChipConfig:
    """--chips in reduced coordinates; all zero by default"""
    if not job.chips:
        return ChipConfig(chips=(0,) * size)
    try:
        values = tuple(int(part) for part in job.chips.split(","))
        config = ChipConfig(chips=values)
    except (ValueError, ValidationError) as e:
        raise MalformedInputError(f"invalid chip configuration {job.chips!r}") from e
    if len(values) != size:
        raise ShapeMismatchError(f"expected {size} chip counts, got {len(values)}")
    return config
