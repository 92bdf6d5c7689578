"""
Catalog of bundled representation data and parametric families
"""

import json
import logging
from math import comb
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import sympy
from pydantic import BaseModel, ConfigDict, ValidationError

from critgroup.core.config import settings
from critgroup.core.exceptions import (
    InvalidParameterError,
    MalformedInputError,
    UnknownCatalogKeyError,
    ValidationFailedError,
)
from critgroup.services.brauer import BrauerTable, consistency_report, fusion_from_brauer
from critgroup.services.critical import theorem1_closed_form
from critgroup.services.exact_linalg import AbelianGroupStructure, IntMatrix
from critgroup.services.rep_data import RepDatum, ValidationReport, validate

logger = logging.getLogger(__name__)

GROUP_ALGEBRA_KEYS = ("s4p2", "s4p3", "s4p0", "s5p3")
PARAMETRIC_KEYS = ("taft", "radford")


class CatalogEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    key: str
    datum: RepDatum
    brauer: Optional[BrauerTable] = None
    provenance: str = ""


def entry_report(entry: CatalogEntry) -> ValidationReport:
    """Structural checks of the datum plus agreement with its Brauer table"""
    report = validate(entry.datum)
    if entry.brauer is not None:
        report.extend(consistency_report(entry.brauer, entry.datum))
    return report


def require_valid(entry: CatalogEntry) -> CatalogEntry:
    report = entry_report(entry)
    if not report.ok:
        names = ", ".join(check.name for check in report.failures)
        logger.error("Entry %s fails validation: %s", entry.key, names)
        raise ValidationFailedError(f"{entry.key}: failed checks {names}")
    return entry


def _cyclic_fusion(n: int) -> Tuple[IntMatrix, ...]:
    """S_i ⊗ S_t = S_{i+t mod n}"""
    return tuple(
        IntMatrix.from_rows([[1 if i == (j + t) % n else 0 for j in range(n)] for i in range(n)]) for t in range(n)
    )


def entry_from_payload(payload: Any, key: str, provenance: str = "") -> CatalogEntry:
    """
    Build an entry from decoded JSON.

    Args:
        payload: either {"datum": ..., "brauer": ...} or a bare RepDatum object
        key: identifier for the entry
        provenance: free-form source note

    Returns:
        CatalogEntry, with fusion derived from the Brauer table when the datum omits it
    """
    if not isinstance(payload, dict):
        raise MalformedInputError("expected a JSON object")
    datum_data = payload["datum"] if "datum" in payload else payload
    brauer_data = payload.get("brauer") if "datum" in payload else None
    if not isinstance(datum_data, dict):
        raise MalformedInputError("datum must be a JSON object")
    datum_data = dict(datum_data)
    try:
        brauer = BrauerTable.model_validate(brauer_data) if brauer_data is not None else None
        if datum_data.get("fusion") is None:
            if brauer is None:
                raise MalformedInputError("datum has no fusion matrices and no Brauer table to derive them from")
            datum_data["fusion"] = fusion_from_brauer(brauer)
        datum = RepDatum.model_validate(datum_data)
    except ValidationError as e:
        raise MalformedInputError(f"invalid representation data: {e}") from e
    return CatalogEntry(
        key=payload.get("key", key),
        datum=datum,
        brauer=brauer,
        provenance=payload.get("provenance", provenance),
    )


class CatalogService:
    """Bundled group-algebra data and the Taft / Radford families"""

    def __init__(self, data_dir: Optional[Path] = None):
        self.data_dir = Path(data_dir or settings.CATALOG_DIR)
        self._cache: Dict[str, CatalogEntry] = {}

    def group_algebra(self, key: str) -> CatalogEntry:
        """
        Load a bundled group algebra.

        Args:
            key: one of s4p2, s4p3, s4p0 (characteristic 0 or p >= 5), s5p3

        Returns:
            Validated CatalogEntry with fusion derived from the Brauer table
        """
        if key not in GROUP_ALGEBRA_KEYS:
            raise UnknownCatalogKeyError(f"unknown catalog key {key!r}; expected one of {', '.join(self.keys())}")
        if key not in self._cache:
            path = self.data_dir / f"{key}.json"
            try:
                payload = json.loads(path.read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError) as e:
                raise MalformedInputError(f"cannot read catalog resource {path}: {e}") from e
            entry = require_valid(entry_from_payload(payload, key))
            logger.info("Loaded catalog entry %s from %s", key, path)
            self._cache[key] = entry
        return self._cache[key]

    def taft(self, n: int, m: int) -> CatalogEntry:
        """n one-dimensional simples, projectives of dimension m, dim = mn"""
        if n < 1 or m < 1:
            raise InvalidParameterError("taft needs n >= 1 and m >= 1")
        if n % m:
            raise InvalidParameterError(f"taft needs m | n, got n={n}, m={m}")
        datum = RepDatum(
            label=f"Taft H({n},{m})",
            num_simples=n,
            trivial_index=0,
            s=(1,) * n,
            p=(m,) * n,
            fusion=_cyclic_fusion(n),
            dimension=m * n,
        )
        return require_valid(CatalogEntry(key=f"taft-{n}-{m}", datum=datum, provenance="Taft algebra, generalized"))

    def radford(self, n: int, m: int) -> CatalogEntry:
        """C_{i,j} counts subsets of {1..m} whose size is j − i mod n"""
        if n < 2 or n % 2:
            raise InvalidParameterError(f"radford needs an even n >= 2, got {n}")
        if m < 0:
            raise InvalidParameterError(f"radford needs m >= 0, got {m}")
        cartan = IntMatrix.from_rows(
            [[sum(comb(m, k) for k in range(m + 1) if (k - (j - i)) % n == 0) for j in range(n)] for i in range(n)]
        )
        datum = RepDatum(
            label=f"Radford A({n},{m})",
            num_simples=n,
            trivial_index=0,
            s=(1,) * n,
            p=cartan.apply((1,) * n),
            cartan=cartan,
            fusion=_cyclic_fusion(n),
            dimension=n * 2**m,
        )
        return require_valid(CatalogEntry(key=f"radford-{n}-{m}", datum=datum, provenance="Radford Hopf algebra"))

    def restricted_env_regular(self, p: int, N: int, dim_g: int, rank_g: int) -> AbelianGroupStructure:
        """K of the regular module of a restricted enveloping algebra u(g)"""
        if not sympy.isprime(p):
            raise InvalidParameterError(f"{p} is not prime")
        if rank_g < 1 or dim_g < 1 or N < 0:
            raise InvalidParameterError("need rank_g >= 1, dim_g >= 1 and N >= 0")
        if N > dim_g:
            raise InvalidParameterError("the number of positive roots cannot exceed dim g")
        return theorem1_closed_form(p**N, p**dim_g, p**rank_g)

    def get(self, key: str, n: Optional[int] = None, m: Optional[int] = None) -> CatalogEntry:
        if key in PARAMETRIC_KEYS:
            if n is None or m is None:
                raise InvalidParameterError(f"{key} needs both --n and --m")
            return self.taft(n, m) if key == "taft" else self.radford(n, m)
        return self.group_algebra(key)

    def keys(self) -> Tuple[str, ...]:
        return GROUP_ALGEBRA_KEYS + PARAMETRIC_KEYS

    def list_entries(self) -> List[Dict[str, str]]:
        rows = []
        for key in GROUP_ALGEBRA_KEYS:
            entry = self.group_algebra(key)
            rows.append({"key": key, "label": entry.datum.label, "provenance": entry.provenance})
        rows.append({"key": "taft", "label": "Taft H(n,m), m | n", "provenance": "parametric (--n, --m)"})
        rows.append({"key": "radford", "label": "Radford A(n,m), n even", "provenance": "parametric (--n, --m)"})
        return rows


# Create service instance
catalog_service = CatalogService()
