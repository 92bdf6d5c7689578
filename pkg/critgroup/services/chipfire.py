"""
Chip-firing on avalanche-finite matrices.

A configuration c is unstable at site i when c_i >= L_ii; firing i subtracts
column i of L. For a nonsingular M-matrix every configuration stabilizes and
the outcome (stable configuration and firing counts) does not depend on the
order in which unstable sites are fired.

Only in the semisimple case does this dynamics model K(V) itself; in general
the reduced Laplacian's cokernel differs from K(V).
"""

import logging
from itertools import product
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from critgroup.core.config import settings
from critgroup.core.exceptions import (
    InvalidConfigurationError,
    NotAvalancheFiniteError,
    NotSemisimpleError,
    ShapeMismatchError,
    StepLimitExceededError,
)
from critgroup.services.exact_linalg import BigInt, IntMatrix
from critgroup.services.rep_data import ModuleClass, RepDatum, mckay_matrix
from critgroup.services.richness import is_nonsingular_m_matrix

logger = logging.getLogger(__name__)


class ChipConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    chips: Tuple[BigInt, ...]

    @field_validator("chips")
    @classmethod
    def _nonnegative(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        if any(x < 0 for x in value):
            raise ValueError("chip counts must be nonnegative")
        return value

    def __add__(self, other: "ChipConfig") -> "ChipConfig":
        if len(self.chips) != len(other.chips):
            raise ShapeMismatchError("configurations of different lengths")
        return ChipConfig(chips=tuple(a + b for a, b in zip(self.chips, other.chips)))


class FiringRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    stable: ChipConfig
    firings: Tuple[BigInt, ...]


def is_avalanche_finite(lap: IntMatrix) -> bool:
    return is_nonsingular_m_matrix(lap)


def _require_avalanche_finite(lap: IntMatrix) -> None:
    if not is_avalanche_finite(lap):
        raise NotAvalancheFiniteError("matrix is not an integer nonsingular M-matrix; chip-firing may not terminate")


def stabilize(
    lap: IntMatrix,
    c: ChipConfig,
    rng: Optional[np.random.Generator] = None,
    step_limit: Optional[int] = None,
    check: bool = True,
) -> FiringRecord:
    """
    Fire unstable sites until none remain.

    Args:
        lap: avalanche-finite matrix
        c: initial configuration
        rng: picks among the unstable sites; lowest index first when omitted
        step_limit: maximum number of firings, settings.STEP_LIMIT by default
        check: verify avalanche-finiteness first

    Returns:
        FiringRecord with stable = c − L·firings
    """
    if len(c.chips) != lap.rows:
        raise ShapeMismatchError(f"configuration of length {len(c.chips)} against a {lap.rows}x{lap.cols} matrix")
    if check:
        _require_avalanche_finite(lap)
    limit = settings.STEP_LIMIT if step_limit is None else step_limit

    size = lap.rows
    chips = list(c.chips)
    firings = [0] * size
    diagonal = [lap[i, i] for i in range(size)]
    columns = [lap.column(i) for i in range(size)]
    steps = 0
    while True:
        unstable = [i for i in range(size) if chips[i] >= diagonal[i]]
        if not unstable:
            break
        site = unstable[0] if rng is None else unstable[int(rng.integers(len(unstable)))]
        chips = [x - y for x, y in zip(chips, columns[site])]
        firings[site] += 1
        steps += 1
        if steps > limit:
            raise StepLimitExceededError(f"stabilization exceeded {limit} firings")

    logger.debug("Stabilized %s after %d firings", c.chips, steps)
    return FiringRecord(stable=ChipConfig(chips=tuple(chips)), firings=tuple(firings))


def burning_config(rep: RepDatum, v: ModuleClass) -> ChipConfig:
    """Trivial column of M_V without its trivial entry (semisimple data only)"""
    if not rep.is_semisimple:
        raise NotSemisimpleError(f"{rep.label} is not semisimple (p at the trivial module is {rep.p[rep.trivial_index]})")
    column = mckay_matrix(rep, v).column(rep.trivial_index)
    return ChipConfig(chips=tuple(x for i, x in enumerate(column) if i != rep.trivial_index))


def burning_script(lap: IntMatrix, step_limit: Optional[int] = None) -> Tuple[int, ...]:
    """Least positive integer vector f with L f >= 0, by least action"""
    _require_avalanche_finite(lap)
    limit = settings.STEP_LIMIT if step_limit is None else step_limit
    script = [1] * lap.rows
    for _ in range(limit):
        deficit = lap.apply(script)
        short = next((i for i, x in enumerate(deficit) if x < 0), None)
        if short is None:
            return tuple(script)
        # ceil(-deficit / L_ii)
        script[short] += -(deficit[short] // lap[short, short])
    raise StepLimitExceededError(f"burning script not found within {limit} rounds")


def burning_from_script(lap: IntMatrix) -> ChipConfig:
    return ChipConfig(chips=lap.apply(burning_script(lap)))


def is_recurrent(lap: IntMatrix, b: ChipConfig, c: ChipConfig) -> bool:
    """
    Burning test: c is recurrent iff adding b and stabilizing returns c

    Args:
        lap: avalanche-finite matrix
        b: burning configuration for lap
        c: stable configuration

    Returns:
        True when c is recurrent
    """
    if len(c.chips) != lap.rows:
        raise ShapeMismatchError(f"configuration of length {len(c.chips)} against a {lap.rows}x{lap.cols} matrix")
    for i, x in enumerate(c.chips):
        if x >= lap[i, i]:
            raise InvalidConfigurationError(f"site {i} holds {x} chips, which is not stable (L_ii = {lap[i, i]})")

    # Stable c is recurrent exactly when c + b relaxes back to c
    return stabilize(lap, c + b).stable == c


def recurrent_configurations(lap: IntMatrix, b: ChipConfig) -> List[ChipConfig]:
    """Every recurrent configuration in the stable box; there are |det L| of them"""
    _require_avalanche_finite(lap)
    box = [range(lap[i, i]) for i in range(lap.rows)]
    found = []
    for chips in product(*box):
        c = ChipConfig(chips=chips)
        if stabilize(lap, c + b, check=False).stable == c:
            found.append(c)
    return found
