"""
Tensor-richness and the five equivalent conditions for K(V) to be finite:

(i)   the reduced Laplacian is a nonsingular M-matrix
(ii)  the reduced Laplacian is nonsingular
(iii) L_V has nullity one
(iv)  K(V) is finite
(v)   V is tensor-rich

Each is decided by its own route so that agreement is a real cross-check.
"""

import logging
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from critgroup.core.exceptions import (
    EquivalenceViolationError,
    InternalConsistencyError,
    PreconditionError,
    SingularMatrixError,
)
from critgroup.services.critical import critical_group
from critgroup.services.exact_linalg import IntMatrix, delete_index, determinant, rank, rat_inverse
from critgroup.services.rep_data import (
    ModuleClass,
    RepDatum,
    ValidationReport,
    is_rich,
    laplacian,
    mckay_matrix,
)

logger = logging.getLogger(__name__)


class Theorem4Report(BaseModel):
    model_config = ConfigDict(frozen=True)

    nonsingular_m_matrix: bool
    reduced_nonsingular: bool
    nullity_one: bool
    k_finite: bool
    tensor_rich: bool
    witness_t: Optional[int] = None

    def verdicts(self) -> Tuple[bool, ...]:
        return (
            self.nonsingular_m_matrix,
            self.reduced_nonsingular,
            self.nullity_one,
            self.k_finite,
            self.tensor_rich,
        )

    @property
    def agree(self) -> bool:
        return len(set(self.verdicts())) == 1


def reduced_laplacian(rep: RepDatum, v: ModuleClass) -> IntMatrix:
    """
    Strike the row and column of the trivial module out of L_V

    Args:
        rep: representation datum with at least two simples
        v: class of the module V

    Returns:
        ℓ×ℓ integer matrix
    """
    if rep.ell == 0:
        raise PreconditionError("the reduced Laplacian needs at least two simple modules")
    return delete_index(laplacian(rep, v), rep.trivial_index)


def m_matrix_status(q: IntMatrix) -> Tuple[bool, str]:
    """
    Nonsingular M-matrix test with the reason for a negative verdict

    Args:
        q: integer matrix

    Returns:
        (verdict, reason); the reason is empty when q is an M-matrix
    """
    if not q.is_square:
        return False, "not square"
    for i in range(q.rows):
        for j in range(q.cols):
            if i != j and q[i, j] > 0:
                return False, f"positive off-diagonal entry at ({i}, {j})"

    # Z-matrix: nonsingular M-matrix iff Q^{-1} exists and is entrywise nonnegative
    try:
        inverse = rat_inverse(q)
    except SingularMatrixError:
        return False, "singular"
    if not inverse.is_nonnegative():
        return False, "inverse has a negative entry"
    return True, ""


def is_nonsingular_m_matrix(q: IntMatrix) -> bool:
    return m_matrix_status(q)[0]


def plemmons_certificate(q: IntMatrix) -> Tuple[Fraction, ...]:
    """
    Positive vector x with Qx > 0, taken as x = Q^{-1}·1 so that Qx = 1

    Args:
        q: nonsingular M-matrix

    Returns:
        x as exact rationals

    Raises:
        PreconditionError: q is not a nonsingular M-matrix
    """
    ok, reason = m_matrix_status(q)
    if not ok:
        raise PreconditionError(f"not a nonsingular M-matrix: {reason}")
    x = rat_inverse(q).apply((1,) * q.rows)
    qx = tuple(sum((q[i, j] * x[j] for j in range(q.cols)), Fraction(0)) for i in range(q.rows))
    if any(value <= 0 for value in x) or any(value != 1 for value in qx):
        raise InternalConsistencyError("certificate failed its own check")
    return x


def is_tensor_rich(rep: RepDatum, v: ModuleClass) -> Tuple[bool, Optional[int]]:
    """
    Reachability from the trivial module in the graph with an edge j -> i
    whenever S_i occurs in S_j ⊗ V.

    Args:
        rep: representation datum
        v: class of the module V

    Returns:
        (rich, t) where t is the eccentricity of the trivial module, the least t
        with ⊕_{k<=t} V^{⊗k} rich; t is None when V is not tensor-rich
    """
    m = mckay_matrix(rep, v)
    adjacency = np.array([[x > 0 for x in row] for row in m.to_rows()], dtype=np.int64)
    reached = np.zeros(rep.num_simples, dtype=bool)
    reached[rep.trivial_index] = True
    frontier = reached.copy()

    # Breadth-first search; t counts the layers
    t = 0
    while True:
        step = (adjacency @ frontier.astype(np.int64)) > 0
        step &= ~reached
        if not step.any():
            break
        reached |= step
        frontier = step
        t += 1
    rich = bool(reached.all())
    return rich, (t if rich else None)


def theorem4_report(rep: RepDatum, v: ModuleClass) -> Theorem4Report:
    """
    Decide the five equivalent finiteness conditions independently

    Args:
        rep: representation datum
        v: class of the module V

    Returns:
        Theorem4Report with one verdict per condition and the richness witness

    Raises:
        EquivalenceViolationError: the verdicts disagree
    """
    if rep.ell == 0:
        # one simple module: V is a multiple of the trivial module and K(V) = 0
        return Theorem4Report(
            nonsingular_m_matrix=True,
            reduced_nonsingular=True,
            nullity_one=True,
            k_finite=True,
            tensor_rich=True,
            witness_t=0,
        )
    reduced = reduced_laplacian(rep, v)
    rich, witness = is_tensor_rich(rep, v)
    report = Theorem4Report(
        nonsingular_m_matrix=is_nonsingular_m_matrix(reduced),
        reduced_nonsingular=determinant(reduced) != 0,
        nullity_one=rank(laplacian(rep, v)) == rep.ell,
        k_finite=critical_group(rep, v).finite,
        tensor_rich=rich,
        witness_t=witness,
    )
    if not report.agree:
        logger.error("Equivalent conditions disagree for %s, c=%s: %s", rep.label, v.c, report.verdicts())
        raise EquivalenceViolationError(f"equivalent conditions disagree for {rep.label}: {report.verdicts()}")
    return report


def avalanche_criteria_check(rep: RepDatum, v: ModuleClass) -> ValidationReport:
    """With x = p: reduced L_V · reduced p is >= 0, and > 0 when V is rich"""
    report = ValidationReport(label=rep.label)
    reduced = reduced_laplacian(rep, v)
    p_bar = tuple(x for i, x in enumerate(rep.p) if i != rep.trivial_index)
    product = reduced.apply(p_bar)
    report.record("reduced L p >= 0", all(x >= 0 for x in product), f"{product}")
    if is_rich(rep, v):
        report.record("reduced L p > 0", all(x > 0 for x in product), f"{product}")
    else:
        report.skip("reduced L p > 0", "module is not rich")
    return report
