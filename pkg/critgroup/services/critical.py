"""
Critical groups K(V), where Z ⊕ K(V) ≅ Z^{ℓ+1} / im L_V.

Several independent routes are provided so they can be checked against each
other: the Smith normal form of L_V, the closed form for the regular
representation, the rank-one cokernel formula, and the cardinality formulas
read off the characteristic polynomial.
"""

import logging
from math import prod
from typing import Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from critgroup.core.exceptions import (
    InfiniteCriticalGroupError,
    InternalConsistencyError,
    InvalidParameterError,
    PreconditionError,
    ShapeMismatchError,
)
from critgroup.services.exact_linalg import (
    AbelianGroupStructure,
    BigInt,
    IntMatrix,
    char_poly,
    cokernel_structure,
    delete_index,
    dot,
    outer_product,
    rank,
    smith_normal_form,
    vector_gcd,
)
from critgroup.services.rep_data import ModuleClass, RepDatum, laplacian

logger = logging.getLogger(__name__)


class CriticalGroupResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    group: AbelianGroupStructure
    laplacian: IntMatrix
    smith_diagonal: Tuple[BigInt, ...]
    nullity: int
    finite: bool
    cardinality: Optional[BigInt] = None

    @model_validator(mode="after")
    def _check_consistency(self) -> "CriticalGroupResult":
        if len({self.finite, self.group.free_rank == 0, self.nullity == 1}) != 1:
            raise ValueError("finite, free rank and nullity disagree")
        if self.finite and self.cardinality != prod(self.group.torsion):
            raise ValueError("cardinality must be the product of the invariant factors")
        return self


def critical_group(rep: RepDatum, v: ModuleClass) -> CriticalGroupResult:
    """
    Compute K(V) from the Smith form of L_V with one free factor removed

    Args:
        rep: representation datum of the algebra
        v: class of the module V in the Grothendieck group

    Returns:
        CriticalGroupResult with the group, L_V, its Smith diagonal and nullity
    """
    lap = laplacian(rep, v)
    decomposition = smith_normal_form(lap)

    # Zero diagonal entries count the free summands of coker L_V
    zeros = sum(1 for x in decomposition.d if x == 0)
    if zeros < 1:
        # s^T L_V = 0 forces a free summand
        raise InternalConsistencyError(f"cokernel of L_V has no free summand for {rep.label}")
    group = AbelianGroupStructure(free_rank=zeros - 1, torsion=tuple(x for x in decomposition.d if x > 1))
    logger.debug("K(V) for %s, c=%s: %s", rep.label, v.c, group)
    return CriticalGroupResult(
        group=group,
        laplacian=lap,
        smith_diagonal=decomposition.d,
        nullity=zeros,
        finite=group.is_finite,
        cardinality=group.cardinality,
    )


def theorem1_closed_form(gamma: int, d: int, ell_plus_1: int) -> AbelianGroupStructure:
    """
    K(A) of the regular representation in closed form

    Args:
        gamma: gcd of the projective dimensions
        d: dimension of the algebra
        ell_plus_1: number of simple modules

    Returns:
        0 when there is a single simple, otherwise Z/γ ⊕ (Z/d)^{ℓ-1}
    """
    if gamma < 1 or d < 1 or ell_plus_1 < 1:
        raise InvalidParameterError("gamma, d and the number of simples must be positive")
    if d % gamma:
        raise InvalidParameterError(f"gamma = {gamma} does not divide d = {d}")
    ell = ell_plus_1 - 1
    if ell == 0:
        return AbelianGroupStructure()
    return AbelianGroupStructure.from_factors([gamma] + [d] * (ell - 1))


def lemma_coker(s: Sequence[int], p: Sequence[int]) -> AbelianGroupStructure:
    """
    Cokernel of d·I − p s^T with d = s^T p, for s with a unit coordinate.

    Computed by Smith form and compared with the closed form
    Z ⊕ Z/γ ⊕ (Z/d)^{ℓ-1}, γ = gcd(p).

    Args:
        s: dimensions of the simples
        p: dimensions of the projective covers

    Returns:
        The cokernel, free part included

    Raises:
        PreconditionError: no coordinate of s is 1, or s^T p = 0
        InternalConsistencyError: the two computations disagree
    """
    if len(s) != len(p):
        raise ShapeMismatchError(f"s has length {len(s)}, p has length {len(p)}")
    if 1 not in s:
        raise PreconditionError("s needs a coordinate equal to 1")
    d = dot(s, p)
    if d == 0:
        raise PreconditionError("s^T p must be nonzero")

    # Smith form of the explicit matrix
    size = len(s)
    explicit = cokernel_structure(IntMatrix.identity(size).scale(d) - outer_product(p, s))
    if size == 1:
        closed = AbelianGroupStructure(free_rank=1)
    else:
        closed = AbelianGroupStructure.from_factors([vector_gcd(p)] + [d] * (size - 2), free_rank=1)
    if explicit != closed:
        logger.error("Rank-one cokernel mismatch for s=%s p=%s: %s vs %s", s, p, explicit, closed)
        raise InternalConsistencyError(f"Smith form gives {explicit}, closed form gives {closed}")
    return explicit


def _linear_coefficient(lap: IntMatrix) -> int:
    """q(0) where det(xI − L) = x·q(x)"""
    coefficients = char_poly(lap)
    if coefficients[-1] != 0:
        raise PreconditionError("matrix is nonsingular; expected a one-dimensional nullspace")
    if coefficients[-2] == 0:
        raise PreconditionError("x^2 divides the characteristic polynomial")
    return coefficients[-2]


def lorenzini_cardinality(lap: IntMatrix, n_right: Sequence[int], n_left: Sequence[int]) -> int:
    """
    |torsion of coker L| = |q(0)| / |n_left^T n_right| for L of corank one with
    primitive right and left null vectors.

    Args:
        lap: square integer matrix of nullity one
        n_right: primitive vector with L n_right = 0
        n_left: primitive vector with n_left^T L = 0

    Returns:
        Order of the torsion subgroup of coker L
    """
    if not lap.is_square:
        raise ShapeMismatchError(f"expected a square matrix, got {lap.rows}x{lap.cols}")
    if rank(lap) != lap.rows - 1:
        raise PreconditionError(f"nullity is {lap.rows - rank(lap)}, expected 1")
    if any(lap.apply(n_right)) or any(lap.left_apply(n_left)):
        raise PreconditionError("given vectors are not null vectors of L")
    pairing = dot(n_left, n_right)
    if pairing == 0:
        raise PreconditionError("null vectors pair to zero")
    q0 = _linear_coefficient(lap)
    if q0 % pairing:
        raise InternalConsistencyError(f"q(0) = {q0} is not divisible by {pairing}")
    return abs(q0 // pairing)


def theorem2_cardinality(rep: RepDatum, v: ModuleClass) -> int:
    """
    Order of K(V) read off the characteristic polynomial of L_V

    Args:
        rep: representation datum of the algebra
        v: class of the module V

    Returns:
        |γ·q(0)/d| with q(x) = det(xI − L_V)/x

    Raises:
        InfiniteCriticalGroupError: L_V has nullity above one
    """
    lap = laplacian(rep, v)
    if rank(lap) != rep.ell:
        raise InfiniteCriticalGroupError(f"L_V has nullity {rep.num_simples - rank(lap)}, so K(V) is infinite")
    gamma = vector_gcd(rep.p)
    d = dot(rep.s, rep.p)

    # q(0) is the product of the nonzero eigenvalues up to sign
    numerator = gamma * _linear_coefficient(lap)
    if numerator % d:
        logger.error("γ·q(0) = %d is not divisible by d = %d for %s", numerator, d, rep.label)
        raise InternalConsistencyError("γ·q(0) is not divisible by d")
    return abs(numerator // d)


def reduced_cokernel(rep: RepDatum, v: ModuleClass) -> AbelianGroupStructure:
    """Z^ℓ / im of L_V with the trivial row and column struck out"""
    if rep.ell == 0:
        return AbelianGroupStructure()
    return cokernel_structure(delete_index(laplacian(rep, v), rep.trivial_index))


def reduced_cokernel_agrees(rep: RepDatum, v: ModuleClass) -> bool:
    """K(V) equals the reduced cokernel; guaranteed when the datum is semisimple"""
    return critical_group(rep, v).group == reduced_cokernel(rep, v)
