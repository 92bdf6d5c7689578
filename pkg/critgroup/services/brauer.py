"""
Brauer characters of group algebras.

A table row is the Brauer character of one simple module evaluated on the
p-regular classes. Because the map V -> χ_V is an injective ring map on the
Grothendieck group, the table determines the fusion rules, the eigenvalues of
every McKay matrix and, through those, the order of the critical group.

Only integer-valued tables are supported.
"""

import logging
from fractions import Fraction
from math import gcd, prod
from typing import Any, List, Optional, Tuple

import sympy
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from critgroup.core.exceptions import (
    InfiniteCriticalGroupError,
    NegativeMultiplicityError,
    NonIntegralFusionError,
    PreconditionError,
    ShapeMismatchError,
    UnsupportedTableError,
    ValidationFailedError,
)
from critgroup.services.exact_linalg import (
    BigInt,
    IntMatrix,
    char_poly,
    determinant,
    rat_inverse,
    vector_gcd,
)
from critgroup.services.rep_data import (
    ModuleClass,
    RepDatum,
    ValidationReport,
    mckay_matrix,
    tensor_power_sum,
)

logger = logging.getLogger(__name__)


def _is_integer_entry(value: Any) -> bool:
    if isinstance(value, bool):
        return False
    if isinstance(value, int):
        return True
    if isinstance(value, str):
        text = value.strip()
        return text.lstrip("+-").isdigit()
    return False


class BrauerTable(BaseModel):
    """Brauer character table on the p-regular classes (p = 0 for ordinary characters)"""

    model_config = ConfigDict(frozen=True)

    p: int
    group_order: BigInt
    sylow_order: BigInt
    class_labels: Tuple[str, ...]
    identity_class: int = 0
    chi_simple: IntMatrix
    chi_projective: Optional[IntMatrix] = None

    @field_validator("chi_simple", "chi_projective", mode="before")
    @classmethod
    def _integer_values(cls, value: Any) -> Any:
        if isinstance(value, (list, tuple)):
            for row in value:
                cells = row if isinstance(row, (list, tuple)) else [row]
                bad = [x for x in cells if not _is_integer_entry(x)]
                if bad:
                    raise UnsupportedTableError(
                        f"Brauer character value {bad[0]!r} is not an integer; "
                        "tables with cyclotomic values are not supported"
                    )
        return value

    @model_validator(mode="after")
    def _check_table(self) -> "BrauerTable":
        size = len(self.class_labels)
        if self.chi_simple.shape != (size, size):
            raise ValueError(f"chi_simple must be {size}x{size} to match the class labels")
        if self.chi_projective is not None and self.chi_projective.shape != (size, size):
            raise ValueError(f"chi_projective must be {size}x{size}")
        if not 0 <= self.identity_class < size:
            raise ValueError(f"identity_class {self.identity_class} out of range")
        if any(x <= 0 for x in self.chi_simple.column(self.identity_class)):
            raise ValueError("character values at the identity must be positive dimensions")
        if self.group_order < 1 or self.sylow_order < 1:
            raise ValueError("group_order and sylow_order must be positive")

        if self.p == 0:
            if self.sylow_order != 1:
                raise ValueError("sylow_order must be 1 in characteristic zero")
        else:
            if not sympy.isprime(self.p):
                raise ValueError(f"characteristic {self.p} is not prime")
            power = self.sylow_order
            while power % self.p == 0:
                power //= self.p
            if power != 1:
                raise ValueError(f"sylow_order {self.sylow_order} is not a power of {self.p}")
            if self.group_order % self.sylow_order:
                raise ValueError("sylow_order must divide group_order")
            if gcd(self.p, self.group_order // self.sylow_order) != 1:
                raise ValueError("sylow_order must be the full p-part of group_order")

        if determinant(self.chi_simple) == 0:
            raise ValueError("Brauer character table is singular")
        return self

    @property
    def size(self) -> int:
        return len(self.class_labels)

    def dimensions(self) -> Tuple[int, ...]:
        """Column of the identity class, i.e. the s vector"""
        return self.chi_simple.column(self.identity_class)


def chi_of_class(table: BrauerTable, v: ModuleClass) -> Tuple[int, ...]:
    """χ_V on every p-regular class"""
    if len(v.c) != table.size:
        raise ShapeMismatchError(f"module class has {len(v.c)} entries, table has {table.size} rows")
    return table.chi_simple.left_apply(v.c)


def _exact_multiplicities(solution: Tuple[Fraction, ...], j: int, t: int) -> List[int]:
    values = []
    for x in solution:
        if x.denominator != 1:
            raise NonIntegralFusionError(f"[S_{j} ⊗ S_{t}] has non-integral multiplicity {x}")
        if x < 0:
            raise NegativeMultiplicityError(f"[S_{j} ⊗ S_{t}] has negative multiplicity {x}")
        values.append(int(x))
    return values


def fusion_from_brauer(table: BrauerTable) -> Tuple[IntMatrix, ...]:
    """
    McKay matrices of the simples, read off pointwise character products.

    Entry (i, j) of matrix t is [S_j ⊗ S_t : S_i], the solution of
    chi_simple^T x = χ_{S_j}·χ_{S_t}.

    Args:
        table: integer-valued Brauer table

    Returns:
        One matrix per simple, in table row order

    Raises:
        NonIntegralFusionError: a multiplicity is not an integer
        NegativeMultiplicityError: a multiplicity is negative
    """
    size = table.size
    solver = rat_inverse(table.chi_simple.transpose())
    rows = [table.chi_simple.row(i) for i in range(size)]
    matrices = []
    for t in range(size):
        columns = []
        for j in range(size):
            product = tuple(a * b for a, b in zip(rows[j], rows[t]))
            columns.append(_exact_multiplicities(solver.apply(product), j, t))
        matrices.append(IntMatrix.from_rows([[columns[j][i] for j in range(size)] for i in range(size)]))
    return tuple(matrices)


def projective_characters(table: BrauerTable, cartan: IntMatrix) -> IntMatrix:
    """Row j is χ_{P_j} = Σ_i C_{i,j} χ_{S_i}"""
    if cartan.shape != table.chi_simple.shape:
        raise ShapeMismatchError(f"Cartan matrix {cartan.shape} against table {table.chi_simple.shape}")
    return cartan.transpose() @ table.chi_simple


def cartan_from_projective(table: BrauerTable) -> IntMatrix:
    """Recover C from the projective characters: C = (chi_projective · chi_simple^{-1})^T"""
    if table.chi_projective is None:
        raise PreconditionError("table carries no projective characters")
    recovered = rat_inverse(table.chi_simple.transpose()) @ table.chi_projective.transpose()
    if any(x.denominator != 1 or x < 0 for x in recovered.entries):
        raise ValidationFailedError("projective characters do not decompose into simples with nonnegative integer multiplicities")
    return IntMatrix.from_rows([[int(x) for x in row] for row in recovered.to_rows()])


def _projective_rows(table: BrauerTable, rep: RepDatum) -> Optional[IntMatrix]:
    if rep.cartan is not None:
        return projective_characters(table, rep.cartan)
    return table.chi_projective


def eigen_check(table: BrauerTable, rep: RepDatum, v: ModuleClass) -> ValidationReport:
    """
    Per class g: s(g)^T M_V = χ_V(g) s(g)^T and M_V p*(g) = χ_V(g) p*(g),
    where s(g) is column g of the table and p*(g)_j = χ_{P_j*}(g).
    """
    if table.size != rep.num_simples:
        raise ShapeMismatchError(f"table has {table.size} classes, datum {rep.label} has {rep.num_simples} simples")
    report = ValidationReport(label=rep.label)
    m = mckay_matrix(rep, v)
    chi = chi_of_class(table, v)
    projective = _projective_rows(table, rep)

    for g, name in enumerate(table.class_labels):
        s_g = table.chi_simple.column(g)
        expected = tuple(chi[g] * x for x in s_g)
        report.record(f"left eigenvector s({name})", m.left_apply(s_g) == expected, f"eigenvalue {chi[g]}")

        check = f"right eigenvector p*({name})"
        if projective is None:
            report.skip(check, "no Cartan matrix or projective characters")
            continue
        p_g = tuple(projective[rep.dual(j), g] for j in range(rep.num_simples))
        report.record(check, m.apply(p_g) == tuple(chi[g] * x for x in p_g), f"eigenvalue {chi[g]}")

    if not report.ok:
        logger.error("Eigenvector identities fail for %s: %s", rep.label, [c.name for c in report.failures])
    return report


def brauer_tensor_rich(table: BrauerTable, v: ModuleClass) -> bool:
    """Only the identity class acts with χ_V(g) = n"""
    chi = chi_of_class(table, v)
    n = chi[table.identity_class]
    return all(value != n for g, value in enumerate(chi) if g != table.identity_class)


def nullity_via_characters(table: BrauerTable, v: ModuleClass) -> int:
    """Number of classes with χ_V(g) = n; equals the nullity of L_V"""
    chi = chi_of_class(table, v)
    n = chi[table.identity_class]
    return sum(1 for value in chi if value == n)


def gaetz_cardinality(table: BrauerTable, v: ModuleClass) -> int:
    """
    Order of K(V) from the Brauer character of V

    Args:
        table: Brauer table of the group on its p-regular classes
        v: class of the module V

    Returns:
        (p^a / |G|) · Π_{g ≠ e} (n − χ_V(g)) over p-regular class representatives

    Raises:
        InfiniteCriticalGroupError: some non-identity class has χ_V(g) = n
        ValidationFailedError: the product is not divisible by |G|
    """
    chi = chi_of_class(table, v)
    n = chi[table.identity_class]
    factors = [n - value for g, value in enumerate(chi) if g != table.identity_class]
    if any(f == 0 for f in factors):
        raise InfiniteCriticalGroupError("χ_V(g) = n for a non-identity class, so K(V) is infinite")
    numerator = table.sylow_order * prod(factors)
    if numerator % table.group_order:
        logger.error("Gaetz product %d not divisible by |G| = %d", numerator, table.group_order)
        raise ValidationFailedError("Gaetz product is not divisible by |G|; the table looks corrupted")
    return numerator // table.group_order


def richness_bound_check(table: BrauerTable, rep: RepDatum, v: ModuleClass) -> bool:
    """With t distinct character values, ⊕_{k<t} V^{⊗k} contains every simple"""
    if not brauer_tensor_rich(table, v):
        raise PreconditionError("module is not tensor-rich")
    t = len(set(chi_of_class(table, v)))
    column = tensor_power_sum(rep, v, t - 1).column(rep.trivial_index)
    return all(x > 0 for x in column)


def sylow_gcd_check(table: BrauerTable, rep: RepDatum) -> bool:
    """gcd of the projective dimensions is the order of a Sylow p-subgroup"""
    return vector_gcd(rep.p) == table.sylow_order


def eigenvalue_polynomial_check(table: BrauerTable, rep: RepDatum, v: ModuleClass) -> bool:
    """det(xI − M_V) == Π_g (x − χ_V(g))"""
    x = sympy.Symbol("x")
    expected = sympy.Poly(sympy.prod([x - value for value in chi_of_class(table, v)]), x)
    return char_poly(mckay_matrix(rep, v)) == tuple(int(c) for c in expected.all_coeffs())


def consistency_report(table: BrauerTable, rep: RepDatum) -> ValidationReport:
    """Agreement between a datum and the table it is bundled with"""
    report = ValidationReport(label=rep.label)
    if table.size != rep.num_simples:
        report.record("table size", False, f"{table.size} classes, {rep.num_simples} simples")
        return report
    report.record("table identity column = s", table.dimensions() == rep.s)
    report.record("fusion = fusion_from_brauer", rep.fusion == fusion_from_brauer(table))
    report.record("gcd(p) = Sylow order", sylow_gcd_check(table, rep))
    if table.chi_projective is None:
        report.skip("projective characters recover C", "table carries no projective characters")
    elif rep.cartan is None:
        report.skip("projective characters recover C", "datum carries no Cartan matrix")
    else:
        report.record("projective characters recover C", cartan_from_projective(table) == rep.cartan)
    return report
