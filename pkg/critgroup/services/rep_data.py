"""
Representation data of a finite-dimensional algebra: simples, projectives,
Cartan matrix and fusion, plus the McKay matrices and Laplacians built from
them.

Convention: (M_V)_{i,j} = [S_j ⊗ V : S_i]. ``fusion[t]`` is the McKay matrix
of the simple S_t, so M_V is the linear combination of fusion matrices
weighted by the composition multiplicities of V.
"""

import logging
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from critgroup.core.exceptions import MalformedInputError, PreconditionError, ShapeMismatchError
from critgroup.services.exact_linalg import BigInt, IntMatrix, dot, outer_product

logger = logging.getLogger(__name__)


class RepDatum(BaseModel):
    """Representation datum of an algebra with ℓ+1 simple modules"""

    model_config = ConfigDict(frozen=True)

    label: str
    num_simples: int
    trivial_index: int
    s: Tuple[BigInt, ...]
    p: Tuple[BigInt, ...]
    cartan: Optional[IntMatrix] = None
    fusion: Tuple[IntMatrix, ...]
    dual_permutation: Optional[Tuple[int, ...]] = None
    dimension: Optional[BigInt] = None
    simple_labels: Optional[Tuple[str, ...]] = None
    projective_labels: Optional[Tuple[str, ...]] = None

    @model_validator(mode="after")
    def _check_structure(self) -> "RepDatum":
        size = self.num_simples
        if size < 1:
            raise ValueError("a datum needs at least one simple module")
        if not 0 <= self.trivial_index < size:
            raise ValueError(f"trivial_index {self.trivial_index} out of range")
        if len(self.s) != size or len(self.p) != size:
            raise ValueError("s and p must have one entry per simple module")
        if len(self.fusion) != size:
            raise ValueError(f"expected {size} fusion matrices, got {len(self.fusion)}")
        if any(m.shape != (size, size) for m in self.fusion):
            raise ValueError(f"fusion matrices must be {size}x{size}")
        if self.cartan is not None and self.cartan.shape != (size, size):
            raise ValueError(f"Cartan matrix must be {size}x{size}")
        for name in ("dual_permutation", "simple_labels", "projective_labels"):
            value = getattr(self, name)
            if value is not None and len(value) != size:
                raise ValueError(f"{name} must have one entry per simple module")
        return self

    @property
    def ell(self) -> int:
        return self.num_simples - 1

    @property
    def is_semisimple(self) -> bool:
        """P_ε = ε, detected on dimensions"""
        return self.p[self.trivial_index] == 1

    def labels(self) -> Tuple[str, ...]:
        return self.simple_labels or tuple(f"S{i}" for i in range(self.num_simples))

    def projective_names(self) -> Tuple[str, ...]:
        return self.projective_labels or tuple(f"P({name})" for name in self.labels())

    def dual(self, j: int) -> int:
        return j if self.dual_permutation is None else self.dual_permutation[j]


class ModuleClass(BaseModel):
    """[V] = Σ c_i [S_i] in the Grothendieck group"""

    model_config = ConfigDict(frozen=True)

    c: Tuple[BigInt, ...]

    @field_validator("c")
    @classmethod
    def _nonnegative(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        if any(x < 0 for x in value):
            raise ValueError("composition multiplicities must be nonnegative")
        return value

    def dimension(self, rep: RepDatum) -> int:
        check_module(rep, self)
        return dot(rep.s, self.c)

    def __add__(self, other: "ModuleClass") -> "ModuleClass":
        if len(self.c) != len(other.c):
            raise ShapeMismatchError("module classes of different lengths")
        return ModuleClass(c=tuple(a + b for a, b in zip(self.c, other.c)))


class ValidationCheck(BaseModel):
    name: str
    status: Literal["pass", "fail", "skip"]
    detail: str = ""


class ValidationReport(BaseModel):
    label: str
    checks: List[ValidationCheck] = []

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def failures(self) -> List[ValidationCheck]:
        return [check for check in self.checks if check.status == "fail"]

    def record(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(ValidationCheck(name=name, status="pass" if passed else "fail", detail=detail))

    def skip(self, name: str, detail: str) -> None:
        self.checks.append(ValidationCheck(name=name, status="skip", detail=detail))

    def extend(self, other: "ValidationReport") -> None:
        self.checks.extend(other.checks)


def check_module(rep: RepDatum, v: ModuleClass) -> None:
    if len(v.c) != rep.num_simples:
        raise ShapeMismatchError(f"module class has {len(v.c)} entries, datum {rep.label} has {rep.num_simples} simples")


def unit_class(rep: RepDatum, i: int) -> ModuleClass:
    """[S_i]"""
    if not 0 <= i < rep.num_simples:
        raise ShapeMismatchError(f"simple index {i} out of range")
    return ModuleClass(c=tuple(1 if k == i else 0 for k in range(rep.num_simples)))


def projective_class(rep: RepDatum, j: int) -> ModuleClass:
    """[P_j] = Σ_i C_{i,j} [S_i]"""
    if rep.cartan is None:
        raise PreconditionError(f"datum {rep.label} carries no Cartan matrix")
    return ModuleClass(c=rep.cartan.column(j))


def mckay_matrix(rep: RepDatum, v: ModuleClass) -> IntMatrix:
    """
    McKay matrix of V: entry (i, j) is [S_j ⊗ V : S_i]

    Args:
        rep: representation datum
        v: class of the module V

    Returns:
        Σ_t c_t · fusion[t]
    """
    check_module(rep, v)
    result = IntMatrix.zeros(rep.num_simples)
    for weight, matrix in zip(v.c, rep.fusion):
        if weight:
            result = result + matrix.scale(weight)
    return result


def laplacian(rep: RepDatum, v: ModuleClass) -> IntMatrix:
    """L_V = n I - M_V"""
    n = v.dimension(rep)
    return IntMatrix.identity(rep.num_simples).scale(n) - mckay_matrix(rep, v)


def regular_class(rep: RepDatum) -> ModuleClass:
    """[A] = Σ dim(P_i) [S_i]"""
    return ModuleClass(c=rep.p)


def regular_mckay(rep: RepDatum) -> IntMatrix:
    """M_A = p s^T"""
    return outer_product(rep.p, rep.s)


def tensor_power_sum(rep: RepDatum, v: ModuleClass, t: int) -> IntMatrix:
    """McKay matrix of ⊕_{k=0}^{t} V^{⊗k}, i.e. Σ_{k≤t} M_V^k"""
    m = mckay_matrix(rep, v)
    power = IntMatrix.identity(rep.num_simples)
    total = power
    for _ in range(t):
        power = power @ m
        total = total + power
    return total


def is_rich(rep: RepDatum, v: ModuleClass) -> bool:
    """Every simple is a composition factor of V: the trivial column of M_V is positive"""
    return all(x > 0 for x in mckay_matrix(rep, v).column(rep.trivial_index))


def module_from_label(rep: RepDatum, token: str) -> ModuleClass:
    """
    Resolve a module given on the command line.

    Accepts a simple label ("D31"), a projective label ("P4", "P(D31)"),
    "regular", or comma-separated multiplicities ("0,1,0,0").
    """
    token = token.strip()
    if token in rep.labels():
        return unit_class(rep, rep.labels().index(token))
    if token in rep.projective_names():
        return projective_class(rep, rep.projective_names().index(token))
    if token.lower() == "regular":
        return regular_class(rep)
    try:
        values = tuple(int(part) for part in token.split(","))
    except ValueError:
        raise MalformedInputError(
            f"unknown module {token!r}; expected one of {', '.join(rep.labels())}, "
            "a projective label, 'regular', or comma-separated multiplicities"
        )
    if any(x < 0 for x in values):
        raise MalformedInputError("composition multiplicities must be nonnegative")
    v = ModuleClass(c=values)
    check_module(rep, v)
    return v


def validate(rep: RepDatum) -> ValidationReport:
    """Run every structural identity of the datum; failures are reported, never raised"""
    report = ValidationReport(label=rep.label)
    size = rep.num_simples
    triv = rep.trivial_index

    report.record("s[trivial] = 1", rep.s[triv] == 1, f"s[{triv}] = {rep.s[triv]}")
    report.record("s, p positive", all(x > 0 for x in rep.s + rep.p))

    if rep.dimension is None:
        report.skip("s^T p = d", "datum does not record dim A")
    else:
        value = dot(rep.s, rep.p)
        report.record("s^T p = d", value == rep.dimension, f"s^T p = {value}, d = {rep.dimension}")

    report.record("fusion[trivial] = I", rep.fusion[triv] == IntMatrix.identity(size))
    for t, matrix in enumerate(rep.fusion):
        report.record(f"fusion[{t}] nonnegative", matrix.is_nonnegative())
        report.record(
            f"s^T fusion[{t}] = s_t s^T",
            matrix.left_apply(rep.s) == tuple(rep.s[t] * x for x in rep.s),
        )
        report.record(
            f"fusion[{t}] p = s_t p",
            matrix.apply(rep.p) == tuple(rep.s[t] * x for x in rep.p),
        )

    m_regular = mckay_matrix(rep, regular_class(rep))
    report.record("M_A = p s^T", m_regular == regular_mckay(rep))

    if rep.cartan is None:
        for name in ("C nonnegative", "p^T = s^T C", "C s = p", "C s s^T = p s^T"):
            report.skip(name, "datum carries no Cartan matrix")
    else:
        c = rep.cartan
        report.record("C nonnegative", c.is_nonnegative())
        report.record("p^T = s^T C", c.left_apply(rep.s) == rep.p)
        report.record("C s = p", c.apply(rep.s) == rep.p)
        report.record("C s s^T = p s^T", outer_product(c.apply(rep.s), rep.s) == regular_mckay(rep))

    if rep.dual_permutation is not None:
        report.record("dual_permutation is a permutation", sorted(rep.dual_permutation) == list(range(size)))

    if not report.ok:
        logger.info("Datum %s failed %d checks", rep.label, len(report.failures))
    return report
