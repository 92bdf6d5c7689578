"""
Exact integer and rational matrix algebra: Smith normal form, cokernels,
characteristic polynomials, rank and inversion.

All arithmetic is on Python integers and ``fractions.Fraction``; nothing is
ever rounded. Heavier routines (characteristic polynomial, rank, determinant,
rational inverse) go through sympy's ``DomainMatrix`` over ZZ / QQ. The Smith
form is computed here because callers need the unimodular transforms and a
reproducible pivot rule.
"""

import logging
from fractions import Fraction
from itertools import groupby
from math import gcd, prod
from typing import Annotated, Any, List, Literal, Optional, Sequence, Tuple, Union

from pydantic import (
    BaseModel,
    ConfigDict,
    PlainSerializer,
    SerializationInfo,
    field_validator,
    model_serializer,
    model_validator,
)
from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from critgroup.core.exceptions import (
    InternalConsistencyError,
    MalformedInputError,
    PreconditionError,
    ShapeMismatchError,
    SingularMatrixError,
)

logger = logging.getLogger(__name__)

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


def encode_int(value: int) -> Union[int, str]:
    """JSON form of an integer: a decimal string once it leaves the signed 64-bit range"""
    return value if INT64_MIN <= value <= INT64_MAX else str(value)


BigInt = Annotated[int, PlainSerializer(encode_int, when_used="json")]


def _nested_rows(data: Sequence[Any]) -> List[List[Any]]:
    """Rows of a nested-list matrix; every row must itself be a list"""
    if any(not isinstance(row, (list, tuple)) for row in data):
        raise ValueError("matrix rows must be lists")
    nested = [list(row) for row in data]
    if len({len(row) for row in nested}) > 1:
        raise ValueError("matrix rows have different lengths")
    return nested


class IntMatrix(BaseModel):
    """
    Dense integer matrix with arbitrary-precision entries in row-major order.

    Validates from and serializes to nested lists, e.g. ``[[2, -2], [-1, 1]]``.
    """

    model_config = ConfigDict(frozen=True)

    rows: int
    cols: int
    entries: Tuple[int, ...]

    @model_validator(mode="before")
    @classmethod
    def _from_nested(cls, data: Any) -> Any:
        if isinstance(data, (list, tuple)):
            nested = _nested_rows(data)
            return {
                "rows": len(nested),
                "cols": len(nested[0]) if nested else 0,
                "entries": [x for row in nested for x in row],
            }
        return data

    @field_validator("entries", mode="before")
    @classmethod
    def _parse_decimal_strings(cls, value: Any) -> Any:
        if isinstance(value, (list, tuple)):
            return tuple(int(x) if isinstance(x, str) else x for x in value)
        return value

    @model_validator(mode="after")
    def _check_shape(self) -> "IntMatrix":
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries for a {self.rows}x{self.cols} matrix, "
                f"got {len(self.entries)}"
            )
        return self

    @model_serializer(mode="plain")
    def _to_nested(self, info: SerializationInfo) -> List[List[Any]]:
        if info.mode_is_json():
            return [[encode_int(x) for x in row] for row in self.to_rows()]
        return self.to_rows()

    # construction

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        return cls.model_validate([list(row) for row in rows])

    @classmethod
    def _make(cls, rows: int, cols: int, entries: Sequence[int]) -> "IntMatrix":
        return cls.model_construct(rows=rows, cols=cols, entries=tuple(entries))

    @classmethod
    def zeros(cls, rows: int, cols: Optional[int] = None) -> "IntMatrix":
        cols = rows if cols is None else cols
        return cls._make(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls._make(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: Optional[int] = None, cols: Optional[int] = None) -> "IntMatrix":
        rows = len(values) if rows is None else rows
        cols = rows if cols is None else cols
        return cls._make(
            rows, cols, [values[i] if i == j and i < len(values) else 0 for i in range(rows) for j in range(cols)]
        )

    # access

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, key: Tuple[int, int]) -> int:
        i, j = key
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> List[List[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for x in self.entries)

    # arithmetic

    def transpose(self) -> "IntMatrix":
        return IntMatrix._make(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def _require_same_shape(self, other: "IntMatrix") -> None:
        if self.shape != other.shape:
            raise ShapeMismatchError(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._require_same_shape(other)
        return IntMatrix._make(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._require_same_shape(other)
        return IntMatrix._make(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix._make(self.rows, self.cols, [k * x for x in self.entries])

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ShapeMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        columns = [other.column(j) for j in range(other.cols)]
        return IntMatrix._make(
            self.rows,
            other.cols,
            [sum(a * b for a, b in zip(self.row(i), col)) for i in range(self.rows) for col in columns],
        )

    def apply(self, vector: Sequence[int]) -> Tuple[int, ...]:
        """Matrix times column vector"""
        if len(vector) != self.cols:
            raise ShapeMismatchError(f"vector of length {len(vector)} against {self.cols} columns")
        return tuple(sum(a * b for a, b in zip(self.row(i), vector)) for i in range(self.rows))

    def left_apply(self, vector: Sequence[int]) -> Tuple[int, ...]:
        """Row vector times matrix"""
        if len(vector) != self.rows:
            raise ShapeMismatchError(f"vector of length {len(vector)} against {self.rows} rows")
        return tuple(sum(a * b for a, b in zip(vector, self.column(j))) for j in range(self.cols))


class RatMatrix(BaseModel):
    """Dense matrix of exact rationals; entries serialize as "a/b" strings"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    @model_validator(mode="before")
    @classmethod
    def _from_nested(cls, data: Any) -> Any:
        if isinstance(data, (list, tuple)):
            nested = _nested_rows(data)
            return {
                "rows": len(nested),
                "cols": len(nested[0]) if nested else 0,
                "entries": [x for row in nested for x in row],
            }
        return data

    @field_validator("entries", mode="before")
    @classmethod
    def _to_fractions(cls, value: Any) -> Tuple[Fraction, ...]:
        return tuple(Fraction(x) for x in value)

    @model_validator(mode="after")
    def _check_shape(self) -> "RatMatrix":
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match the shape")
        return self

    @model_serializer(mode="plain")
    def _to_nested(self) -> List[List[str]]:
        return [[str(x) for x in row] for row in self.to_rows()]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, key: Tuple[int, int]) -> Fraction:
        i, j = key
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> List[List[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for x in self.entries)

    def apply(self, vector: Sequence[Union[int, Fraction]]) -> Tuple[Fraction, ...]:
        if len(vector) != self.cols:
            raise ShapeMismatchError(f"vector of length {len(vector)} against {self.cols} columns")
        return tuple(sum((a * b for a, b in zip(self.row(i), vector)), Fraction(0)) for i in range(self.rows))

    def __matmul__(self, other: IntMatrix) -> "RatMatrix":
        if self.cols != other.rows:
            raise ShapeMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        columns = [other.column(j) for j in range(other.cols)]
        return RatMatrix.model_construct(
            rows=self.rows,
            cols=other.cols,
            entries=tuple(
                sum((a * b for a, b in zip(self.row(i), col)), Fraction(0)) for i in range(self.rows) for col in columns
            ),
        )

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(
            self[i, j] == (1 if i == j else 0) for i in range(self.rows) for j in range(self.cols)
        )


class SmithDecomposition(BaseModel):
    """U·A·V = diag(d) with U, V unimodular"""

    model_config = ConfigDict(frozen=True)

    d: Tuple[BigInt, ...]
    U: IntMatrix
    V: IntMatrix
    original_rank: int

    def diagonal_matrix(self) -> IntMatrix:
        return IntMatrix.diagonal(self.d, self.U.rows, self.V.cols)


class AbelianGroupStructure(BaseModel):
    """Z^free_rank ⊕ Z/torsion[0] ⊕ ... with torsion[i] | torsion[i+1]"""

    model_config = ConfigDict(frozen=True)

    free_rank: int = 0
    torsion: Tuple[BigInt, ...] = ()

    @model_validator(mode="after")
    def _check_invariants(self) -> "AbelianGroupStructure":
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        if any(a < 2 for a in self.torsion):
            raise ValueError("invariant factors must be at least 2")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError("invariant factors must form a divisibility chain")
        return self

    @classmethod
    def from_factors(cls, factors: Sequence[int], free_rank: int = 0) -> "AbelianGroupStructure":
        """Normalize an arbitrary direct sum of cyclic groups Z/a (a = 0 meaning Z)"""
        if not factors:
            return cls(free_rank=free_rank)
        decomposition = smith_normal_form(IntMatrix.diagonal([abs(a) for a in factors]))
        return cls(
            free_rank=free_rank + sum(1 for a in decomposition.d if a == 0),
            torsion=tuple(a for a in decomposition.d if a > 1),
        )

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def cardinality(self) -> Optional[int]:
        return prod(self.torsion) if self.is_finite else None

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        for value, group in groupby(self.torsion):
            count = len(list(group))
            parts.append(f"Z/{value}" if count == 1 else f"(Z/{value})^{count}")
        return " ⊕ ".join(parts) or "0"


# Smith normal form

def _swap_rows(m: List[List[int]], i: int, j: int) -> None:
    m[i], m[j] = m[j], m[i]


def _swap_cols(m: List[List[int]], i: int, j: int) -> None:
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_row(m: List[List[int]], target: int, source: int, factor: int) -> None:
    m[target] = [a + factor * b for a, b in zip(m[target], m[source])]


def _add_col(m: List[List[int]], target: int, source: int, factor: int) -> None:
    for row in m:
        row[target] += factor * row[source]


def _min_pivot(work: List[List[int]], k: int) -> Optional[Tuple[int, int]]:
    # strict comparison keeps the lowest (row, col) among ties
    best = None
    for i in range(k, len(work)):
        for j in range(k, len(work[i])):
            x = work[i][j]
            if x and (best is None or abs(x) < best[0]):
                best = (abs(x), i, j)
    return None if best is None else (best[1], best[2])


def _move_to_corner(work, left, right, k: int, pivot: Tuple[int, int]) -> None:
    i, j = pivot
    if i != k:
        _swap_rows(work, k, i)
        _swap_rows(left, k, i)
    if j != k:
        _swap_cols(work, k, j)
        _swap_cols(right, k, j)


def _clear_cross(work, left, right, k: int) -> bool:
    """Reduce column k below and row k right of the pivot; True when both are zero"""
    pivot = work[k][k]
    settled = True
    for i in range(k + 1, len(work)):
        if work[i][k]:
            q = work[i][k] // pivot
            _add_row(work, i, k, -q)
            _add_row(left, i, k, -q)
            settled = settled and work[i][k] == 0
    for j in range(k + 1, len(work[k])):
        if work[k][j]:
            q = work[k][j] // pivot
            _add_col(work, j, k, -q)
            _add_col(right, j, k, -q)
            settled = settled and work[k][j] == 0
    return settled


def _first_non_multiple(work: List[List[int]], k: int) -> Optional[int]:
    pivot = work[k][k]
    for i in range(k + 1, len(work)):
        if any(x % pivot for x in work[i][k + 1:]):
            return i
    return None


def smith_normal_form(a: IntMatrix) -> SmithDecomposition:
    """
    Smith normal form with unimodular transforms.

    Pivot rule: the nonzero entry of least absolute value in the trailing
    submatrix, ties broken by lowest (row, col), is moved to the corner and
    its row and column are reduced; repeat until the cross is clear and the
    pivot divides everything that remains.

    Args:
        a: nonempty integer matrix

    Returns:
        SmithDecomposition with U·A·V = D, U and V unimodular
    """
    if a.rows == 0 or a.cols == 0:
        raise MalformedInputError("Smith normal form needs a nonempty matrix")
    m, n = a.shape
    work = a.to_rows()
    left = IntMatrix.identity(m).to_rows()
    right = IntMatrix.identity(n).to_rows()

    for k in range(min(m, n)):
        pivot = _min_pivot(work, k)
        if pivot is None:
            break
        _move_to_corner(work, left, right, k, pivot)
        while True:
            if _clear_cross(work, left, right, k):
                blocker = _first_non_multiple(work, k)
                if blocker is None:
                    break
                _add_row(work, k, blocker, 1)
                _add_row(left, k, blocker, 1)
                continue
            _move_to_corner(work, left, right, k, _min_pivot(work, k))
        if work[k][k] < 0:
            work[k] = [-x for x in work[k]]
            left[k] = [-x for x in left[k]]

    d = tuple(work[i][i] for i in range(min(m, n)))
    result = SmithDecomposition(
        d=d,
        U=IntMatrix.from_rows(left),
        V=IntMatrix.from_rows(right),
        original_rank=sum(1 for x in d if x),
    )
    if result.U @ a @ result.V != result.diagonal_matrix():
        raise InternalConsistencyError("Smith transforms do not diagonalize the input")
    logger.debug("Smith form of %dx%d matrix: %s", m, n, d)
    return result


def _require_square(a: IntMatrix, what: str) -> None:
    if not a.is_square:
        raise ShapeMismatchError(f"{what} needs a square matrix, got {a.rows}x{a.cols}")


def cokernel_structure(a: IntMatrix) -> AbelianGroupStructure:
    """Z^n / im(A) for a square integer matrix A"""
    _require_square(a, "cokernel_structure")
    decomposition = smith_normal_form(a)
    return AbelianGroupStructure(
        free_rank=sum(1 for x in decomposition.d if x == 0),
        torsion=tuple(x for x in decomposition.d if x > 1),
    )


# sympy-backed routines

def _domain_matrix(a: IntMatrix) -> DomainMatrix:
    return DomainMatrix([[ZZ(x) for x in row] for row in a.to_rows()], a.shape, ZZ)


def char_poly(a: IntMatrix) -> Tuple[int, ...]:
    """Coefficients of det(xI - A), highest degree first"""
    _require_square(a, "char_poly")
    if a.rows == 0:
        return (1,)
    return tuple(int(c) for c in _domain_matrix(a).charpoly())


def rank(a: IntMatrix) -> int:
    """Rank over the rationals"""
    if a.rows == 0 or a.cols == 0:
        return 0
    return _domain_matrix(a).convert_to(QQ).rank()


def determinant(a: IntMatrix) -> int:
    _require_square(a, "determinant")
    if a.rows == 0:
        return 1
    return int(_domain_matrix(a).det())


def rat_inverse(a: IntMatrix) -> RatMatrix:
    _require_square(a, "rat_inverse")
    if a.rows == 0:
        return RatMatrix(rows=0, cols=0, entries=())
    try:
        inverse = _domain_matrix(a).convert_to(QQ).inv()
    except DMNonInvertibleMatrixError as e:
        raise SingularMatrixError("matrix is singular over the rationals") from e
    rows = inverse.to_Matrix().tolist()
    return RatMatrix(
        rows=a.rows,
        cols=a.cols,
        entries=tuple(Fraction(int(x.p), int(x.q)) for row in rows for x in row),
    )


# small helpers shared by the services

def delete_index(a: IntMatrix, k: int) -> IntMatrix:
    """Strike out row k and column k"""
    _require_square(a, "delete_index")
    if not 0 <= k < a.rows:
        raise ShapeMismatchError(f"index {k} out of range for a {a.rows}x{a.cols} matrix")
    keep = [i for i in range(a.rows) if i != k]
    return IntMatrix._make(len(keep), len(keep), [a[i, j] for i in keep for j in keep])


def entrywise_le(a: IntMatrix, b: IntMatrix) -> bool:
    if a.shape != b.shape:
        raise ShapeMismatchError(f"shapes {a.shape} and {b.shape} differ")
    return all(x <= y for x, y in zip(a.entries, b.entries))


def outer_product(u: Sequence[int], v: Sequence[int]) -> IntMatrix:
    """u v^T"""
    return IntMatrix._make(len(u), len(v), [x * y for x in u for y in v])


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise ShapeMismatchError(f"vectors of lengths {len(u)} and {len(v)}")
    return sum(x * y for x, y in zip(u, v))


def vector_gcd(values: Sequence[int]) -> int:
    return gcd(*values) if values else 0


def primitive_null_vector(a: IntMatrix, side: Literal["right", "left"] = "right") -> Tuple[int, ...]:
    """
    Primitive generator of the integer nullspace of A (A x = 0, or x^T A = 0
    for side="left") when that nullspace has rank one. The sign is fixed so
    the first nonzero coordinate is positive.
    """
    _require_square(a, "primitive_null_vector")
    target = a if side == "right" else a.transpose()
    decomposition = smith_normal_form(target)
    if a.rows - decomposition.original_rank != 1:
        raise PreconditionError(f"nullity is {a.rows - decomposition.original_rank}, expected 1")
    vector = decomposition.V.column(a.cols - 1)
    g = vector_gcd(vector)
    vector = tuple(x // g for x in vector)
    if next(x for x in vector if x) < 0:
        vector = tuple(-x for x in vector)
    return vector
