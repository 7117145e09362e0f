"""Exact linear algebra over the integers and the rationals.

Everything here is backed by sympy's ``DomainMatrix`` over ``ZZ`` or ``QQ``.
Dense ``IntegerMatrix`` values hold small matrices such as characteristic
matrices and their minors; Koszul and bar-complex strands are passed around
as sparse row dictionaries ``{row: {col: value}}`` and only turned into a
``DomainMatrix`` when a rank or an echelon form is needed.
"""

import logging
from typing import Any, Iterable, Mapping, Optional, Sequence, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator
from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from toric_invariants.exceptions import DimensionError, NotUnimodularError

SparseRows = Mapping[int, Mapping[int, Any]]
SparseVector = Mapping[int, Any]


class IntegerMatrix(BaseModel):
    """Dense matrix of arbitrary-precision integers stored row-major."""

    model_config = ConfigDict(frozen=True)

    rows: int = Field(ge=0, description="Number of rows")
    cols: int = Field(ge=0, description="Number of columns")
    entries: tuple[int, ...] = Field(description="Row-major entries, length rows*cols")

    @model_validator(mode="after")
    def _check_shape(self) -> "IntegerMatrix":
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"entries has length {len(self.entries)} but the shape {self.rows}x{self.cols} needs {self.rows * self.cols}"
            )
        return self

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntegerMatrix":
        """Build a matrix from a list of rows; ``cols`` is needed only when there are no rows."""
        n_cols = len(rows[0]) if rows else (cols or 0)
        for row in rows:
            if len(row) != n_cols:
                raise DimensionError(f"Ragged matrix: expected rows of length {n_cols}, got {len(row)}")
        return cls(rows=len(rows), cols=n_cols, entries=tuple(int(x) for row in rows for x in row))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: Optional[int] = None) -> "IntegerMatrix":
        n_rows = len(columns[0]) if columns else (rows or 0)
        return cls.from_rows([[col[i] for col in columns] for i in range(n_rows)], cols=len(columns))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(rows=n, cols=n, entries=tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows=rows, cols=cols, entries=(0,) * (rows * cols))

    @classmethod
    def from_domain_matrix(cls, matrix: DomainMatrix) -> "IntegerMatrix":
        """Convert a ``DomainMatrix`` whose entries are all integral."""
        n_rows, n_cols = matrix.shape
        dense = matrix.to_Matrix()
        values = []
        for i in range(n_rows):
            for j in range(n_cols):
                value = dense[i, j]
                if not value.is_integer:
                    raise ValueError(f"Entry ({i}, {j}) = {value} is not an integer")
                values.append(int(value))
        return cls(rows=n_rows, cols=n_cols, entries=tuple(values))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix.from_rows([list(self.column(j)) for j in range(self.cols)], cols=self.rows)

    def select_columns(self, columns: Sequence[int]) -> "IntegerMatrix":
        """Return the submatrix on the given 0-based columns, in the given order."""
        return IntegerMatrix.from_rows([[self[i, j] for j in columns] for i in range(self.rows)], cols=len(columns))

    def select_rows(self, rows: Sequence[int]) -> "IntegerMatrix":
        return IntegerMatrix.from_rows([list(self.row(i)) for i in rows], cols=self.cols)

    def delete_rows(self, rows: Iterable[int]) -> "IntegerMatrix":
        dropped = set(rows)
        return self.select_rows([i for i in range(self.rows) if i not in dropped])

    def negate_columns(self, columns: Iterable[int]) -> "IntegerMatrix":
        flipped = set(columns)
        return IntegerMatrix.from_rows(
            [[-self[i, j] if j in flipped else self[i, j] for j in range(self.cols)] for i in range(self.rows)],
            cols=self.cols,
        )

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        product = self.to_domain_matrix() * other.to_domain_matrix()
        return IntegerMatrix.from_domain_matrix(product)

    def to_domain_matrix(self, domain: Any = ZZ) -> DomainMatrix:
        rows = [[domain(x) for x in self.row(i)] for i in range(self.rows)]
        return DomainMatrix(rows, self.shape, domain)


##########################
# Dense operations
##########################
def rank_rational(matrix: Union[IntegerMatrix, DomainMatrix]) -> int:
    """Rank over the rationals."""
    if isinstance(matrix, IntegerMatrix):
        if matrix.rows == 0 or matrix.cols == 0:
            return 0
        sparse = {
            i: {j: v for j, v in enumerate(matrix.row(i)) if v}
            for i in range(matrix.rows)
        }
        return sparse_rank(sparse, matrix.shape)
    if 0 in matrix.shape:
        return 0
    return matrix.convert_to(QQ).rank()


def det_integer(matrix: IntegerMatrix) -> int:
    """Exact determinant of a square integer matrix."""
    if not matrix.is_square:
        raise DimensionError(f"Determinant needs a square matrix, got {matrix.rows}x{matrix.cols}")
    if matrix.rows == 0:
        return 1
    return int(matrix.to_domain_matrix(ZZ).det())


def smith_invariants(matrix: IntegerMatrix) -> tuple[int, ...]:
    """Nonzero invariant factors of the Smith normal form; length equals the rank."""
    if matrix.rows == 0 or matrix.cols == 0:
        return ()
    factors = invariant_factors(matrix.to_domain_matrix(ZZ))
    # already a divisibility chain
    return tuple(abs(int(f)) for f in factors if f)


def unimodular_inverse(matrix: IntegerMatrix) -> IntegerMatrix:
    """Exact integer inverse of a matrix with determinant +1 or -1."""
    determinant = det_integer(matrix)
    if abs(determinant) != 1:
        raise NotUnimodularError(
            f"Matrix {matrix.to_rows()} has determinant {determinant}; an integer inverse needs determinant +1 or -1."
        )
    if matrix.rows == 0:
        return matrix
    inverse = matrix.to_domain_matrix(QQ).inv()
    return IntegerMatrix.from_domain_matrix(inverse)


##########################
# Sparse rational operations
##########################
def sparse_domain_matrix(rows: SparseRows, shape: tuple[int, int]) -> DomainMatrix:
    """Build a sparse ``DomainMatrix`` over ``QQ`` from ``{row: {col: value}}``."""
    data: dict[int, dict[int, Any]] = {}
    for i, row in rows.items():
        entries = {j: QQ.convert(v) for j, v in row.items() if v}
        if entries:
            data[i] = entries
    return DomainMatrix(data, shape, QQ)


def sparse_rank(rows: SparseRows, shape: tuple[int, int]) -> int:
    """Rank over the rationals of a sparse matrix."""
    if 0 in shape or not any(rows.values()):
        return 0
    return sparse_domain_matrix(rows, shape).rank()


def _sparse_entries(matrix: DomainMatrix) -> dict[int, dict[int, Any]]:
    return {i: dict(row) for i, row in matrix.to_sparse().rep.items()}


def rref_sparse(rows: SparseRows, shape: tuple[int, int]) -> tuple[dict[int, dict[int, Any]], tuple[int, ...]]:
    """Reduced row echelon form over ``QQ`` and its pivot columns."""
    if 0 in shape:
        return {}, ()
    reduced, pivots = sparse_domain_matrix(rows, shape).rref()
    return _sparse_entries(reduced), tuple(pivots)


def nullspace_basis(rows: SparseRows, shape: tuple[int, int]) -> list[dict[int, Any]]:
    """Kernel basis of a sparse rational matrix, one vector per free column.

    The vector for free column f has a 1 in position f; the order follows the
    free columns, which makes the basis deterministic.
    """
    n_rows, n_cols = shape
    if n_cols == 0:
        return []
    reduced, pivots = rref_sparse(rows, shape) if n_rows else ({}, ())
    pivot_rows = {}
    for r, p in enumerate(pivots):
        pivot_rows[p] = reduced.get(r, {})
    pivot_set = set(pivots)
    basis = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        vector: dict[int, Any] = {free: QQ(1)}
        for p, row in pivot_rows.items():
            value = row.get(free)
            if value:
                vector[p] = -value
        basis.append(vector)
    return basis


def columns_to_rows(columns: Sequence[SparseVector]) -> dict[int, dict[int, Any]]:
    rows: dict[int, dict[int, Any]] = {}
    for j, column in enumerate(columns):
        for i, value in column.items():
            if value:
                rows.setdefault(i, {})[j] = value
    return rows


def pivot_columns(columns: Sequence[SparseVector], n_rows: int) -> tuple[int, ...]:
    """Indices of a maximal independent prefix-greedy subset of the columns."""
    if not columns or n_rows == 0:
        return ()
    _, pivots = rref_sparse(columns_to_rows(columns), (n_rows, len(columns)))
    return pivots


def solve_columns(columns: Sequence[SparseVector], target: SparseVector, n_rows: int) -> Optional[list[Any]]:
    """Solve ``sum x_j * columns[j] = target`` over ``QQ``.

    Returns the coordinates (free variables set to zero) or ``None`` when the
    target is not in the column span.
    """
    k = len(columns)
    if not any(target.values()):
        return [QQ(0)] * k
    augmented = list(columns) + [target]
    reduced, pivots = rref_sparse(columns_to_rows(augmented), (n_rows, k + 1))
    if k in pivots:
        return None
    solution = [QQ(0)] * k
    for r, p in enumerate(pivots):
        solution[p] = reduced.get(r, {}).get(k, QQ(0))
    logging.debug(f"solved against {k} columns in dimension {n_rows}")
    return solution
