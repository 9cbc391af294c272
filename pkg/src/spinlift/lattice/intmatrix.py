"""
Immutable arbitrary-precision integer matrices.
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

IntVector = Tuple[int, ...]


def as_vector(values: Iterable[int]) -> IntVector:
    return tuple(int(v) for v in values)


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise ValueError(f"Length mismatch in pairing: {len(u)} vs {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def add_vectors(u: Sequence[int], v: Sequence[int]) -> IntVector:
    return tuple(a + b for a, b in zip(u, v))


def sub_vectors(u: Sequence[int], v: Sequence[int]) -> IntVector:
    return tuple(a - b for a, b in zip(u, v))


def scale_vector(k: int, v: Sequence[int]) -> IntVector:
    return tuple(k * a for a in v)


def negate(v: Sequence[int]) -> IntVector:
    return tuple(-a for a in v)


@dataclass(frozen=True)
class IntMatrix:
    """
    A rows x cols integer matrix stored row-major.

    Columns are the natural home for lattice generators: a sublattice of
    Z^rows is given by the column span of a matrix.
    """

    rows: int
    cols: int
    entries: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("Matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"Expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    # Construction

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        rows = [as_vector(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for i, r in enumerate(rows):
            if len(r) != cols:
                raise ValueError(f"Row {i} has length {len(r)}, expected {cols}")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: Optional[int] = None) -> "IntMatrix":
        columns = [as_vector(c) for c in columns]
        if rows is None:
            if not columns:
                raise ValueError("Row count is required for a matrix with no columns")
            rows = len(columns[0])
        for j, c in enumerate(columns):
            if len(c) != rows:
                raise ValueError(f"Column {j} has length {len(c)}, expected {rows}")
        return cls(
            rows,
            len(columns),
            tuple(columns[j][i] for i in range(rows) for j in range(len(columns))),
        )

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: Optional[int] = None,
                 cols: Optional[int] = None) -> "IntMatrix":
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        data = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(values):
            data[i][i] = int(v)
        return cls.from_rows(data, cols)

    # Access

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> IntVector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> IntVector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> List[List[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def to_columns(self) -> List[IntVector]:
        return [self.column(j) for j in range(self.cols)]

    def diagonal_entries(self) -> IntVector:
        return tuple(self[i, i] for i in range(min(self.rows, self.cols)))

    # Arithmetic

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_columns([self.row(i) for i in range(self.rows)], self.cols)

    def __matmul__(self, other: Union["IntMatrix", Sequence[int]]):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError(f"Shape mismatch: {self.shape} @ {other.shape}")
            other_cols = other.to_columns()
            return IntMatrix.from_rows(
                [[dot(self.row(i), c) for c in other_cols] for i in range(self.rows)],
                other.cols,
            )
        vector = as_vector(other)
        if len(vector) != self.cols:
            raise ValueError(f"Shape mismatch: {self.shape} @ vector of length {len(vector)}")
        return tuple(dot(self.row(i), vector) for i in range(self.rows))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError(f"Shape mismatch: {self.shape} + {other.shape}")
        return IntMatrix(self.rows, self.cols,
                         tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError(f"Shape mismatch: {self.shape} - {other.shape}")
        return IntMatrix(self.rows, self.cols,
                         tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scaled(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(k * a for a in self.entries))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("Row counts differ")
        return IntMatrix.from_columns(self.to_columns() + other.to_columns(), self.rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def determinant(self) -> int:
        """Fraction-free Bareiss elimination."""
        if not self.is_square():
            raise ValueError("Determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_rows()
        sign = 1
        previous = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // previous
            previous = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.is_square() and abs(self.determinant()) == 1

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0
                   for i in range(self.rows) for j in range(self.cols) if i != j)

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_rows()!r})"
