"""Exact dense linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`, which already keeps every value in
lowest terms with a positive denominator.  Matrices are immutable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]


def to_fraction(x) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-3/2"`` to a Fraction.

    Floats are refused: nothing in the exact pipeline should ever see one.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip().replace("−", "-"))
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def fraction_str(x: Fraction) -> str:
    return str(x)


def vector(values: Iterable) -> Vector:
    return tuple(to_fraction(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(1) if t == i else Fraction(0) for t in range(n))


def is_zero_vector(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def add_vectors(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise ValueError("vector length mismatch")
    return tuple(a + b for a, b in zip(u, v))


def scale_vector(c, v: Sequence) -> Vector:
    return tuple(c * a for a in v)


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise ValueError("vector length mismatch")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


class RatMatrix:
    """Immutable rows x cols matrix of Fractions (row-major)."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(to_fraction(x) for x in row) for row in data)
        if cols is None:
            if not rows:
                raise ValueError("column count required for an empty matrix")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_data", rows)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("RatMatrix is immutable")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RatMatrix:
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return cls([unit_vector(n, i) for i in range(n)], cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> RatMatrix:
        if not columns:
            return cls.zeros(rows, 0)
        return cls([[c[i] for c in columns] for i in range(rows)], cols=len(columns))

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def row_list(self) -> list[Vector]:
        return list(self._data)

    def column_list(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def transpose(self) -> RatMatrix:
        return RatMatrix([self.column(j) for j in range(self.cols)], cols=self.rows)

    T = property(transpose)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.rows, self.cols, self._data))
            object.__setattr__(self, "_hash", h)
        return h

    def __add__(self, other: RatMatrix) -> RatMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RatMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], cols=self.cols
        )

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        return self + (-other)

    def __neg__(self) -> RatMatrix:
        return RatMatrix([[-a for a in r] for r in self._data], cols=self.cols)

    def scale(self, c) -> RatMatrix:
        c = to_fraction(c)
        return RatMatrix([[c * a for a in r] for r in self._data], cols=self.cols)

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            ocols = other.column_list()
            return RatMatrix([[dot(r, c) for c in ocols] for r in self._data], cols=other.cols)
        v = tuple(other)
        if len(v) != self.cols:
            raise ValueError("shape mismatch in matrix-vector product")
        return tuple(dot(r, v) for r in self._data)

    def vstack(self, other: RatMatrix) -> RatMatrix:
        if self.cols != other.cols:
            raise ValueError("column mismatch")
        return RatMatrix(self._data + other._data, cols=self.cols)

    def hstack(self, other: RatMatrix) -> RatMatrix:
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        return RatMatrix([r + s for r, s in zip(self._data, other._data)], cols=self.cols + other.cols)

    def flatten(self) -> Vector:
        return tuple(x for r in self._data for x in r)

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._data)
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> list[int]:
    """In-place reduced row echelon form; returns pivot columns."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        pivot_row = [x * inv for x in rows[r]]
        rows[r] = pivot_row
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    rows[i] = [a - f * b for a, b in zip(rows[i], pivot_row)]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: RatMatrix) -> tuple[RatMatrix, list[int]]:
    rows = [list(r) for r in m.row_list()]
    pivots = _rref_rows(rows, m.cols)
    return RatMatrix(rows, cols=m.cols), pivots


def rank(m: RatMatrix) -> int:
    return len(rref(m)[1])


def rank_of_vectors(vectors: Sequence[Sequence], n: int) -> int:
    if not vectors:
        return 0
    return rank(RatMatrix(vectors, cols=n))


def kernel(m: RatMatrix) -> RatMatrix:
    """Null space basis, returned as the columns of a cols x nullity matrix."""
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r, f]
        basis.append(v)
    return RatMatrix.from_columns(basis, m.cols)


def kernel_vectors(m: RatMatrix) -> list[Vector]:
    return kernel(m).column_list()


def solve(m: RatMatrix, rhs: Sequence) -> Vector | None:
    """One solution of ``m @ x = rhs`` with every free variable set to zero.

    Returns None when the system is inconsistent.
    """
    b = vector(rhs)
    if len(b) != m.rows:
        raise ValueError("right-hand side length mismatch")
    aug = [list(r) + [bi] for r, bi in zip(m.row_list(), b)]
    pivots = _rref_rows(aug, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = aug[r][m.cols]
    return tuple(x)


def inverse(m: RatMatrix) -> RatMatrix:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    aug = [list(r) + list(unit_vector(n, i)) for i, r in enumerate(m.row_list())]
    pivots = _rref_rows(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return RatMatrix([row[n:] for row in aug], cols=n)


def determinant(m: RatMatrix) -> Fraction:
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    rows = [list(r) for r in m.row_list()]
    n = m.rows
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        det *= rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det
