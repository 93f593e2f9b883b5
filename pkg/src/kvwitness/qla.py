"""Exact rational vectors and matrices.

Scalars are :class:`fractions.Fraction`; nothing in this module touches floating
point.  Matrices here are tiny (rank of a Picard lattice, a dozen or so), so the
algorithms are the textbook ones.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .errors import DimensionMismatch, NotSymmetric, SingularMatrix

Rational = Fraction
Scalar = Union[int, str, Fraction]


def rational(x: Scalar) -> Fraction:
    """Coerce ``x`` to a Fraction, rejecting floats."""
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, a 'n/d' string or a Fraction")
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    return Fraction(x)


class QVector:
    """Immutable vector of rationals."""

    __slots__ = ("_e",)

    def __init__(self, entries: Iterable[Scalar] = ()):
        self._e: tuple[Fraction, ...] = tuple(x if type(x) is Fraction else rational(x) for x in entries)

    @classmethod
    def zeros(cls, n: int) -> "QVector":
        return cls([0] * n)

    @classmethod
    def unit(cls, n: int, i: int) -> "QVector":
        v = [0] * n
        v[i] = 1
        return cls(v)

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return self._e

    def __len__(self) -> int:
        return len(self._e)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self._e)

    def __getitem__(self, i):
        return self._e[i]

    def __eq__(self, other) -> bool:
        if isinstance(other, QVector):
            return self._e == other._e
        if isinstance(other, (tuple, list)):
            return len(other) == len(self._e) and all(a == b for a, b in zip(self._e, other))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._e)

    def __repr__(self) -> str:
        return "QVector([" + ", ".join(str(x) for x in self._e) + "])"

    def _check(self, other: "QVector") -> None:
        if len(other) != len(self):
            raise DimensionMismatch(f"vector lengths {len(self)} and {len(other)} differ")

    def __add__(self, other: "QVector") -> "QVector":
        self._check(other)
        return QVector(a + b for a, b in zip(self._e, other._e))

    def __sub__(self, other: "QVector") -> "QVector":
        self._check(other)
        return QVector(a - b for a, b in zip(self._e, other._e))

    def __neg__(self) -> "QVector":
        return QVector(-a for a in self._e)

    def __mul__(self, k: Scalar) -> "QVector":
        k = rational(k)
        return QVector(k * a for a in self._e)

    __rmul__ = __mul__

    def dot(self, other: "QVector") -> Fraction:
        self._check(other)
        return sum((a * b for a, b in zip(self._e, other._e)), Fraction(0))

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self._e)


class QMatrix:
    """Immutable dense matrix of rationals, stored row-major."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, rows: int, cols: int, entries: Sequence[Scalar]):
        if len(entries) != rows * cols:
            raise DimensionMismatch(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self._e: tuple[Fraction, ...] = tuple(x if type(x) is Fraction else rational(x) for x in entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "QMatrix":
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        if any(len(r) != m for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(n, m, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def diagonal(cls, diag: Sequence[Scalar]) -> "QMatrix":
        n = len(diag)
        return cls(n, n, [diag[i] if i == j else 0 for i in range(n) for j in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._e[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._e[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return (self.rows, self.cols, self._e) == (other.rows, other.cols, other._e)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._e))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"QMatrix[{body}]"

    def __neg__(self) -> "QMatrix":
        return QMatrix(self.rows, self.cols, [-x for x in self._e])

    def __matmul__(self, other):
        if isinstance(other, QVector):
            if len(other) != self.cols:
                raise DimensionMismatch(f"{self.rows}x{self.cols} matrix times length-{len(other)} vector")
            return QVector(
                sum((a * b for a, b in zip(self.row(i), other)), Fraction(0)) for i in range(self.rows)
            )
        if isinstance(other, QMatrix):
            if other.rows != self.cols:
                raise DimensionMismatch("inner dimensions differ")
            return QMatrix(
                self.rows,
                other.cols,
                [
                    sum((self[i, k] * other[k, j] for k in range(self.cols)), Fraction(0))
                    for i in range(self.rows)
                    for j in range(other.cols)
                ],
            )
        return NotImplemented

    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def submatrix(self, idx: Sequence[int]) -> "QMatrix":
        """Principal submatrix on the given row/column indices."""
        return QMatrix(len(idx), len(idx), [self[i, j] for i in idx for j in idx])

    def bilinear(self, a: QVector, b: QVector) -> Fraction:
        if len(a) != self.rows or len(b) != self.cols:
            raise DimensionMismatch(
                f"bilinear form of size {self.rows}x{self.cols} applied to lengths {len(a)}, {len(b)}"
            )
        return a.dot(self @ b)


def _forward_eliminate(a: list[list[Fraction]], b: list[Fraction] | None = None) -> list[int]:
    """In-place row echelon form with first-nonzero pivoting; returns pivot columns."""
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            if b is not None:
                b[r], b[piv] = b[piv], b[r]
        p = a[r][c]
        for i in range(r + 1, n_rows):
            f = a[i][c]
            if f == 0:
                continue
            f /= p
            row_i, row_r = a[i], a[r]
            for j in range(c, n_cols):
                row_i[j] -= f * row_r[j]
            if b is not None:
                b[i] -= f * b[r]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return pivots


def solve_linear(m: QMatrix, rhs: QVector) -> QVector:
    """Return the unique ``x`` with ``m @ x == rhs``.

    Raises SingularMatrix when ``m`` is not invertible.
    """
    if not m.is_square:
        raise DimensionMismatch(f"solve_linear needs a square matrix, got {m.rows}x{m.cols}")
    if len(rhs) != m.rows:
        raise DimensionMismatch(f"rhs has length {len(rhs)}, matrix has {m.rows} rows")
    n = m.rows
    a = m.to_rows()
    b = list(rhs)
    pivots = _forward_eliminate(a, b)
    if len(pivots) != n:
        raise SingularMatrix(f"matrix has rank {len(pivots)} < {n}")
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = b[i] - sum((a[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        x[i] = s / a[i][i]
    return QVector(x)


def determinant(m: QMatrix) -> Fraction:
    if not m.is_square:
        raise DimensionMismatch("determinant of a non-square matrix")
    n = m.rows
    a = m.to_rows()
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                for j in range(c, n):
                    a[i][j] -= f * a[c][j]
    return det


def rank(m: QMatrix) -> int:
    return len(_forward_eliminate(m.to_rows()))


def leading_minors(m: QMatrix) -> list[Fraction]:
    return [determinant(m.submatrix(range(k))) for k in range(1, m.rows + 1)]


def is_negative_definite(m: QMatrix) -> bool:
    """True iff the symmetric matrix ``m`` is negative definite.

    Sylvester's criterion applied to ``-m``: the k-th leading minor of ``m``
    must have sign (-1)^k.
    """
    if not m.is_symmetric():
        raise NotSymmetric("negative-definiteness is only defined here for symmetric matrices")
    for k, minor in enumerate(leading_minors(m), start=1):
        if minor == 0 or (minor > 0) != (k % 2 == 0):
            return False
    return True


def floor_rationals(v: QVector | Sequence[Scalar]) -> QVector:
    return QVector(math.floor(rational(x)) for x in v)
