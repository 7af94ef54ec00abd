"""Exact rational matrices and the kernel / rank / solve primitives.

Entries are ``fractions.Fraction``; nothing in this module touches floating
point. Row reduction is delegated to sympy over the rationals and converted
back, so the reduced form and kernel basis are canonical.
"""

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Optional, Sequence, Union

import numpy as np
import sympy as sp

Rational = Fraction
RatVector = tuple[Fraction, ...]
RationalLike = Union[int, str, Fraction, Decimal]


def to_rational(value: RationalLike) -> Fraction:
    """
    Convert a literal to an exact Fraction.

    Strings may be integers, "p/q" or decimals ("0.5" becomes 1/2). Floats are
    rejected because their binary expansion is rarely what the user meant.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"Refusing inexact literal {value!r}; pass a string or Fraction")
    if isinstance(value, str):
        value = value.strip()
        if not value:
            raise ValueError("Empty rational literal")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"Invalid rational literal {value!r}: {e}") from e


def format_rational(value: Fraction) -> str:
    """Render as "p" or "p/q"."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def to_vector(values: Iterable[RationalLike]) -> RatVector:
    return tuple(to_rational(v) for v in values)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise ValueError(f"Length mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def is_zero_vector(v: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in v)


def integer_primitive(v: Sequence[Fraction]) -> tuple[int, ...]:
    """
    Scale v to the integer vector with coprime entries whose first nonzero
    entry is positive. The zero vector is returned unchanged.
    """
    v = [Fraction(x) for x in v]
    if is_zero_vector(v):
        return tuple(0 for _ in v)
    denominator = reduce(lcm, (x.denominator for x in v), 1)
    ints = [int(x * denominator) for x in v]
    divisor = reduce(gcd, (abs(x) for x in ints if x), 0)
    ints = [x // divisor for x in ints]
    leading = next(x for x in ints if x)
    if leading < 0:
        ints = [-x for x in ints]
    return tuple(ints)


@dataclass(frozen=True)
class RatMatrix:
    """Immutable row-major matrix of Fractions."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("Matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"Expected {self.rows * self.cols} entries for a {self.rows}x{self.cols} "
                f"matrix, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[RationalLike]], cols: Optional[int] = None) -> "RatMatrix":
        rows = [to_vector(r) for r in rows]
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        if any(len(r) != width for r in rows):
            raise ValueError("Ragged rows")
        return cls(len(rows), width, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[RationalLike]], rows: Optional[int] = None) -> "RatMatrix":
        columns = [to_vector(c) for c in columns]
        height = rows if rows is not None else (len(columns[0]) if columns else 0)
        if any(len(c) != height for c in columns):
            raise ValueError("Ragged columns")
        return cls(
            height,
            len(columns),
            tuple(columns[j][i] for i in range(height) for j in range(len(columns))),
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, tuple(Fraction(0) for _ in range(rows * cols)))

    @classmethod
    def identity(cls, size: int) -> "RatMatrix":
        return cls(
            size,
            size,
            tuple(Fraction(int(i == j)) for i in range(size) for j in range(size)),
        )

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> RatVector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> RatVector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[RatVector]:
        return [self.row(i) for i in range(self.rows)]

    def to_columns(self) -> list[RatVector]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix.from_rows(self.to_columns(), cols=self.rows)

    def select_columns(self, indices: Sequence[int]) -> "RatMatrix":
        return RatMatrix.from_columns([self.column(j) for j in indices], rows=self.rows)

    def stack(self, other: "RatMatrix") -> "RatMatrix":
        """Vertical concatenation."""
        if self.rows and other.rows and self.cols != other.cols:
            raise ValueError("Column count mismatch in stack")
        cols = self.cols if self.rows else other.cols
        return RatMatrix(self.rows + other.rows, cols, self.entries + other.entries)

    def apply(self, v: Sequence[Fraction]) -> RatVector:
        """Matrix-vector product Mv."""
        if len(v) != self.cols:
            raise ValueError(f"Vector of length {len(v)} for a matrix with {self.cols} columns")
        return tuple(dot(self.row(i), v) for i in range(self.rows))

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        columns = [self.apply(other.column(j)) for j in range(other.cols)]
        return RatMatrix.from_columns(columns, rows=self.rows)

    def to_sympy(self) -> sp.Matrix:
        return sp.Matrix(
            self.rows, self.cols, [sp.Rational(x.numerator, x.denominator) for x in self.entries]
        )

    def to_float(self) -> np.ndarray:
        return np.array(
            [[float(x) for x in self.row(i)] for i in range(self.rows)], dtype=float
        ).reshape(self.rows, self.cols)


def _from_sympy(value) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def _reduce(M: RatMatrix) -> tuple[list[RatVector], list[int]]:
    """Nonzero rows of the reduced row echelon form and the pivot columns."""
    if M.rows == 0 or M.cols == 0:
        return [], []
    reduced, pivots = M.to_sympy().rref()
    rows = [
        tuple(_from_sympy(reduced[i, j]) for j in range(M.cols)) for i in range(len(pivots))
    ]
    return rows, list(pivots)


def rref(M: RatMatrix) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form (nonzero rows only) and the pivot columns."""
    reduced, pivots = _reduce(M)
    return RatMatrix.from_rows(reduced, cols=M.cols), pivots


def rank(M: RatMatrix) -> int:
    """Exact rank over the rationals."""
    if M.rows == 0 or M.cols == 0:
        return 0
    return M.to_sympy().rank()


def vectors_rank(vectors: Sequence[Sequence[Fraction]], dim: int) -> int:
    """Rank of the span of the given vectors in Q^dim."""
    if not vectors:
        return 0
    return rank(RatMatrix.from_rows(vectors, cols=dim))


def kernel_basis(M: RatMatrix) -> list[RatVector]:
    """
    Basis of {v : Mv = 0}.

    One vector per free column in increasing column order, each scaled to
    integer-primitive form with its first nonzero entry positive. Empty when
    the kernel is trivial.
    """
    if M.cols == 0:
        return []
    if M.rows == 0:
        return RatMatrix.identity(M.cols).to_rows()
    basis = []
    for v in M.to_sympy().nullspace():
        primitive = integer_primitive([_from_sympy(x) for x in v])
        basis.append(tuple(Fraction(x) for x in primitive))
    return basis


def solve_exact(
    M: RatMatrix, b: Sequence[RationalLike]
) -> Optional[tuple[RatVector, list[RatVector]]]:
    """
    Solve Mx = b exactly.

    Returns None when the system is inconsistent, otherwise the particular
    solution with every free variable set to zero together with kernel_basis(M).
    """
    b = to_vector(b)
    if len(b) != M.rows:
        raise ValueError(f"Right-hand side of length {len(b)} for a matrix with {M.rows} rows")
    augmented = RatMatrix.from_rows([M.row(i) + (b[i],) for i in range(M.rows)], cols=M.cols + 1)
    reduced, pivots = _reduce(augmented)
    if pivots and pivots[-1] == M.cols:
        return None
    x = [Fraction(0)] * M.cols
    for row, p in zip(reduced, pivots):
        x[p] = row[M.cols]
    return tuple(x), kernel_basis(M)
