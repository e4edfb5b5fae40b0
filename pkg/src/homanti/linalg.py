"""Exact rational scalars, dense matrices and elimination primitives.

Scalars are :class:`fractions.Fraction`, which already keeps numerator and
denominator in lowest terms with a positive denominator.  The text format is
strict: ``"p"`` or ``"p/q"`` with an optional leading ``-`` and nothing else.

Rank and nullspace go through fraction-free Bareiss elimination on an
integer copy of the matrix (each row is scaled by the lcm of its
denominators, which changes neither the rank nor the kernel).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

from . import _backend
from .errors import ShapeError

Rational = Fraction

#: Two primes just above 2**31; squares of residues fit in 64 bits.
MODULAR_PRIMES = (2147483659, 2147483693)

_RATIONAL_RE = re.compile(r"^-?[0-9]+(/[0-9]+)?$")

ZERO = Fraction(0)
ONE = Fraction(1)


class RationalFormatError(ValueError):
    """Raised for text that is not a canonical-syntax rational."""


def rational_parse(text: str) -> Fraction:
    """Parse ``"-3"`` or ``"6/4"`` into a canonical Fraction."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise RationalFormatError(f"malformed rational: {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise RationalFormatError(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def rational_format(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and rational strings; floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return rational_parse(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class Matrix:
    """Immutable dense matrix over the rationals."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data, cols: int | None = None):
        if isinstance(data, Matrix):
            self.rows, self.cols, self._data = data.rows, data.cols, data._data
            return
        rows = tuple(tuple(as_rational(x) for x in r) for r in data)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ShapeError("ragged matrix rows")
            if cols is not None and cols != width:
                raise ShapeError("column count mismatch")
        else:
            width = 0 if cols is None else cols
        self.rows = len(rows)
        self.cols = width
        self._data = rows

    # construction helpers
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[ZERO] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls([[as_rational(values[i]) if i == j else ZERO for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "Matrix":
        return cls([[col[i] for col in columns] for i in range(nrows)], cols=len(columns))

    # access
    @property
    def entries(self) -> tuple:
        return tuple(x for r in self._data for x in r)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list:
        return [list(r) for r in self._data]

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    # arithmetic
    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __repr__(self):
        body = "; ".join(" ".join(rational_format(x) for x in r) for r in self._data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def __add__(self, other: "Matrix") -> "Matrix":
        _same_shape(self, other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], cols=self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        _same_shape(self, other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], cols=self.cols)

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self._data], cols=self.cols)

    def scale(self, c) -> "Matrix":
        c = as_rational(c)
        return Matrix([[c * a for a in r] for r in self._data], cols=self.cols)

    def transpose(self) -> "Matrix":
        return Matrix([[self._data[i][j] for i in range(self.rows)] for j in range(self.cols)], cols=self.rows)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise ShapeError(f"vector length {len(v)} does not match {self.cols} columns")
        return tuple(sum((a * b for a, b in zip(r, v) if b), ZERO) for r in self._data)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
            cols = list(zip(*other._data)) if other.rows else [()] * other.cols
            return Matrix(
                [[sum((a * b for a, b in zip(r, c) if a and b), ZERO) for c in cols] for r in self._data],
                cols=other.cols,
            )
        return self.apply(other)


def _same_shape(a: Matrix, b: Matrix) -> None:
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch {a.shape} vs {b.shape}")


def as_matrix(m) -> Matrix:
    return m if isinstance(m, Matrix) else Matrix(m)


def integer_rows(m: Matrix) -> list:
    """Rows scaled to integers by the lcm of their denominators."""
    out = []
    for r in m._data:
        den = 1
        for x in r:
            if x.denominator != 1:
                den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([int(x * den) for x in r])
    return out


def rank(m) -> int:
    """Rank over Q via fraction-free elimination."""
    m = as_matrix(m)
    if m.rows == 0 or m.cols == 0:
        return 0
    _, pivots = _backend.bareiss_echelon(integer_rows(m), m.cols)
    return len(pivots)


def _back_substitute(ech, pivots, ncols, free_values):
    """Solve the echelon system for pivot variables given the free ones.

    ``free_values`` maps free column -> value; ``rhs`` values (if any) live
    in an extra trailing column of ``ech`` and are read when ncols is the
    index of that column.
    """
    x = [ZERO] * ncols
    for c, v in free_values.items():
        x[c] = v
    for r in range(len(pivots) - 1, -1, -1):
        row = ech[r]
        c = pivots[r]
        acc = Fraction(row[ncols]) if len(row) > ncols else ZERO
        for j in range(c + 1, ncols):
            if row[j] and x[j]:
                acc -= row[j] * x[j]
        x[c] = acc / row[c]
    return x


def nullspace_basis(m) -> list:
    """Basis of {v : m v = 0}.

    Each vector has a 1 in its own free column and 0 in every other free
    column, so coordinates of a kernel element in this basis are just its
    free-column entries.
    """
    m = as_matrix(m)
    n = m.cols
    if m.rows == 0:
        ech, pivots = [], []
    else:
        ech, pivots = _backend.bareiss_echelon(integer_rows(m), n)
    pivset = set(pivots)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = tuple(_back_substitute(ech, pivots, n, {f: ONE}))
        basis.append(v)
    for v in basis:
        if any(x != 0 for x in m.apply(v)):  # pragma: no cover - guards the kernel
            raise ArithmeticError("nullspace vector failed verification")
    return basis


def free_columns(m) -> list:
    """Non-pivot columns, matching the order of :func:`nullspace_basis`."""
    m = as_matrix(m)
    if m.rows == 0:
        return list(range(m.cols))
    _, pivots = _backend.bareiss_echelon(integer_rows(m), m.cols)
    pivset = set(pivots)
    return [c for c in range(m.cols) if c not in pivset]


class NoSolution:
    """Returned by :func:`solve` for an inconsistent system."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self):
        return False

    def __repr__(self):
        return "NoSolution"


NO_SOLUTION = NoSolution()


def solve(m, b: Sequence):
    """Some exact x with m x = b, or ``NO_SOLUTION``."""
    m = as_matrix(m)
    b = [as_rational(x) for x in b]
    if len(b) != m.rows:
        raise ShapeError(f"right-hand side has length {len(b)}, expected {m.rows}")
    n = m.cols
    if m.rows == 0:
        return tuple([ZERO] * n)
    aug = Matrix([list(r) + [bi] for r, bi in zip(m._data, b)], cols=n + 1)
    ech, pivots = _backend.bareiss_echelon(integer_rows(aug), n + 1)
    if pivots and pivots[-1] == n:
        return NO_SOLUTION
    x = tuple(_back_substitute(ech, pivots, n, {}))
    if list(m.apply(x)) != b:  # pragma: no cover - guards the kernel
        raise ArithmeticError("solution failed verification")
    return x


def kron(a, b) -> Matrix:
    a, b = as_matrix(a), as_matrix(b)
    rows = []
    for ra in a._data:
        for rb in b._data:
            rows.append([x * y for x in ra for y in rb])
    return Matrix(rows, cols=a.cols * b.cols)


def mat_pow(m, e: int) -> Matrix:
    m = as_matrix(m)
    if not m.is_square():
        raise ShapeError("mat_pow needs a square matrix")
    if e < 0:
        raise ValueError("negative exponent")
    result = Matrix.identity(m.rows)
    base = m
    while e:
        if e & 1:
            result = result @ base
        e >>= 1
        if e:
            base = base @ base
    return result


def block_diag(a, b) -> Matrix:
    a, b = as_matrix(a), as_matrix(b)
    rows = [list(r) + [ZERO] * b.cols for r in a._data]
    rows += [[ZERO] * a.cols + list(r) for r in b._data]
    return Matrix(rows, cols=a.cols + b.cols)


def hstack(mats: Sequence[Matrix], nrows: int) -> Matrix:
    cols = sum(m.cols for m in mats)
    return Matrix([[x for m in mats for x in m.row(i)] for i in range(nrows)], cols=cols)


# ---------------------------------------------------------------- oracles

def modular_rank(m, p: int) -> int:
    """Rank of m reduced modulo the prime p (never exceeds the rational rank)."""
    m = as_matrix(m)
    rows = []
    for r in m._data:
        row = []
        for x in r:
            if x.denominator % p == 0:
                raise ArithmeticError(f"denominator divisible by {p}")
            row.append(x.numerator * pow(x.denominator, p - 2, p) % p)
        rows.append(row)
    if not rows or m.cols == 0:
        return 0
    return _backend.modular_rank(rows, m.cols, p)


def rank_dual_oracle(m) -> int:
    """Rank by plain Fraction Gauss-Jordan with a different pivot order.

    Columns are scanned right to left and the pivot is the last eligible row,
    so the elimination path shares nothing with the Bareiss kernel.
    """
    m = as_matrix(m)
    a = [list(r) for r in m._data]
    nrows = len(a)
    r = 0
    for c in range(m.cols - 1, -1, -1):
        piv = -1
        for i in range(nrows - 1, r - 1, -1):
            if a[i][c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        a[r], a[piv] = a[piv], a[r]
        pv = a[r][c]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c] / pv
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == nrows:
            break
    return r


def vec_is_zero(v: Iterable) -> bool:
    return all(x == 0 for x in v)
