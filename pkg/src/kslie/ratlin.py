"""Exact rational dense linear algebra.

Scalars are :class:`fractions.Fraction`; matrices are immutable
:class:`Mat` values.  Row reduction is delegated to a compiled kernel when
it is importable and to a pure-Python twin otherwise (set
``KSLIE_PURE_PYTHON=1`` to force the fallback).
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

if os.environ.get("KSLIE_PURE_PYTHON"):
    from ._rref_py import rref_rows as _rref_rows

    KERNEL = "python"
else:
    try:
        from ._rref_c import rref_rows as _rref_rows

        KERNEL = "cython"
    except ImportError:  # extension not built
        from ._rref_py import rref_rows as _rref_rows

        KERNEL = "python"

Rat = Fraction
Vector = tuple  # tuple of Fraction

__all__ = [
    "KERNEL",
    "Mat",
    "Rat",
    "DimensionError",
    "as_rat",
    "vec",
    "rref",
    "nullspace",
    "solve",
    "rank",
    "det",
    "matmul",
    "transpose",
    "kron",
    "identity",
    "zeros",
    "hstack",
    "vstack",
]


class DimensionError(ValueError):
    """Raised when operand shapes are incompatible."""


def as_rat(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction (floats are refused)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def vec(*xs) -> tuple:
    if len(xs) == 1 and not isinstance(xs[0], (int, str, Fraction)):
        xs = tuple(xs[0])
    return tuple(as_rat(x) for x in xs)


class Mat:
    """Immutable rows x cols matrix of Fractions (row-major)."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: Iterable[Iterable] = ()):
        data = tuple(tuple(as_rat(x) for x in r) for r in data)
        if not data and rows:
            data = tuple((Fraction(0),) * cols for _ in range(rows))
        if len(data) != rows or any(len(r) != cols for r in data):
            raise DimensionError(f"entries do not fit a {rows}x{cols} matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_data", data)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Mat":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise DimensionError("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def from_cols(cls, cols: Sequence[Sequence], rows: int | None = None) -> "Mat":
        cols = [list(c) for c in cols]
        if rows is None:
            if not cols:
                raise DimensionError("cannot infer row count of an empty matrix")
            rows = len(cols[0])
        if any(len(c) != rows for c in cols):
            raise DimensionError("columns of unequal length")
        return cls(rows, len(cols), [[c[i] for c in cols] for i in range(rows)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.cols)]

    @property
    def T(self) -> "Mat":
        return transpose(self)

    def is_zero(self) -> bool:
        return not any(x for r in self._data for x in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def flatten(self) -> tuple:
        return tuple(x for r in self._data for x in r)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self._data)

    def __matmul__(self, other: "Mat") -> "Mat":
        return matmul(self, other)

    def __add__(self, other: "Mat") -> "Mat":
        _same_shape(self, other)
        return Mat(self.rows, self.cols,
                   [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __sub__(self, other: "Mat") -> "Mat":
        _same_shape(self, other)
        return Mat(self.rows, self.cols,
                   [[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __neg__(self) -> "Mat":
        return Mat(self.rows, self.cols, [[-a for a in r] for r in self._data])

    def __mul__(self, scalar) -> "Mat":
        s = as_rat(scalar)
        return Mat(self.rows, self.cols, [[s * a for a in r] for r in self._data])

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self._data)
        return f"Mat({self.rows}x{self.cols}: [{body}])"


def _same_shape(a: Mat, b: Mat) -> None:
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")


def identity(n: int) -> Mat:
    return Mat(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])


def zeros(rows: int, cols: int) -> Mat:
    return Mat(rows, cols)


def transpose(m: Mat) -> Mat:
    return Mat(m.cols, m.rows, [m.col(j) for j in range(m.cols)])


def matmul(a: Mat, b: Mat) -> Mat:
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    bcols = b.columns()
    zero = Fraction(0)
    return Mat(a.rows, b.cols,
               [[sum((x * y for x, y in zip(r, c) if x and y), zero) for c in bcols]
                for r in (a.row(i) for i in range(a.rows))])


def kron(a: Mat, b: Mat) -> Mat:
    return Mat(a.rows * b.rows, a.cols * b.cols,
               [[a[i, j] * b[k, l] for j in range(a.cols) for l in range(b.cols)]
                for i in range(a.rows) for k in range(b.rows)])


def hstack(*ms: Mat) -> Mat:
    if len({m.rows for m in ms}) > 1:
        raise DimensionError("hstack needs equal row counts")
    rows = ms[0].rows
    return Mat(rows, sum(m.cols for m in ms),
               [[x for m in ms for x in m.row(i)] for i in range(rows)])


def vstack(*ms: Mat) -> Mat:
    if len({m.cols for m in ms}) > 1:
        raise DimensionError("vstack needs equal column counts")
    return Mat(sum(m.rows for m in ms), ms[0].cols, [m.row(i) for m in ms for i in range(m.rows)])


def rref_rows(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Kernel entry point: nonzero RREF rows and pivot columns of a row list."""
    return _rref_rows([list(r) for r in rows], ncols)


def rref(m: Mat) -> tuple[Mat, list[int]]:
    """Reduced row-echelon form and pivot columns; zero rows are kept at the bottom."""
    rows, pivots = _rref_rows([list(m.row(i)) for i in range(m.rows)], m.cols)
    rows = rows + [[Fraction(0)] * m.cols for _ in range(m.rows - len(rows))]
    return Mat(m.rows, m.cols, rows), pivots


def rank(m: Mat) -> int:
    return len(_rref_rows([list(m.row(i)) for i in range(m.rows)], m.cols)[1])


def nullspace(m: Mat) -> Mat:
    """Matrix whose columns form a basis of ``{x : m x = 0}`` (one column per free variable)."""
    rows, pivots = _rref_rows([list(m.row(i)) for i in range(m.rows)], m.cols)
    return _kernel_from_rref(rows, pivots, m.cols)


def _kernel_from_rref(rows, pivots, ncols: int) -> Mat:
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, p in zip(rows, pivots):
            x[p] = -r[f]
        basis.append(x)
    return Mat(ncols, len(basis), [[b[i] for b in basis] for i in range(ncols)])


def solve(m: Mat, b: Mat) -> Mat | None:
    """One exact solution ``x`` of ``m x = b`` (free variables set to 0), or None if inconsistent."""
    if m.rows != b.rows:
        raise DimensionError(f"solve: {m.rows} equations but right-hand side has {b.rows} rows")
    aug = [list(m.row(i)) + list(b.row(i)) for i in range(m.rows)]
    rows, pivots = _rref_rows(aug, m.cols + b.cols)
    if pivots and pivots[-1] >= m.cols:
        return None
    x = [[Fraction(0)] * b.cols for _ in range(m.cols)]
    for r, p in zip(rows, pivots):
        x[p] = r[m.cols:]
    return Mat(m.cols, b.cols, x)


def det(m: Mat) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not m.is_square():
        raise DimensionError(f"det of non-square {m.shape} matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    a = []
    for i in range(n):
        row = m.row(i)
        den = lcm(*(x.denominator for x in row))
        a.append([x.numerator * (den // x.denominator) for x in row])
        scale /= den
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] * scale

