"""Lie algebras given by structure constants, and subspaces of them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .notation import parse_brackets
from .ratlin import DimensionError, Mat, as_rat, identity, matmul, nullspace, rref_rows, solve

ZERO = Fraction(0)


def _zero_vec(n: int) -> tuple:
    return (ZERO,) * n


def unit(n: int, i: int) -> tuple:
    """Standard basis vector ``e_i`` (0-based) of length ``n``."""
    return tuple(Fraction(1) if k == i else ZERO for k in range(n))


class Subspace:
    """Subspace of Q^n in canonical form.

    The spanning vectors are kept as the nonzero rows of their reduced
    row-echelon form, so two subspaces are equal exactly when their stored
    rows are equal.
    """

    __slots__ = ("ambient_dim", "rows", "pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        vecs = [[as_rat(x) for x in v] for v in vectors]
        if any(len(v) != ambient_dim for v in vecs):
            raise DimensionError(f"vectors must have length {ambient_dim}")
        rows, pivots = rref_rows(vecs, ambient_dim) if vecs else ([], [])
        self.ambient_dim = ambient_dim
        self.rows = tuple(tuple(r) for r in rows)
        self.pivots = tuple(pivots)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, [unit(n, i) for i in range(n)])

    @classmethod
    def from_columns(cls, m: Mat) -> "Subspace":
        return cls(m.rows, m.columns())

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> list[tuple]:
        return list(self.rows)

    @property
    def matrix(self) -> Mat:
        """Spanning vectors as columns (column-reduced echelon form)."""
        if not self.rows:
            return Mat(self.ambient_dim, 0)
        return Mat.from_cols(self.rows, self.ambient_dim)

    def contains(self, v: Sequence) -> bool:
        residual = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = residual[p]
            if c:
                residual = [a - c * b for a, b in zip(residual, row)]
        return not any(residual)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.rows)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient_dim, list(self.rows) + list(other.rows))

    def intersect(self, other: "Subspace") -> "Subspace":
        if not self.rows or not other.rows:
            return Subspace.zero(self.ambient_dim)
        a, b = self.matrix, other.matrix
        # columns of [a | -b] kernel give coefficients of common vectors
        stacked = Mat(self.ambient_dim, a.cols + b.cols,
                      [list(a.row(i)) + [-x for x in b.row(i)] for i in range(self.ambient_dim)])
        kern = nullspace(stacked)
        vecs = [a.apply(k[:a.cols]) for k in kern.columns()]
        return Subspace(self.ambient_dim, vecs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.rows))

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} in Q^{self.ambient_dim})"


@dataclass(frozen=True)
class JacobiViolation:
    i: int
    j: int
    k: int
    residual: tuple


class LieAlgebra:
    """Structure constants ``[e_i, e_j] = sum_k c[i][j][k] e_k`` over Q.

    ``struct[i][j]`` holds the coordinate vector of ``[e_i, e_j]``.
    Antisymmetry is enforced at construction; the Jacobi identity is not
    (see :func:`check_jacobi`).
    """

    __slots__ = ("dim", "names", "struct")

    def __init__(self, names: Sequence[str], struct: Sequence[Sequence[Sequence]]):
        n = len(names)
        rows = tuple(tuple(tuple(as_rat(x) for x in v) for v in row) for row in struct)
        if len(rows) != n or any(len(r) != n for r in rows) or any(len(v) != n for r in rows for v in r):
            raise DimensionError(f"structure constants must be {n}x{n}x{n}")
        for i in range(n):
            for j in range(n):
                if any(a != -b for a, b in zip(rows[i][j], rows[j][i])):
                    raise ValueError(f"structure constants not antisymmetric at ({i + 1},{j + 1})")
        self.dim = n
        self.names = tuple(names)
        self.struct = rows

    @classmethod
    def from_brackets(cls, names: Sequence[str], brackets: Mapping[tuple[int, int], Sequence]) -> "LieAlgebra":
        """Build from the nonzero brackets ``{(i, j): vector}`` (0-based, i != j)."""
        n = len(names)
        c = [[list(_zero_vec(n)) for _ in range(n)] for _ in range(n)]
        for (i, j), v in brackets.items():
            if i == j:
                if any(v):
                    raise ValueError(f"[e{i + 1},e{i + 1}] must vanish")
                continue
            if any(c[i][j]):
                raise ValueError(f"bracket ({i + 1},{j + 1}) given twice")
            v = [as_rat(x) for x in v]
            c[i][j] = v
            c[j][i] = [-x for x in v]
        return cls(names, c)

    @classmethod
    def from_notation(cls, names: Sequence[str], text: str, params: Mapping | None = None) -> "LieAlgebra":
        return cls.from_brackets(names, parse_brackets(text, names, params) if text.strip() else {})

    @classmethod
    def abelian(cls, n: int, names: Sequence[str] | None = None) -> "LieAlgebra":
        return cls.from_brackets(names or [f"e{i + 1}" for i in range(n)], {})

    def basis_vector(self, i: int) -> tuple:
        return unit(self.dim, i)

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        n = self.dim
        if len(x) != n or len(y) != n:
            raise DimensionError(f"bracket of vectors of lengths {len(x)}, {len(y)} in dim {n}")
        out = [ZERO] * n
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.struct[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, v in enumerate(row[j]):
                    if v:
                        out[k] += c * v
        return tuple(out)

    def brackets(self) -> dict[tuple[int, int], tuple]:
        """Nonzero brackets with ``i < j``."""
        return {(i, j): self.struct[i][j] for i in range(self.dim) for j in range(i + 1, self.dim)
                if any(self.struct[i][j])}

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.struct == other.struct

    def __hash__(self) -> int:
        return hash(self.struct)

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim})"


def bracket(g: LieAlgebra, x: Sequence, y: Sequence) -> tuple:
    return g.bracket(x, y)


def check_jacobi(g: LieAlgebra) -> JacobiViolation | None:
    """First basis triple (0-based, i<j<k) on which the Jacobi identity fails, or None."""
    n = g.dim
    e = [g.basis_vector(i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                a = g.bracket(g.struct[i][j], e[k])
                b = g.bracket(g.struct[j][k], e[i])
                c = g.bracket(g.struct[k][i], e[j])
                res = tuple(x + y + z for x, y, z in zip(a, b, c))
                if any(res):
                    return JacobiViolation(i, j, k, res)
    return None


def adjoint(g: LieAlgebra, x: Sequence) -> Mat:
    """Matrix of ``ad_x``; column j is ``[x, e_j]``."""
    return Mat.from_cols([g.bracket(x, g.basis_vector(j)) for j in range(g.dim)], g.dim)


def killing_matrix(g: LieAlgebra) -> Mat:
    ads = [adjoint(g, g.basis_vector(i)) for i in range(g.dim)]
    n = g.dim
    return Mat(n, n, [[_trace(matmul(ads[i], ads[j])) for j in range(n)] for i in range(n)])


def killing_form(g: LieAlgebra):
    """Killing form ``k(u, v) = tr(ad_u ad_v)`` as a symmetric BilinearForm."""
    from .quadform import BilinearForm

    return BilinearForm(killing_matrix(g), symmetric=True)


def _trace(m: Mat) -> Fraction:
    return sum((m[i, i] for i in range(m.rows)), ZERO)


def center(g: LieAlgebra) -> Subspace:
    """Joint kernel of all ``ad_{e_i}``."""
    n = g.dim
    rows = []
    for i in range(n):
        # x in center iff [e_i, x] = 0 for every i: rows of ad_{e_i}
        ad = adjoint(g, g.basis_vector(i))
        rows.extend(ad.row(r) for r in range(n))
    if not rows:
        return Subspace.full(n)
    return Subspace.from_columns(nullspace(Mat(len(rows), n, rows)))


def bracket_space(g: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    return Subspace(g.dim, [g.bracket(x, y) for x in a.rows for y in b.rows])


def derived_subalgebra(g: LieAlgebra) -> Subspace:
    full = Subspace.full(g.dim)
    return bracket_space(g, full, full)


def lower_central_series(g: LieAlgebra) -> list[Subspace]:
    """``g, [g,g], [g,[g,g]], ...`` up to (not repeating) the first stable term."""
    full = Subspace.full(g.dim)
    series = [full]
    while True:
        nxt = bracket_space(g, full, series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def derived_series(g: LieAlgebra) -> list[Subspace]:
    series = [Subspace.full(g.dim)]
    while True:
        nxt = bracket_space(g, series[-1], series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def is_nilpotent(g: LieAlgebra) -> bool:
    return lower_central_series(g)[-1].dim == 0


def is_solvable(g: LieAlgebra) -> bool:
    return derived_series(g)[-1].dim == 0


def is_abelian(g: LieAlgebra) -> bool:
    return not any(any(v) for row in g.struct for v in row)


def is_subalgebra(g: LieAlgebra, s: Subspace) -> bool:
    _check_ambient(g, s)
    return all(s.contains(g.bracket(x, y)) for i, x in enumerate(s.rows) for y in s.rows[i + 1:])


def is_ideal(g: LieAlgebra, s: Subspace) -> bool:
    _check_ambient(g, s)
    return all(s.contains(g.bracket(g.basis_vector(i), y)) for i in range(g.dim) for y in s.rows)


def _check_ambient(g: LieAlgebra, s: Subspace) -> None:
    if s.ambient_dim != g.dim:
        raise DimensionError(f"subspace of Q^{s.ambient_dim} in algebra of dim {g.dim}")


def direct_product(g1: LieAlgebra, g2: LieAlgebra) -> LieAlgebra:
    """Block-diagonal product; basis is g1's followed by g2's."""
    n1, n = g1.dim, g1.dim + g2.dim
    c = [[_zero_vec(n) for _ in range(n)] for _ in range(n)]
    for i in range(n1):
        for j in range(n1):
            c[i][j] = tuple(g1.struct[i][j]) + _zero_vec(g2.dim)
    for i in range(g2.dim):
        for j in range(g2.dim):
            c[n1 + i][n1 + j] = _zero_vec(n1) + tuple(g2.struct[i][j])
    names = list(g1.names) + [nm if nm not in g1.names else f"{nm}'" for nm in g2.names]
    return LieAlgebra(names, c)


def change_basis(g: LieAlgebra, p: Mat) -> LieAlgebra:
    """Structure constants in the basis given by the columns of the invertible matrix ``p``."""
    n = g.dim
    cols = p.columns()
    brackets = {}
    for i in range(n):
        for j in range(i + 1, n):
            b = g.bracket(cols[i], cols[j])
            if any(b):
                coords = solve(p, Mat.from_cols([b], n))
                if coords is None:
                    raise ValueError("change of basis matrix is singular")
                brackets[(i, j)] = coords.col(0)
    if p.rows != n or p.cols != n or solve(p, identity(n)) is None:
        raise ValueError("change of basis matrix is singular")
    return LieAlgebra.from_brackets([f"f{i + 1}" for i in range(n)], brackets)
