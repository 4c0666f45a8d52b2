"""Derivations, skew-symmetric derivations and the second cohomology of quadratic algebras.

Every space of maps is found as the kernel of one exact linear system in
the ``n^2`` matrix entries ``d[i][j]`` (``D e_j = sum_i d[i][j] e_i``),
flattened row-major.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .liealg import LieAlgebra, Subspace, adjoint, center
from .quadform import QuadraticLieAlgebra
from .ratlin import Mat, nullspace, rref_rows

ZERO = Fraction(0)


class MapSpace:
    """Linear span of n x n matrices, stored as the RREF of their flattenings."""

    __slots__ = ("n", "basis", "_rows", "_pivots")

    def __init__(self, n: int, maps: Iterable[Mat] = ()):
        flat = [list(m.flatten()) for m in maps]
        rows, pivots = rref_rows(flat, n * n) if flat else ([], [])
        self.n = n
        self._rows = tuple(tuple(r) for r in rows)
        self._pivots = tuple(pivots)
        self.basis = tuple(Mat(n, n, [r[i * n:(i + 1) * n] for i in range(n)]) for r in rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, d: Mat) -> bool:
        residual = list(d.flatten())
        for row, p in zip(self._rows, self._pivots):
            c = residual[p]
            if c:
                residual = [a - c * b for a, b in zip(residual, row)]
        return not any(residual)

    def contains_space(self, other: "MapSpace") -> bool:
        return all(self.contains(m) for m in other.basis)

    def combination(self, coeffs: Sequence) -> Mat:
        n = self.n
        out = Mat(n, n)
        for c, m in zip(coeffs, self.basis):
            if c:
                out = out + m * c
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, MapSpace):
            return NotImplemented
        return self.n == other.n and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.n, self._rows))

    def __repr__(self) -> str:
        return f"MapSpace(dim {self.dim} in gl({self.n}))"


def _derivation_rows(g: LieAlgebra) -> list[list[Fraction]]:
    n = g.dim
    c = g.struct
    rows = []
    for a in range(n):
        for b in range(a + 1, n):
            cab = c[a][b]
            for k in range(n):
                row = [ZERO] * (n * n)
                # D[e_a, e_b]_k
                for m in range(n):
                    if cab[m]:
                        row[k * n + m] += cab[m]
                # -[D e_a, e_b]_k - [e_a, D e_b]_k
                for i in range(n):
                    v = c[i][b][k]
                    if v:
                        row[i * n + a] -= v
                    v = c[a][i][k]
                    if v:
                        row[i * n + b] -= v
                if any(row):
                    rows.append(row)
    return rows


def _skew_rows(metric: Mat) -> list[list[Fraction]]:
    n = metric.rows
    rows = []
    for r in range(n):
        for s in range(r, n):
            # (G D + D^T G)[r][s]
            row = [ZERO] * (n * n)
            for i in range(n):
                if metric[r, i]:
                    row[i * n + s] += metric[r, i]
                if metric[i, s]:
                    row[i * n + r] += metric[i, s]
            if any(row):
                rows.append(row)
    return rows


def _admissible_rows(metric: Mat, h: Subspace) -> list[list[Fraction]]:
    # <D y, z> = 0 for y, z in h
    n = metric.rows
    rows = []
    for y in h.rows:
        for z in h.rows:
            gz = metric.apply(z)
            row = [ZERO] * (n * n)
            for i in range(n):
                if gz[i]:
                    for j in range(n):
                        if y[j]:
                            row[i * n + j] += gz[i] * y[j]
            if any(row):
                rows.append(row)
    return rows


def _space_from_rows(n: int, rows: list[list[Fraction]]) -> MapSpace:
    if not rows:
        kern = Mat(n * n, n * n, [[1 if i == j else 0 for j in range(n * n)] for i in range(n * n)])
    else:
        kern = nullspace(Mat(len(rows), n * n, rows))
    return MapSpace(n, [Mat(n, n, [col[i * n:(i + 1) * n] for i in range(n)]) for col in kern.columns()])


def is_derivation(g: LieAlgebra, d: Mat) -> bool:
    flat = d.flatten()
    return all(sum((a * b for a, b in zip(row, flat) if a), ZERO) == 0 for row in _derivation_rows(g))


def is_skew(q: QuadraticLieAlgebra, d: Mat) -> bool:
    g = q.metric.matrix
    return (g @ d + d.T @ g).is_zero()


def derivation_space(g: LieAlgebra) -> MapSpace:
    """All D with ``D[x,y] = [Dx,y] + [x,Dy]``."""
    return _space_from_rows(g.dim, _derivation_rows(g))


def skew_derivation_space(q: QuadraticLieAlgebra) -> MapSpace:
    """Derivations that are also skew-symmetric for the metric."""
    return _space_from_rows(q.dim, _derivation_rows(q.algebra) + _skew_rows(q.metric.matrix))


def inner_derivations(g: LieAlgebra) -> MapSpace:
    return MapSpace(g.dim, [adjoint(g, g.basis_vector(i)) for i in range(g.dim)])


class InconsistentMetricError(ValueError):
    """An inner derivation failed to be skew, so the metric is not invariant."""


def h2_dimension(q: QuadraticLieAlgebra) -> int:
    """``dim H^2`` as ``dim(Der ∩ so) - dim(inner derivations)``."""
    skew = skew_derivation_space(q)
    inner = inner_derivations(q.algebra)
    if not skew.contains_space(inner):
        raise InconsistentMetricError("some ad_u is not skew-symmetric for the metric")
    return skew.dim - inner.dim


def admissible_derivations(q: QuadraticLieAlgebra, h: Subspace) -> MapSpace:
    """Skew derivations ``D`` with ``D(h)`` inside the orthogonal of ``h``."""
    rows = _derivation_rows(q.algebra) + _skew_rows(q.metric.matrix) + _admissible_rows(q.metric.matrix, h)
    return _space_from_rows(q.dim, rows)


def common_kernel(space: MapSpace) -> Subspace:
    """Vectors killed by every map of the space (the whole space when it is empty)."""
    n = space.n
    if not space.basis:
        return Subspace.full(n)
    rows = [m.row(i) for m in space.basis for i in range(n)]
    return Subspace.from_columns(nullspace(Mat(len(rows), n, rows)))


def preserves(d: Mat, s: Subspace) -> bool:
    return all(s.contains(d.apply(v)) for v in s.rows)


def center_preserved(g: LieAlgebra, d: Mat) -> bool:
    return preserves(d, center(g))

