"""Bilinear forms on Lie algebras: invariant metrics and 2-cocycles."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .liealg import LieAlgebra, Subspace, adjoint
from .notation import parse_wedge
from .ratlin import DimensionError, Mat, det, identity, matmul, nullspace, rank, solve

__all__ = [
    "BilinearForm",
    "QuadraticLieAlgebra",
    "FormViolation",
    "NotQuadraticError",
    "check_invariance",
    "is_nondegenerate",
    "orthogonal_complement",
    "is_degenerate_on",
    "gram_on",
    "check_cocycle",
    "form_from_derivation",
    "derivation_from_form",
    "wedge",
    "is_negative_definite",
]


class BilinearForm:
    """Bilinear form ``b(u, v) = u^T M v`` tagged symmetric or antisymmetric."""

    __slots__ = ("matrix", "symmetric")

    def __init__(self, matrix: Mat | Sequence[Sequence], symmetric: bool):
        if not isinstance(matrix, Mat):
            matrix = Mat.from_rows(matrix)
        if not matrix.is_square():
            raise DimensionError(f"bilinear form needs a square matrix, got {matrix.shape}")
        expected = matrix.T if symmetric else -matrix.T
        if matrix != expected:
            kind = "symmetric" if symmetric else "antisymmetric"
            raise ValueError(f"matrix is not {kind}")
        self.matrix = matrix
        self.symmetric = symmetric

    @classmethod
    def from_entries(cls, n: int, entries: Mapping[tuple[int, int], object], symmetric: bool = True,
                     scale=1) -> "BilinearForm":
        """Form from 0-based upper entries; the mirrored entry is filled by (anti)symmetry."""
        m = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), v in entries.items():
            v = Fraction(v) * scale
            m[i][j] = v
            if i != j:
                m[j][i] = v if symmetric else -v
            elif not symmetric and v:
                raise ValueError("antisymmetric form with a diagonal entry")
        return cls(Mat(n, n, m), symmetric)

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def __call__(self, u: Sequence, v: Sequence) -> Fraction:
        return sum((a * b for a, b in zip(u, self.matrix.apply(v))), Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BilinearForm):
            return NotImplemented
        return self.symmetric == other.symmetric and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash((self.symmetric, self.matrix))

    def __add__(self, other: "BilinearForm") -> "BilinearForm":
        return BilinearForm(self.matrix + other.matrix, self.symmetric)

    def __mul__(self, scalar) -> "BilinearForm":
        return BilinearForm(self.matrix * scalar, self.symmetric)

    __rmul__ = __mul__

    def kernel(self) -> Subspace:
        return Subspace.from_columns(nullspace(self.matrix))

    def __repr__(self) -> str:
        return f"BilinearForm({'sym' if self.symmetric else 'antisym'}, {self.matrix!r})"


def wedge(text: str, names: Sequence[str], params: Mapping | None = None) -> BilinearForm:
    """2-form from notation such as ``"e3*^e2* + b e1*^e2*"``."""
    return BilinearForm(Mat.from_rows(parse_wedge(text, names, params)), symmetric=False)


@dataclass(frozen=True)
class FormViolation:
    """Basis triple (0-based) witnessing a failed identity, with the offending value."""

    u: int
    v: int
    w: int
    value: Fraction


class NotQuadraticError(ValueError):
    pass


def check_invariance(g: LieAlgebra, b: BilinearForm) -> FormViolation | None:
    """First triple with ``<[u,v],w> + <[u,w],v> != 0``, or None when ``b`` is invariant."""
    if b.dim != g.dim:
        raise DimensionError("form and algebra dimensions differ")
    n = g.dim
    e = [g.basis_vector(i) for i in range(n)]
    for u in range(n):
        for v in range(n):
            for w in range(v, n):
                val = b(g.struct[u][v], e[w]) + b(g.struct[u][w], e[v])
                if val:
                    return FormViolation(u, v, w, val)
    return None


def is_nondegenerate(b: BilinearForm) -> bool:
    return det(b.matrix) != 0


def is_negative_definite(b: BilinearForm) -> bool:
    """Exact Sylvester test: the k-th leading minor has sign (-1)^k."""
    m = b.matrix
    for k in range(1, m.rows + 1):
        minor = det(Mat(k, k, [m.row(i)[:k] for i in range(k)]))
        if minor == 0 or (minor > 0) != (k % 2 == 0):
            return False
    return True


class QuadraticLieAlgebra:
    """Lie algebra with a nondegenerate invariant symmetric form (checked on construction)."""

    __slots__ = ("algebra", "metric")

    def __init__(self, algebra: LieAlgebra, metric: BilinearForm, check: bool = True):
        if not metric.symmetric:
            raise ValueError("metric must be symmetric")
        if metric.dim != algebra.dim:
            raise DimensionError("metric and algebra dimensions differ")
        if check:
            if not is_nondegenerate(metric):
                raise NotQuadraticError("metric is degenerate")
            bad = check_invariance(algebra, metric)
            if bad is not None:
                raise NotQuadraticError(f"metric is not invariant on basis triple "
                                        f"({bad.u + 1},{bad.v + 1},{bad.w + 1})")
        self.algebra = algebra
        self.metric = metric

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def __repr__(self) -> str:
        return f"QuadraticLieAlgebra(dim={self.dim})"


def gram_on(b: BilinearForm, s: Subspace) -> Mat:
    basis = s.matrix
    return matmul(matmul(basis.T, b.matrix), basis)


def orthogonal_complement(q: QuadraticLieAlgebra | BilinearForm, s: Subspace) -> Subspace:
    """``{x : <x, s> = 0}`` computed as the kernel of ``(G S)^T``."""
    metric = q.metric if isinstance(q, QuadraticLieAlgebra) else q
    if s.dim == 0:
        return Subspace.full(metric.dim)
    return Subspace.from_columns(nullspace(matmul(metric.matrix, s.matrix).T))


def is_degenerate_on(q: QuadraticLieAlgebra | BilinearForm, s: Subspace) -> bool:
    """True when the restriction of the metric to ``s`` is singular."""
    metric = q.metric if isinstance(q, QuadraticLieAlgebra) else q
    if s.dim == 0:
        return False
    return rank(gram_on(metric, s)) < s.dim


def check_cocycle(g: LieAlgebra, theta: BilinearForm) -> FormViolation | None:
    """First triple with ``t([u,v],w) + t([v,w],u) + t([w,u],v) != 0``, or None."""
    if theta.symmetric:
        raise ValueError("cocycle check expects an antisymmetric form")
    if theta.dim != g.dim:
        raise DimensionError("form and algebra dimensions differ")
    n = g.dim
    e = [g.basis_vector(i) for i in range(n)]
    for u in range(n):
        for v in range(u + 1, n):
            for w in range(v + 1, n):
                val = (theta(g.struct[u][v], e[w]) + theta(g.struct[v][w], e[u])
                       + theta(g.struct[w][u], e[v]))
                if val:
                    return FormViolation(u, v, w, val)
    return None


def form_from_derivation(q: QuadraticLieAlgebra | BilinearForm, d: Mat) -> BilinearForm:
    """``theta(u, v) = <D u, v>``, i.e. matrix ``D^T G``."""
    metric = q.metric if isinstance(q, QuadraticLieAlgebra) else q
    m = matmul(d.T, metric.matrix)
    return BilinearForm(m, symmetric=False)


def derivation_from_form(q: QuadraticLieAlgebra | BilinearForm, theta: BilinearForm) -> Mat:
    """Inverse of :func:`form_from_derivation`: ``D = -G^{-1} Theta``."""
    metric = q.metric if isinstance(q, QuadraticLieAlgebra) else q
    ginv = solve(metric.matrix, identity(metric.dim))
    if ginv is None:
        raise NotQuadraticError("metric is degenerate")
    return -matmul(ginv, theta.matrix)


def ad_is_skew(q: QuadraticLieAlgebra, x: Sequence) -> bool:
    a = adjoint(q.algebra, x)
    g = q.metric.matrix
    return (matmul(g, a) + matmul(a.T, g)).is_zero()
