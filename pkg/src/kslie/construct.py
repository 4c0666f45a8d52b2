"""Factories for quadratic Lie algebras and canonical k-symplectic structures.

Basis orders are fixed:

* T*-extension: ``(e_1..e_n, e_1*..e_n*)``
* double extension: ``(e, base basis, ebar)``
* oscillator: ``(em1, e0, e1, ec1, ..., en, ecn)`` where ``em1`` stands for
  e_{-1} and ``eci`` for the checked partner of ``ei``
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .derivh2 import is_derivation
from .ksymp import KSymplecticCertificate
from .liealg import LieAlgebra, Subspace, check_jacobi, direct_product, unit
from .quadform import BilinearForm, QuadraticLieAlgebra, wedge
from .ratlin import Mat, as_rat, matmul

ZERO = Fraction(0)


def t_star_extension(g: LieAlgebra) -> QuadraticLieAlgebra:
    """``g + g*`` with ``[u, b] = ad*_u b`` and the duality pairing as metric."""
    bad = check_jacobi(g)
    if bad is not None:
        raise ValueError(f"Jacobi identity fails on ({bad.i + 1},{bad.j + 1},{bad.k + 1})")
    n = g.dim
    c = g.struct
    brackets = {}
    for i in range(n):
        for j in range(i + 1, n):
            if any(c[i][j]):
                brackets[(i, j)] = tuple(c[i][j]) + (ZERO,) * n
        for j in range(n):
            # ad*_{e_i} e_j* = -sum_l c[i][l][j] e_l*
            v = (ZERO,) * n + tuple(-c[i][l][j] for l in range(n))
            if any(v):
                brackets[(i, n + j)] = v
    names = list(g.names) + [f"{nm}*" for nm in g.names]
    metric = BilinearForm.from_entries(2 * n, {(i, n + i): 1 for i in range(n)})
    return QuadraticLieAlgebra(LieAlgebra.from_brackets(names, brackets), metric)


@dataclass(frozen=True)
class DoubleExtensionDatum:
    base: QuadraticLieAlgebra
    A: Mat

    def __post_init__(self):
        g = self.base.metric.matrix
        a = self.A
        if a.shape != g.shape:
            raise ValueError(f"A has shape {a.shape}, base has dimension {self.base.dim}")
        if not (matmul(g, a) + matmul(a.T, g)).is_zero():
            raise ValueError("A is not skew-symmetric for the base metric")
        if not is_derivation(self.base.algebra, a):
            raise ValueError("A is not a derivation of the base")


def double_extension(d: DoubleExtensionDatum, names: Sequence[str] | None = None) -> QuadraticLieAlgebra:
    """``R e + base + R ebar`` with ``[ebar,u] = Au`` and ``[u,v] = <Au,v> e + [u,v]``."""
    base, a = d.base, d.A
    m = base.dim
    n = m + 2
    gm = base.metric
    cols = a.columns()
    brackets = {}
    for i in range(m):
        for j in range(i + 1, m):
            v = [gm(cols[i], unit(m, j))] + list(base.algebra.struct[i][j]) + [ZERO]
            if any(v):
                brackets[(1 + i, 1 + j)] = v
    for j in range(m):
        if any(cols[j]):
            brackets[(n - 1, 1 + j)] = [ZERO] + list(cols[j]) + [ZERO]
    names = list(names) if names else ["e"] + list(base.algebra.names) + ["ebar"]
    entries = {(0, n - 1): 1}
    for i in range(m):
        for j in range(i, m):
            if gm.matrix[i, j]:
                entries[(1 + i, 1 + j)] = gm.matrix[i, j]
    return QuadraticLieAlgebra(LieAlgebra.from_brackets(names, brackets),
                               BilinearForm.from_entries(n, entries))


def _check_lambdas(lambdas: Sequence) -> list[Fraction]:
    lam = [as_rat(x) for x in lambdas]
    if not lam:
        raise ValueError("need at least one lambda")
    if any(x <= 0 for x in lam):
        raise ValueError("lambdas must be positive")
    if any(a > b for a, b in zip(lam, lam[1:])):
        raise ValueError("lambdas must be sorted increasingly")
    return lam


def oscillator_names(n: int) -> list[str]:
    names = ["em1", "e0"]
    for i in range(1, n + 1):
        names += [f"e{i}", f"ec{i}"]
    return names


def oscillator(lambdas: Sequence) -> QuadraticLieAlgebra:
    """osc(lambda) with ``[em1,ei] = l_i eci``, ``[em1,eci] = -l_i ei``, ``[ei,eci] = e0``."""
    lam = _check_lambdas(lambdas)
    n = len(lam)
    dim = 2 * n + 2
    brackets = {}
    entries = {(0, 1): 1}
    for i, x in enumerate(lam):
        e, ec = 2 + 2 * i, 3 + 2 * i
        brackets[(0, e)] = tuple(x if k == ec else 0 for k in range(dim))
        brackets[(0, ec)] = tuple(-x if k == e else 0 for k in range(dim))
        brackets[(e, ec)] = unit(dim, 1)
        entries[(e, e)] = entries[(ec, ec)] = 1 / x
    return QuadraticLieAlgebra(LieAlgebra.from_brackets(oscillator_names(n), brackets),
                               BilinearForm.from_entries(dim, entries))


def oscillator_datum(lambdas: Sequence) -> DoubleExtensionDatum:
    """Abelian ``R^2n`` with metric ``(1/l_i) I_2`` blocks and ``A = diag([[0,-l_i],[l_i,0]])``."""
    lam = _check_lambdas(lambdas)
    m = 2 * len(lam)
    a = [[ZERO] * m for _ in range(m)]
    entries = {}
    for i, x in enumerate(lam):
        p = 2 * i
        a[p][p + 1] = -x
        a[p + 1][p] = x
        entries[(p, p)] = entries[(p + 1, p + 1)] = 1 / x
    base = QuadraticLieAlgebra(LieAlgebra.abelian(m), BilinearForm.from_entries(m, entries))
    return DoubleExtensionDatum(base, Mat(m, m, a))


def oscillator_permutation(n: int) -> list[int]:
    """``perm[i]`` is the double-extension index of the i-th oscillator basis vector."""
    return [2 * n + 1, 0] + list(range(1, 2 * n + 1))


def oscillator_table_order(n: int) -> list[int]:
    """Oscillator basis indices listed in table order ``(e0, e1..en, ec1..ecn, em1)``.

    ``change_basis`` with these unit columns turns ``oscillator(lambdas)``
    into the catalog's ``osc(4)`` / ``osc(6)`` entries.
    """
    return [1] + [2 + 2 * i for i in range(n)] + [3 + 2 * i for i in range(n)] + [0]


def quadratic_product(q1: QuadraticLieAlgebra, q2: QuadraticLieAlgebra) -> QuadraticLieAlgebra:
    """Direct product with the orthogonal sum of the metrics."""
    n1, n = q1.dim, q1.dim + q2.dim
    m = [[ZERO] * n for _ in range(n)]
    for i in range(n1):
        for j in range(n1):
            m[i][j] = q1.metric.matrix[i, j]
    for i in range(q2.dim):
        for j in range(q2.dim):
            m[n1 + i][n1 + j] = q2.metric.matrix[i, j]
    return QuadraticLieAlgebra(direct_product(q1.algebra, q2.algebra),
                               BilinearForm(Mat(n, n, m), symmetric=True))


def abelian_ksymplectic(n: int, k: int) -> tuple[QuadraticLieAlgebra, KSymplecticCertificate]:
    """Abelian algebra on ``(e{p}_{i}, e{i})`` with ``theta_p = sum_i w^{pi} ^ w^i``.

    ``h`` is the common kernel of the ``w^i``, i.e. the span of the ``e{p}_{i}``.
    The metric is the identity (every metric is invariant on an abelian algebra).
    """
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    dim = n * (k + 1)
    names = [f"e{p}_{i}" for p in range(1, k + 1) for i in range(1, n + 1)] + [f"e{i}" for i in range(1, n + 1)]
    g = LieAlgebra.abelian(dim, names)
    q = QuadraticLieAlgebra(g, BilinearForm.from_entries(dim, {(i, i): 1 for i in range(dim)}))
    h = Subspace(dim, [unit(dim, i) for i in range(n * k)])
    thetas = [BilinearForm.from_entries(dim, {(p * n + i, n * k + i): 1 for i in range(n)}, symmetric=False)
              for p in range(k)]
    return q, KSymplecticCertificate(h, thetas)


def _sln_basis(n: int) -> tuple[list[str], list[list[list[int]]]]:
    names, mats = [], []
    for i in range(n):
        for j in range(n):
            if i != j:
                m = [[0] * n for _ in range(n)]
                m[i][j] = 1
                names.append(f"E{i + 1}_{j + 1}")
                mats.append(m)
    for i in range(n - 1):
        m = [[0] * n for _ in range(n)]
        m[i][i], m[i + 1][i + 1] = 1, -1
        names.append(f"H{i + 1}")
        mats.append(m)
    return names, mats


def _sln_coords(n: int, m: list[list[int]]) -> tuple:
    off = [m[i][j] for i in range(n) for j in range(n) if i != j]
    acc, diag = 0, []
    for i in range(n - 1):
        acc += m[i][i]
        diag.append(acc)
    return tuple(off + diag)


def _commutator(a, b):
    n = len(a)
    ab = [[sum(a[i][l] * b[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
    ba = [[sum(b[i][l] * a[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
    return [[ab[i][j] - ba[i][j] for j in range(n)] for i in range(n)]


def sl_n(n: int) -> LieAlgebra:
    """sl(n) on ``{E_ij, i != j}`` (row-major) followed by ``H_i = E_ii - E_{i+1,i+1}``.

    For n = 2 this is ``(e1, e2, e3) = (E_12, E_21, H_1)``.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    names, mats = _sln_basis(n)
    d = len(mats)
    brackets = {}
    for i in range(d):
        for j in range(i + 1, d):
            v = _sln_coords(n, _commutator(mats[i], mats[j]))
            if any(v):
                brackets[(i, j)] = v
    return LieAlgebra.from_brackets(names, brackets)


def sln_certificate(n: int) -> tuple[LieAlgebra, KSymplecticCertificate]:
    """n-symplectic structure on sl(n).

    ``h`` is the set of matrices having ``e_n`` as an eigenvector (all basis
    elements except ``E_in``, i < n) and ``theta_a(X, Y) = -[X, Y]_{a,n}``.
    """
    g = sl_n(n)
    names, mats = _sln_basis(n)
    d = len(mats)
    skip = {names.index(f"E{i + 1}_{n}") for i in range(n - 1)}
    h = Subspace(d, [unit(d, i) for i in range(d) if i not in skip])
    comm = [[_commutator(mats[i], mats[j]) for j in range(d)] for i in range(d)]
    thetas = []
    for a in range(n):
        m = Mat(d, d, [[-comm[i][j][a][n - 1] for j in range(d)] for i in range(d)])
        thetas.append(BilinearForm(m, symmetric=False))
    return g, KSymplecticCertificate(h, thetas)


SIX_DIM_NAMES = ("e1", "e2", "f1", "f2", "f3", "f4")


def six_dim_example(a=0, b=0, c=0) -> tuple[LieAlgebra, KSymplecticCertificate]:
    """Three-parameter 6-dimensional 2-symplectic algebra with ``h = span(f1..f4)``."""
    params = {"a": as_rat(a), "b": as_rat(b), "c": as_rat(c)}
    g = LieAlgebra.from_notation(
        SIX_DIM_NAMES,
        "[f1,f2]=-f1, [f1,f4]=-a f1, [f2,f3]=f3, [f3,f4]=-a f3,"
        "[f2,e1]=-e1, [f2,e2]=-c a f2 + c f4, [f4,e1]=-a e1, [f4,e2]=-b a f2 + b f4",
        params)
    bad = check_jacobi(g)
    if bad is not None:
        raise ValueError(f"Jacobi identity fails for (a,b,c)=({a},{b},{c})")
    h = Subspace(6, [unit(6, i) for i in range(2, 6)])
    thetas = [wedge("f1*^e1* + f2*^e2*", SIX_DIM_NAMES), wedge("f3*^e1* + f4*^e2*", SIX_DIM_NAMES)]
    return g, KSymplecticCertificate(h, thetas)
