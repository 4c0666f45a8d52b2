import itertools

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

import oracle
from kslie.catalog import list_entries, load_entry
from kslie.derivh2 import (
    InconsistentMetricError,
    MapSpace,
    admissible_derivations,
    center_preserved,
    common_kernel,
    derivation_space,
    h2_dimension,
    inner_derivations,
    is_derivation,
    is_skew,
    preserves,
    skew_derivation_space,
)
from kslie.liealg import LieAlgebra, Subspace, center, killing_form, unit
from kslie.quadform import BilinearForm, QuadraticLieAlgebra, orthogonal_complement
from kslie.ratlin import zeros

ALL = list_entries(include_extras=True)


def entry(name):
    return load_entry(name)


def span(n, *idx):
    return Subspace(n, [unit(n, i - 1) for i in idx])


def oracle_derivation_dim(g):
    """dim Der(g) from a sympy nullspace of the derivation equations."""
    n = g.dim
    raw = {(i, j): dict(enumerate(v)) for (i, j), v in g.brackets().items()}
    c = oracle.struct_tensor(n, raw)
    d = sp.Matrix(n, n, sp.symbols(f"d0:{n * n}"))
    eqs = []
    for i, j in itertools.combinations(range(n), 2):
        ei, ej = sp.eye(n)[:, i], sp.eye(n)[:, j]
        lhs = d * oracle.bracket(c, ei, ej)
        rhs = oracle.bracket(c, d * ei, ej) + oracle.bracket(c, ei, d * ej)
        eqs.extend(lhs - rhs)
    if not eqs:
        return n * n
    a, _ = sp.linear_eq_to_matrix(eqs, list(d))
    return n * n - a.rank()


def test_derivation_space_examples():
    assert derivation_space(LieAlgebra.abelian(3)).dim == 9
    assert derivation_space(entry("sl2R").algebra).dim == 3
    assert derivation_space(entry("su2").algebra).dim == 3


@pytest.mark.parametrize("name", ["sl2R", "osc(4)", "g1,4", "g1,5", "n1(2,2)", "T*su2"])
def test_derivation_space_against_oracle(name):
    g = entry(name).algebra
    space = derivation_space(g)
    assert space.dim == oracle_derivation_dim(g)
    assert all(is_derivation(g, d) for d in space.basis)


def test_skew_derivation_examples():
    osc = entry("osc(4)").quadratic
    for d in skew_derivation_space(osc).basis:
        assert not any(d.apply(unit(4, 0)))
    assert skew_derivation_space(entry("T*sl2R").quadratic).dim == 6
    q = QuadraticLieAlgebra(LieAlgebra.abelian(4), BilinearForm.from_entries(4, {(i, i): 1 for i in range(4)}))
    assert skew_derivation_space(q).dim == 6


def test_inner_derivation_examples():
    assert inner_derivations(LieAlgebra.abelian(3)).dim == 0
    assert inner_derivations(entry("sl2R").algebra).dim == 3
    assert inner_derivations(entry("n1(2,2)").algebra).dim == 3


def test_h2_examples():
    assert h2_dimension(entry("T*sl2R").quadratic) == 0
    assert h2_dimension(entry("T*su2").quadratic) == 0
    g = entry("sl2R").algebra
    assert h2_dimension(QuadraticLieAlgebra(g, killing_form(g))) == 0


def test_h2_rejects_non_invariant_metric():
    g = entry("sl2R").algebra
    q = QuadraticLieAlgebra(g, BilinearForm.from_entries(3, {(i, i): 1 for i in range(3)}), check=False)
    with pytest.raises(InconsistentMetricError):
        h2_dimension(q)


def test_admissible_examples():
    q = entry("T*su2").quadratic
    h = span(6, 1, 4, 5, 6)
    space = admissible_derivations(q, h)
    perp = orthogonal_complement(q, h)
    for d in space.basis:
        assert not any(d.apply(unit(6, 3)))
        assert all(perp.contains(d.apply(x)) for x in h.rows)
    assert common_kernel(space).contains(unit(6, 3))

    t = entry("T*sl2R").quadratic
    space = admissible_derivations(t, span(6, 1, 3, 4, 5, 6))
    for d in space.basis:
        for i in (3, 4, 5):
            assert not any(d.apply(unit(6, i)))

    assert admissible_derivations(q, Subspace.zero(6)) == skew_derivation_space(q)


def test_common_kernel_examples():
    assert common_kernel(MapSpace(4)) == Subspace.full(4)
    osc = entry("osc(4)").quadratic
    assert common_kernel(skew_derivation_space(osc)).contains(unit(4, 0))


@pytest.mark.parametrize("name", ALL)
def test_inner_inside_skew_inside_all(name):
    q = entry(name).quadratic
    inner, skew, der = inner_derivations(q.algebra), skew_derivation_space(q), derivation_space(q.algebra)
    assert der.contains_space(inner)
    assert skew.contains_space(inner)
    assert der.contains_space(skew)
    assert all(is_skew(q, d) for d in skew.basis)
    assert inner.dim == q.dim - center(q.algebra).dim
    if h2_dimension(q) == 0:
        assert skew == inner


@given(st.sampled_from(ALL), st.data())
def test_derivations_preserve_center(name, data):
    g = entry(name).algebra
    d = zeros(g.dim, g.dim)
    for m in derivation_space(g).basis:
        d = d + m * data.draw(st.integers(-3, 3))
    assert center_preserved(g, d)
    assert preserves(d, center(g))


def test_map_space_is_canonical():
    g = entry("sl2R").algebra
    a = inner_derivations(g)
    b = MapSpace(3, [a.basis[0] + a.basis[1], a.basis[1], a.basis[2] * 5])
    assert a == b and hash(a) == hash(b)
