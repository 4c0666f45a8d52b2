import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from kslie.catalog import list_entries, load_entry
from kslie.construct import oscillator
from kslie.derivh2 import skew_derivation_space
from kslie.liealg import LieAlgebra, Subspace, adjoint, center, derived_subalgebra, direct_product, is_subalgebra, killing_form, unit
from kslie.quadform import (
    BilinearForm,
    NotQuadraticError,
    QuadraticLieAlgebra,
    check_cocycle,
    check_invariance,
    derivation_from_form,
    form_from_derivation,
    gram_on,
    is_degenerate_on,
    is_negative_definite,
    is_nondegenerate,
    orthogonal_complement,
    wedge,
)
from kslie.ratlin import Mat, zeros

QUADRATIC = list_entries(include_extras=True)
S3 = ("e1", "e2", "e3")
small = st.integers(-4, 4)


def entry(name):
    return load_entry(name)


def span(n, *idx):
    return Subspace(n, [unit(n, i - 1) for i in idx])


@pytest.mark.parametrize("name", QUADRATIC)
def test_catalog_metrics_are_invariant_and_nondegenerate(name):
    e = entry(name)
    assert check_invariance(e.algebra, e.metric) is None
    assert is_nondegenerate(e.metric)


def test_abelian_accepts_any_symmetric_form():
    b = BilinearForm.from_entries(3, {(0, 0): 1, (0, 2): 5, (1, 1): -2})
    assert check_invariance(LieAlgebra.abelian(3), b) is None


def test_identity_metric_on_sl2_is_not_invariant():
    g = entry("sl2R").algebra
    v = check_invariance(g, BilinearForm.from_entries(3, {(i, i): 1 for i in range(3)}))
    assert v is not None and v.value != 0


@pytest.mark.parametrize("name", ["sl2R", "su2"])
def test_perturbed_metric_is_caught(name):
    # invariant forms on a simple algebra are multiples of the Killing form
    e = entry(name)
    g, n = e.algebra, e.dim
    for i, j in itertools.combinations_with_replacement(range(n), 2):
        entries = {(a, b): e.metric.matrix[a, b] for a in range(n) for b in range(a, n)}
        entries[(i, j)] += 1
        b = BilinearForm.from_entries(n, entries)
        v = check_invariance(g, b)
        assert v is not None
        lhs = b(g.struct[v.u][v.v], unit(n, v.w)) + b(g.struct[v.u][v.w], unit(n, v.v))
        assert lhs == v.value != 0
    with pytest.raises(NotQuadraticError):
        QuadraticLieAlgebra(g, BilinearForm.from_entries(n, {(0, 0): 1, (1, 1): 1, (2, 2): 3}))


def test_nondegeneracy_examples():
    assert is_nondegenerate(killing_form(entry("su2").algebra))
    assert not is_nondegenerate(killing_form(LieAlgebra.abelian(2)))
    assert is_nondegenerate(entry("osc(4)").metric)
    assert is_negative_definite(killing_form(entry("su2").algebra))
    assert not is_negative_definite(killing_form(entry("sl2R").algebra))


def test_orthogonal_complement_examples():
    q = entry("T*su2").quadratic
    assert orthogonal_complement(q, Subspace.full(6)).dim == 0
    h = span(6, 1, 4, 5, 6)
    assert orthogonal_complement(q, h) == span(6, 5, 6)
    n1 = entry("n1(2,2)")
    assert orthogonal_complement(n1.quadratic, derived_subalgebra(n1.algebra)) == center(n1.algebra)


@pytest.mark.parametrize("name", QUADRATIC)
def test_subalgebra_normalizes_its_orthogonal(name):
    q = entry(name).quadratic
    n = q.dim
    for size in range(1, n):
        for idx in itertools.combinations(range(n), size):
            s = Subspace(n, [unit(n, i) for i in idx])
            if not is_subalgebra(q.algebra, s):
                continue
            perp = orthogonal_complement(q, s)
            for x in s.rows:
                for y in perp.rows:
                    assert perp.contains(q.algebra.bracket(x, y))


def test_degeneracy_examples():
    q = entry("T*su2").quadratic
    assert is_degenerate_on(q, span(6, 4, 5, 6))
    assert not is_degenerate_on(q, Subspace.full(6))
    k = killing_form(entry("sl2R").algebra)
    s = span(3, 1, 3)
    assert gram_on(k, s) == Mat.from_rows([[0, 0], [0, 8]])
    assert is_degenerate_on(k, s)


def test_cocycle_examples():
    g = entry("sl2R").algebra
    assert check_cocycle(g, wedge("e1*^e2*", S3)) is None
    assert check_cocycle(LieAlgebra.abelian(3), wedge("e1*^e3* + e2*^e3*", S3)) is None


@given(small, small, small)
def test_every_two_form_on_sl2_is_closed(a, b, c):
    # three-dimensional unimodular: d vanishes on 2-forms
    g = entry("sl2R").algebra
    theta = BilinearForm.from_entries(3, {(0, 1): a, (0, 2): b, (1, 2): c}, symmetric=False)
    assert check_cocycle(g, theta) is None
    raw = {(i, j): dict(enumerate(v)) for (i, j), v in g.brackets().items()}
    assert oracle.is_closed(oracle.struct_tensor(3, raw), oracle.wedge(3, [(a, 0, 1), (b, 0, 2), (c, 1, 2)]))


def test_cocycle_violation_on_sl2_times_line():
    g = direct_product(entry("sl2R").algebra, LieAlgebra.abelian(1))
    theta = wedge("e3*^e4*", ["e1", "e2", "e3", "e4"])
    v = check_cocycle(g, theta)
    assert v is not None and v.value != 0
    raw = {(i, j): dict(enumerate(x)) for (i, j), x in g.brackets().items()}
    assert not oracle.is_closed(oracle.struct_tensor(4, raw), oracle.wedge(4, [(1, 2, 3)]))


def test_form_from_derivation_examples():
    q = entry("sl2R").quadratic
    assert form_from_derivation(q, zeros(3, 3)).matrix.is_zero()
    kq = QuadraticLieAlgebra(q.algebra, killing_form(q.algebra))
    theta = form_from_derivation(kq, adjoint(q.algebra, unit(3, 2)))
    assert theta(unit(3, 0), unit(3, 1)) == 8


@given(st.sampled_from(QUADRATIC), st.data())
def test_derivation_form_round_trip(name, data):
    q = entry(name).quadratic
    basis = skew_derivation_space(q).basis
    d = zeros(q.dim, q.dim)
    for m in basis:
        d = d + m * Fraction(data.draw(small), data.draw(st.integers(1, 3)))
    theta = form_from_derivation(q, d)
    assert derivation_from_form(q, theta) == d
    assert form_from_derivation(q, derivation_from_form(q, theta)) == theta
    assert check_cocycle(q.algebra, theta) is None


def test_wrong_symmetry_is_rejected():
    with pytest.raises(ValueError):
        BilinearForm(Mat.from_rows([[0, 1], [1, 0]]), symmetric=False)
    with pytest.raises(ValueError):
        BilinearForm.from_entries(2, {(0, 0): 1}, symmetric=False)
    with pytest.raises(NotQuadraticError):
        QuadraticLieAlgebra(LieAlgebra.abelian(2), BilinearForm.from_entries(2, {(0, 0): 1}))


def test_oscillator_metric_block_determinant():
    q = oscillator([1])
    assert is_nondegenerate(q.metric)
