"""Exact linear algebra: echelon forms, subspaces, polynomials."""

from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ado.linalg import (
    Matrix,
    Polynomial,
    Subspace,
    block_diag,
    compose_mod,
    extended_gcd,
    kernel,
    minimal_polynomial,
    modular_inverse,
    poly_gcd,
    rank,
    rref,
    solve,
    squarefree_part,
    vstack,
)

from helpers import matrices, rationals, square_matrices


def test_rref_of_dependent_rows():
    reduced, pivots = rref(Matrix([[2, 4], [1, 2]]))
    assert reduced == Matrix([[1, 2], [0, 0]])
    assert pivots == (0,)


def test_rref_identity_fixed_point():
    m = Matrix.identity(3)
    reduced, pivots = rref(m)
    assert reduced == m
    assert pivots == (0, 1, 2)


def test_rref_pivot_normalization():
    reduced, pivots = rref(Matrix([[0, 3, 6], [2, 1, 1]]))
    assert pivots == (0, 1)
    assert reduced == Matrix([[1, 0, Q(-1, 2)], [0, 1, 2]])


def test_kernel_of_sum_functional():
    ker = kernel(Matrix([[1, 1]]))
    assert ker.dim == 1
    assert ker.basis == Matrix([[1, -1]])


def test_kernel_of_invertible_is_zero():
    assert kernel(Matrix([[1, 1], [0, 1]])).dim == 0


def test_solve_unique():
    x = solve(Matrix([[1, 1], [0, 1]]), (Q(3), Q(1)))
    assert x == (Q(2), Q(1))


def test_solve_underdetermined_sets_free_vars_to_zero():
    x = solve(Matrix([[1, 2, 3]]), (Q(6),))
    assert x == (Q(6), Q(0), Q(0))


def test_solve_inconsistent():
    assert solve(Matrix([[1, 1], [2, 2]]), (Q(1), Q(3))) is None


def test_matrix_product_and_power():
    m = Matrix([[1, 1], [0, 1]])
    assert m * m == Matrix([[1, 2], [0, 1]])
    assert m.power(5) == Matrix([[1, 5], [0, 1]])
    assert m.power(0) == Matrix.identity(2)


def test_block_diag_shapes():
    b = block_diag([Matrix([[1]]), Matrix([[2, 3], [4, 5]])])
    assert b == Matrix([[1, 0, 0], [0, 2, 3], [0, 4, 5]])
    empty = block_diag([])
    assert (empty.nrows, empty.ncols) == (0, 0)


def test_vstack():
    v = vstack([Matrix([[1, 2]]), Matrix([[3, 4]])])
    assert v == Matrix([[1, 2], [3, 4]])


def test_subspace_membership_and_coordinates():
    s = Subspace.from_vectors(3, [(1, 0, 2), (0, 1, 1)])
    assert s.member((2, 3, 7))
    assert not s.member((0, 0, 1))
    assert s.coordinates_of((2, 3, 7)) == (Q(2), Q(3))


def test_subspace_sum_and_intersect():
    s = Subspace.from_vectors(3, [(1, 0, 0), (0, 1, 0)])
    t = Subspace.from_vectors(3, [(0, 1, 0), (0, 0, 1)])
    assert s.sum(t).dim == 3
    meet = s.intersect(t)
    assert meet.dim == 1
    assert meet.member((0, 1, 0))


def test_extend_complement_full_space():
    s = Subspace.from_vectors(3, [(1, 1, 0)])
    c = s.extend_complement()
    assert c.dim == 2
    assert s.sum(c).dim == 3
    assert s.intersect(c).dim == 0
    # complement made of standard vectors at non-pivot indices
    assert c.basis == Matrix([[0, 1, 0], [0, 0, 1]])


def test_extend_complement_within_subspace():
    within = Subspace.from_vectors(4, [(1, 0, 0, 0), (0, 1, 1, 0), (0, 0, 0, 1)])
    s = Subspace.from_vectors(4, [(1, 1, 1, 0)])
    c = s.extend_complement(within)
    assert c.dim == 2
    assert s.sum(c) == within
    assert s.intersect(c).dim == 0
    assert within.contains(c)


def test_extend_complement_rejects_escapees():
    within = Subspace.from_vectors(3, [(1, 0, 0)])
    s = Subspace.from_vectors(3, [(0, 1, 0)])
    with pytest.raises(ValueError):
        s.extend_complement(within)


def test_minimal_polynomial_frozen_cases():
    t = Polynomial.variable()
    one = Polynomial.one()
    assert minimal_polynomial(Matrix.zeros(2, 2)) == t
    assert minimal_polynomial(Matrix.identity(3)) == t - one
    # a single 2x2 Jordan block
    assert minimal_polynomial(Matrix([[1, 1], [0, 1]])) == (t - one) * (t - one)
    # rotation by a quarter turn
    assert minimal_polynomial(Matrix([[0, -1], [1, 0]])) == t * t + one
    assert minimal_polynomial(Matrix([], ncols=0)) == one


def test_poly_gcd_frozen_case():
    t = Polynomial.variable()
    one = Polynomial.one()
    assert poly_gcd(t * t - one, t - one) == t - one
    assert poly_gcd(Polynomial.zero(), Polynomial.zero()) == Polynomial.zero()


def test_squarefree_part_frozen_case():
    t = Polynomial.variable()
    one = Polynomial.one()
    assert squarefree_part((t - one) * (t - one)) == t - one
    assert squarefree_part(t * t * (t - one)) == t * (t - one)
    assert squarefree_part(Polynomial((2,))) == Polynomial.one()


def test_modular_inverse_frozen_case():
    t = Polynomial.variable()
    one = Polynomial.one()
    modulus = t * t + one
    assert modular_inverse(t, modulus) == -t
    with pytest.raises(ValueError):
        modular_inverse(t, t * t)


def test_compose_mod():
    t = Polynomial.variable()
    modulus = t * t + Polynomial.one()
    # (t^2)(t) mod t^2+1 = -1
    assert compose_mod(t * t, t, modulus) == Polynomial((-1,))


def test_polynomial_matrix_evaluation():
    t = Polynomial.variable()
    m = Matrix([[1, 1], [0, 1]])
    p = t * t - 2 * t + Polynomial.one()
    assert p(m) == Matrix.zeros(2, 2)


def test_polynomial_zero_conventions():
    z = Polynomial.zero()
    assert z.degree == -1
    assert z.coeffs == ()
    assert Polynomial((0, 0)).is_zero()


@given(matrices(3, 4))
def test_rref_idempotent(m):
    reduced, pivots = rref(m)
    again, pivots2 = rref(reduced)
    assert again == reduced
    assert pivots2 == pivots


@given(matrices(3, 5))
def test_rank_nullity(m):
    assert rank(m) + kernel(m).dim == m.ncols


@given(matrices(4, 4), matrices(4, 4))
def test_dimension_formula_for_sum_and_intersection(a, b):
    s = Subspace.from_vectors(4, a.rows)
    t = Subspace.from_vectors(4, b.rows)
    assert s.sum(t).dim + s.intersect(t).dim == s.dim + t.dim


@given(matrices(3, 3), st.lists(rationals(), min_size=3, max_size=3))
def test_solve_produces_solutions(m, b):
    x = solve(m, tuple(b))
    if x is not None:
        assert m.apply(x) == tuple(b)


@settings(max_examples=40)
@given(square_matrices(4))
def test_minimal_polynomial_annihilates(m):
    p = minimal_polynomial(m)
    assert p.leading() == 1
    assert p(m).is_zero()
    # least degree: the powers below the degree are independent
    powers = []
    acc = Matrix.identity(m.nrows)
    for _ in range(p.degree):
        powers.append(acc.flatten())
        acc = acc * m
    assert rank(Matrix(powers, ncols=m.nrows * m.nrows)) == p.degree


@given(square_matrices(3))
def test_kernel_vectors_annihilate(m):
    ker = kernel(m)
    for v in ker.vectors():
        assert all(x == 0 for x in m.apply(v))


@settings(max_examples=40)
@given(
    st.lists(rationals(), min_size=1, max_size=4),
    st.lists(rationals(), min_size=1, max_size=4),
)
def test_extended_gcd_identity(fc, gc):
    f, g = Polynomial(fc), Polynomial(gc)
    d, u, v = extended_gcd(f, g)
    assert u * f + v * g == d
    if not (f.is_zero() and g.is_zero()):
        assert (f % d).is_zero() if not d.is_zero() else False
        assert (g % d).is_zero()


@settings(max_examples=40)
@given(
    st.lists(rationals(), min_size=1, max_size=5),
    st.lists(rationals(), min_size=2, max_size=4),
)
def test_polynomial_divmod_identity(fc, gc):
    f, g = Polynomial(fc), Polynomial(gc)
    if g.is_zero():
        return
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.degree < g.degree
