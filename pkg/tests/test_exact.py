import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from torsionquad import exact
from torsionquad.errors import DimensionError
from torsionquad.exact import CyclotomicNumber, cyclotomic_equal, mod1


def small_matrices(max_rows=4, max_cols=4, bound=9):
    return st.integers(1, max_rows).flatmap(lambda r: st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


def diag(D):
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


@pytest.mark.parametrize("A, expected", [
    ([[2]], [2]),
    ([[1, 0], [0, 0]], [1, 0]),
    ([[0, 2], [2, 0]], [2, 2]),
    ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [2, 6, 12]),
])
def test_snf_examples(A, expected):
    U, D, V = exact.smith_normal_form(A, len(A[0]))
    assert diag(D) == expected
    assert exact.matmul(exact.matmul(U, A), V) == D


@settings(max_examples=150, deadline=None)
@given(small_matrices())
def test_snf_properties(A):
    rows, cols = len(A), len(A[0])
    U, D, V = exact.smith_normal_form(A, cols)
    assert exact.matmul(exact.matmul(U, A, cols), V, cols) == D
    assert abs(exact.determinant(U)) == 1 and abs(exact.determinant(V)) == 1
    d = diag(D)
    assert all(x >= 0 for x in d)
    nz = [x for x in d if x]
    assert d[:len(nz)] == nz
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert all(D[i][j] == 0 for i in range(rows) for j in range(cols) if i != j)
    # reconstruction through unimodular inverses
    back = exact.matmul(exact.matmul(exact.unimodular_inverse(U), D, cols),
                        exact.unimodular_inverse(V), cols)
    assert back == tuple(tuple(r) for r in A)
    # independent oracle: sympy's invariant factors
    ref = [abs(int(x)) for x in diag(sympy_snf(Matrix(A), domain=ZZ).tolist())]
    assert sorted(nz) == sorted(x for x in ref if x)


def test_snf_is_deterministic():
    A = [[4, 6, 2], [6, 9, 3], [2, 3, 5]]
    assert exact.smith_normal_form(A, 3) == exact.smith_normal_form(A, 3)


@pytest.mark.parametrize("A, b, m, expected", [
    ([[1]], [0], [5], (0,)),
    ([[2]], [2], [4], (1,)),
    ([[2]], [1], [4], None),
])
def test_congruence_examples(A, b, m, expected):
    assert exact.solve_congruences(A, b, m, 1) == expected


@settings(max_examples=120, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(
    st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=1, max_size=3),
    st.lists(st.integers(-6, 6), min_size=3, max_size=3),
    st.lists(st.integers(1, 6), min_size=3, max_size=3))))
def test_congruences_against_enumeration(data):
    A, b, m = data
    k, n = len(A), len(A[0])
    b, m = b[:k], m[:k]
    sol = exact.solve_congruences(A, b, m, n)
    L = exact.lcm(*m)
    exists = any(all((sum(a * x for a, x in zip(row, xs)) - bi) % mi == 0
                     for row, bi, mi in zip(A, b, m))
                 for xs in itertools.product(range(L), repeat=n))
    assert (sol is not None) == exists
    if sol is not None:
        assert all((sum(a * x for a, x in zip(row, sol)) - bi) % mi == 0
                   for row, bi, mi in zip(A, b, m))


def test_mixed_system_exact_rows():
    # x + y = 3 exactly, 2x = 0 mod 4
    sol = exact.solve_mixed([[1, 1], [2, 0]], [3, 0], [0, 4], 2)
    assert sol[0] + sol[1] == 3 and (2 * sol[0]) % 4 == 0
    assert exact.solve_mixed([[2]], [1], [0], 1) is None


def test_congruence_dimension_mismatch():
    with pytest.raises(DimensionError):
        exact.solve_congruences([[1, 2]], [1, 2], [3], 2)


def test_integer_kernel_is_saturated():
    K = exact.integer_kernel([[2, 4, 6]], 3)
    assert len(K) == 2
    for v in K:
        assert 2 * v[0] + 4 * v[1] + 6 * v[2] == 0
    M = exact.from_columns(K, 3)
    assert exact.invariant_factors(M, 2) == (1, 1)


def test_cyclotomic_polynomials():
    assert exact.cyclotomic_polynomial(1) == (-1, 1)
    assert exact.cyclotomic_polynomial(4) == (1, 0, 1)
    assert exact.cyclotomic_polynomial(6) == (1, -1, 1)
    assert len(exact.cyclotomic_polynomial(12)) == 5


def test_cyclotomic_equal_examples():
    one_i4 = CyclotomicNumber(4, (1, 1, 0, 0))
    one_i8 = CyclotomicNumber(8, (1, 0, 1, 0, 0, 0, 0, 0))
    assert cyclotomic_equal(one_i4, one_i8)
    assert cyclotomic_equal(CyclotomicNumber(3, (0, 1, 1)), CyclotomicNumber(1, (-1,)))
    assert not cyclotomic_equal(one_i4, CyclotomicNumber(1, (2,)))
    assert not cyclotomic_equal(one_i4, CyclotomicNumber(4, (1, 1, 0, 0), 2))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([1, 2, 3, 4, 6, 8, 12]).flatmap(
    lambda N: st.tuples(st.just(N), st.lists(st.integers(-2, 2), min_size=N, max_size=N))),
    st.sampled_from([1, 2, 3, 4, 6, 8, 12]).flatmap(
    lambda N: st.tuples(st.just(N), st.lists(st.integers(-2, 2), min_size=N, max_size=N))))
def test_cyclotomic_equality_matches_complex_values(a, b):
    x, y = CyclotomicNumber(a[0], tuple(a[1])), CyclotomicNumber(b[0], tuple(b[1]))
    assert exact.sums_equal(x, y) == (abs(x.to_complex() - y.to_complex()) < 1e-9)
    assert x.conjugate().conjugate() == x
    assert abs((x * y).to_complex() - x.to_complex() * y.to_complex()) < 1e-9


def test_times_root():
    x = CyclotomicNumber(4, (1, 1, 0, 0), 2)
    y = x.times_root(F(-1, 8))
    assert abs(y.to_complex() - 1) < 1e-12


@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50))
def test_qmodz_canonical(a, b):
    x = mod1(a)
    assert 0 <= x < 1
    assert mod1(x + mod1(b) - mod1(b)) == x
    assert mod1(-mod1(-x)) == x
