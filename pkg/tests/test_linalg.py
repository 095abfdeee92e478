import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from finitistic.linalg import (
    Subspace,
    ZeroPolynomial,
    check_prime,
    factor,
    inv,
    is_irreducible,
    kernel,
    min_poly,
    poly_eval_matrix,
    poly_mul,
    poly_pow,
    rank,
    rref,
    solve,
    span,
)

P = 101


def matrices(max_rows=5, max_cols=5, p=P):
    return st.tuples(st.integers(1, max_rows), st.integers(1, max_cols), st.integers(0, 2**32 - 1)).map(
        lambda t: np.random.default_rng(t[2]).integers(0, p, size=(t[0], t[1])) * np.random.default_rng(t[2] + 1).integers(0, 2, size=(t[0], t[1]))
    )


def test_check_prime_rejects_composites():
    assert check_prime(32003) == 32003
    with pytest.raises(ValueError):
        check_prime(4)
    with pytest.raises(ValueError):
        check_prime(1)


def test_inverse_mod_p():
    for a in range(1, 13):
        assert a * inv(a, 13) % 13 == 1


def test_rref_of_known_matrix():
    m = np.array([[2, 4, 6], [1, 2, 4]])
    R, rk, piv = rref(m, 7)
    assert rk == 2
    assert list(piv) == [0, 2]
    assert np.array_equal(R[:rk], [[1, 2, 0], [0, 0, 1]])


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_is_left_null_space_and_rank_nullity(m):
    k = kernel(m, P)
    assert k.dim + rank(m, P) == m.shape[0]
    if k.dim:
        assert not (k.basis @ m % P).any()


@settings(max_examples=60, deadline=None)
@given(matrices(), st.integers(0, 1000))
def test_solve_finds_row_combinations(m, seed):
    coeffs = np.random.default_rng(seed).integers(0, P, size=m.shape[0])
    target = coeffs @ m % P
    x = solve(m, target, P)
    assert x is not None
    assert np.array_equal(x @ m % P, target)


def test_solve_reports_inconsistency():
    m = np.array([[1, 0, 0], [0, 1, 0]])
    assert solve(m, [0, 0, 1], 5) is None


def test_rank_agrees_with_sympy():
    rng = np.random.default_rng(3)
    for _ in range(20):
        m = rng.integers(0, 7, size=(4, 5)) * rng.integers(0, 2, size=(4, 5))
        dm = sympy.polys.matrices.DomainMatrix.from_list(m.tolist(), sympy.GF(7))
        assert rank(m, 7) == dm.rank()


@settings(max_examples=40, deadline=None)
@given(matrices(4, 6), matrices(4, 6))
def test_subspace_dimension_formula(a, b):
    n = 6
    a = np.hstack([a, np.zeros((a.shape[0], n - a.shape[1]), dtype=np.int64)])
    b = np.hstack([b, np.zeros((b.shape[0], n - b.shape[1]), dtype=np.int64)])
    u, v = span(a, P, n), span(b, P, n)
    assert (u + v).dim + (u & v).dim == u.dim + v.dim
    assert (u + v).contains_space(u)
    assert u.contains_space(u & v)


def test_subspace_coordinates_and_complement():
    s = span(np.array([[1, 2, 0, 1], [0, 0, 1, 3]]), 5, 4)
    v = (3 * s.basis[0] + 4 * s.basis[1]) % 5
    assert np.array_equal(s.coordinates(v), [3, 4])
    assert s.complement() == [1, 3]
    assert s.contains(v)
    assert not s.contains([0, 1, 0, 0])
    assert Subspace.zero(4, 5).dim == 0 and Subspace.full(4, 5).dim == 4


def test_min_poly_annihilates_and_divides_charpoly():
    rng = np.random.default_rng(1)
    x = sympy.symbols("x")
    for _ in range(10):
        m = rng.integers(0, 11, size=(4, 4))
        mu = min_poly(m, 11)
        assert mu[-1] == 1
        assert not poly_eval_matrix(mu, m, 11).any()
        cp = sympy.Poly(sympy.Matrix(m.tolist()).charpoly(x).as_expr(), x, modulus=11)
        mp = sympy.Poly(sum(c * x**i for i, c in enumerate(mu)), x, modulus=11)
        assert cp.rem(mp).is_zero


def test_factor_matches_sympy_and_multiplies_back():
    rng = np.random.default_rng(5)
    x = sympy.symbols("x")
    for _ in range(15):
        f = tuple(int(c) for c in rng.integers(0, 13, size=6)) + (1,)
        facs = factor(f, 13)
        prod = (1,)
        for g, k in facs:
            assert is_irreducible(g, 13)
            prod = poly_mul(prod, poly_pow(g, k, 13), 13)
        assert prod == f
        ref = sympy.Poly(sum(c * x**i for i, c in enumerate(f)), x, modulus=13).factor_list()[1]
        assert sorted((g.degree(), k) for g, k in ref) == sorted((len(g) - 1, k) for g, k in facs)


def test_factor_of_zero_raises():
    with pytest.raises(ZeroPolynomial):
        factor((0, 0), 5)
