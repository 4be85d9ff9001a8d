import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bethe_asym.numkit import NoBracketError, SingularMatrixError, find_root, gauss_legendre, lu_solve_det


def test_gauss_exact_for_polynomials():
    g = gauss_legendre(10, -1.0, 2.0)
    # exact up to degree 19
    assert abs(g.integrate(g.nodes ** 19) - (2 ** 20 - 1) / 20) < 1e-9
    assert abs(g.weights.sum() - 3.0) < 1e-14


def test_gauss_smooth_function():
    g = gauss_legendre(40, 0.0, math.pi)
    assert abs(g.integrate(np.sin(g.nodes)) - 2.0) < 5e-14


@pytest.mark.parametrize("n,a,b", [(0, 0, 1), (4, 1, 1), (4, 2, 1)])
def test_gauss_rejects_bad_input(n, a, b):
    with pytest.raises(ValueError):
        gauss_legendre(n, a, b)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 7), st.integers(0, 2 ** 31))
def test_logdet_matches_numpy(n, seed):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    _, ld = lu_solve_det(A)
    assert abs(np.exp(ld) - np.linalg.det(A)) < 1e-10 * abs(np.linalg.det(A))


def test_logdet_sign_of_real_matrix():
    A = np.array([[0.0, 1.0], [1.0, 0.0]])
    _, ld = lu_solve_det(A)
    assert abs(np.exp(ld) + 1) < 1e-15


def test_solve():
    A = np.array([[4.0, 1.0], [2.0, 3.0]])
    x, _ = lu_solve_det(A, np.array([1.0, 2.0]))
    assert np.allclose(A @ x, [1.0, 2.0], atol=1e-15)


def test_singular():
    with pytest.raises(SingularMatrixError):
        lu_solve_det(np.zeros((3, 3)))


def test_find_root():
    assert abs(find_root(lambda x: x * x - 2, 0, 2) - math.sqrt(2)) < 1e-12
    with pytest.raises(NoBracketError):
        find_root(lambda x: x * x + 1, -1, 1)
