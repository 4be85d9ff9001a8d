"""Quadrature grids, dense LU with log-determinant, bracketed root finding."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import linalg, optimize


class NumericError(RuntimeError):
    """Base class for numerical failures surfaced to the CLI as exit code 2."""


class SingularMatrixError(NumericError):
    pass


class NoBracketError(NumericError):
    pass


@dataclass(frozen=True)
class Grid:
    a: float
    b: float
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def n(self) -> int:
        return len(self.nodes)

    def integrate(self, values) -> complex:
        return np.dot(self.weights, values)


def gauss_legendre(n: int, a: float, b: float) -> Grid:
    """Gauss-Legendre rule with n nodes mapped to [a, b]."""
    if n < 1 or not a < b:
        raise ValueError(f"need n >= 1 and a < b, got n={n}, a={a}, b={b}")
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (b - a)
    nodes = a + half * (x + 1.0)
    weights = half * w
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return Grid(float(a), float(b), nodes, weights)


def lu_solve_det(A, rhs=None, tiny: float = 1e-300):
    """LU with partial pivoting. Returns (solution or None, log det A).

    The log is the sum of principal logs of the pivots plus i*pi per row
    swap, so its imaginary part is not reduced to (-pi, pi].
    """
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise ValueError("matrix must be square and non-empty")
    with warnings.catch_warnings():
        # singularity is reported below via the pivot test
        warnings.simplefilter("ignore", linalg.LinAlgWarning)
        lu, piv = linalg.lu_factor(A, check_finite=True)
    diag = np.diag(lu)
    if np.min(np.abs(diag)) < tiny:
        raise SingularMatrixError("pivot below 1e-300; matrix numerically singular")
    swaps = int(np.count_nonzero(piv != np.arange(len(piv))))
    log_det = complex(np.sum(np.log(diag)) + 1j * np.pi * (swaps % 2))
    sol = None
    if rhs is not None:
        sol = linalg.lu_solve((lu, piv), np.asarray(rhs, dtype=complex))
    return sol, log_det


def find_root(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12) -> float:
    """Brent's method on a sign-changing bracket."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        raise NoBracketError(f"f({lo})={flo:.3g} and f({hi})={fhi:.3g} have the same sign")
    return optimize.brentq(f, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=500)
