"""Generalized sine kernel: exact determinant and its large-m asymptotics.

    V(l, m') = F(l) sin{(m/2)[p0(l) - p0(m')] - (i/2)[g(l) - g(m')]} / (pi sinh(l - m'))

log det(I + gamma V) ~ W0 + W_{+1} e^{i m dp} + W_{-1} e^{-i m dp},  dp = p0(q) - p0(-q).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from .numkit import gauss_legendre, lu_solve_det
from .specfun import barnes_pair, is_degenerate, log_gamma


class BarnesPoleError(ValueError):
    pass


def _zero(x):
    return np.zeros_like(np.asarray(x, dtype=complex))


def _one(x):
    return np.ones_like(np.asarray(x, dtype=complex))


@dataclass(frozen=True)
class GskProblem:
    q: float
    p0: Callable
    dp0: Callable
    F: Callable = _one
    g: Callable = _zero
    gamma: complex = 0.0
    m: float = 1
    dF: Optional[Callable] = None
    dg: Callable = _zero

    def with_m(self, m) -> "GskProblem":
        return replace(self, m=m)


def sine_problem(q: float, gamma: complex, m: float) -> GskProblem:
    """F = 1, g = 0, p0(l) = l."""
    return GskProblem(q=q, p0=lambda x: np.asarray(x, dtype=float), dp0=_one, gamma=gamma, m=m, dF=_zero)


def default_nodes(p: GskProblem) -> int:
    # about four nodes per half-wavelength of sin(m p0/2) plus a margin
    span = float(p.p0(np.array(p.q)) - p.p0(np.array(-p.q)))
    return int(0.5 * p.m * span) + 96


def kernel_values(p: GskProblem, lam, mu) -> np.ndarray:
    """V(l, m') with the removable diagonal replaced by its limit where l == m'."""
    lam, mu = np.broadcast_arrays(np.asarray(lam, dtype=float), np.asarray(mu, dtype=float))
    arg = 0.5 * p.m * (np.asarray(p.p0(lam)) - np.asarray(p.p0(mu))) \
        - 0.5j * (np.asarray(p.g(lam)) - np.asarray(p.g(mu)))
    d = lam - mu
    same = d == 0
    Fl = np.asarray(p.F(lam), dtype=complex) * np.ones(lam.shape)
    off = Fl * np.sin(arg) / (math.pi * np.sinh(np.where(same, 1.0, d)))
    diag = Fl * (p.m * np.asarray(p.dp0(lam)) - 1j * np.asarray(p.dg(lam))) / (2 * math.pi)
    return np.where(same, diag, off)


def exact_gsk_logdet(p: GskProblem, n: Optional[int] = None) -> complex:
    n = default_nodes(p) if n is None else n
    grid = gauss_legendre(n, -p.q, p.q)
    x, w = grid.nodes, grid.weights
    V = kernel_values(p, x[:, None], x[None, :])
    s = np.sqrt(w)
    M = np.eye(n) + p.gamma * s[:, None] * V * s[None, :]
    return lu_solve_det(M)[1]


def diff_matrix(grid) -> np.ndarray:
    """Barycentric differentiation matrix on Gauss-Legendre nodes."""
    x = grid.nodes
    t = (2 * x - (grid.a + grid.b)) / (grid.b - grid.a)
    bw = (-1.0) ** np.arange(grid.n) * np.sqrt((1 - t * t) * grid.weights)
    dx = x[:, None] - x[None, :]
    np.fill_diagonal(dx, 1.0)
    D = (bw[None, :] / bw[:, None]) / dx
    np.fill_diagonal(D, 0.0)
    np.fill_diagonal(D, -D.sum(axis=1))
    return D


def antisym_double_integral(grid, f, df, d2f, rational: bool = False) -> complex:
    """int int [f'(l) f(m) - f(l) f'(m)] / T(l - m), T = tanh or identity.

    The diagonal uses the limit f'' f - f'^2; pairs closer than 1e-4 use the
    first-order Taylor form of the same limit.
    """
    x, w = grid.nodes, grid.weights
    dx = x[:, None] - x[None, :]
    num = df[:, None] * f[None, :] - f[:, None] * df[None, :]
    close = np.abs(dx) < 1e-4
    T = dx if rational else np.tanh(dx)
    T = np.where(close, 1.0, T)
    lim = d2f * f - df * df
    taylor = 0.5 * (lim[:, None] + lim[None, :])
    vals = np.where(close, taylor, num / T)
    return complex(w @ vals @ w)


def edge_integral(grid, f, df, d2f, f_edge, edge, rational: bool = False) -> complex:
    """int [f(edge) - f(l)] / T(edge - l) dl with the removable point handled by Taylor."""
    x, w = grid.nodes, grid.weights
    sep = edge - x
    close = np.abs(sep) < 1e-4
    T = sep if rational else np.tanh(sep)
    T = np.where(close, 1.0, T)
    taylor = df + 0.5 * d2f * sep
    vals = np.where(close, taylor, (f_edge - f) / T)
    return complex(w @ vals)


@dataclass(frozen=True)
class NuFunction:
    grid: object
    samples: np.ndarray
    d1: np.ndarray
    d2: np.ndarray
    nu_plus: complex
    nu_minus: complex
    deriv_source: str


def nu_function(p: GskProblem, n: int = 128) -> NuFunction:
    grid = gauss_legendre(n, -p.q, p.q)
    x = grid.nodes
    one_plus = 1 + p.gamma * np.asarray(p.F(x), dtype=complex) * np.ones(n)
    nu = -np.log(one_plus) / (2j * math.pi)
    D = diff_matrix(grid)
    if p.dF is not None:
        d1 = -p.gamma * np.asarray(p.dF(x), dtype=complex) * np.ones(n) / (2j * math.pi * one_plus)
        source = "analytic"
    else:
        d1 = D @ nu
        source = "spectral"
    d2 = D @ d1
    edges = np.array([p.q, -p.q])
    nu_e = -np.log(1 + p.gamma * np.asarray(p.F(edges), dtype=complex) * np.ones(2)) / (2j * math.pi)
    return NuFunction(grid, nu, d1, d2, complex(nu_e[0]), complex(nu_e[1]), source)


def _log_sx(p: GskProblem, sigma: int) -> complex:
    return cmath.log(math.sinh(2 * p.q) * complex(np.asarray(p.dp0(np.array(sigma * p.q)))))


def w0_from_nu(p: GskProblem, nu: NuFunction, shift: int = 0) -> complex:
    """W0(m, [nu - shift]); the shift implements nu -> nu + integer."""
    grid = nu.grid
    x = grid.nodes
    f = nu.samples - shift
    nus = {1: nu.nu_plus - shift, -1: nu.nu_minus - shift}
    dp0 = np.asarray(p.dp0(x)) * np.ones(grid.n)
    dg = np.asarray(p.dg(x)) * np.ones(grid.n)
    total = -complex(grid.integrate((1j * p.m * dp0 + dg) * f))
    for sigma, ns in nus.items():
        lg = barnes_pair(ns, 1)
        if is_degenerate(lg):
            raise BarnesPoleError(f"nu_{sigma:+d} = {ns} hits a zero of the Barnes function")
        total -= ns * ns * (math.log(p.m) + _log_sx(p, sigma)) - lg
    total += 0.5 * antisym_double_integral(grid, f, nu.d1, nu.d2)
    for sigma, ns in nus.items():
        total += sigma * ns * edge_integral(grid, f, nu.d1, nu.d2, ns, sigma * p.q)
    return total


def w0(p: GskProblem, n: int = 128) -> complex:
    return w0_from_nu(p, nu_function(p, n))


def w_osc(p: GskProblem, sign: int, n: int = 128) -> complex:
    """W_{+-1} e^{+-i m [p0(q) - p0(-q)]}."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    nu = nu_function(p, n)
    grid = nu.grid
    nus = {1: nu.nu_plus, -1: nu.nu_minus}
    if nus[1] == 0 or nus[-1] == 0:
        return 0j
    log_u = 0j
    for sigma, ns in nus.items():
        if ns.imag == 0 and ns.real == math.floor(ns.real) and ns.real >= 0:
            raise ValueError("Gamma(-nu) has a pole")
        # tanh(q - sigma l) = sigma tanh(sigma q - l)
        e = edge_integral(grid, nu.samples, nu.d1, nu.d2, ns, sigma * p.q)
        log_u += (sigma * complex(np.asarray(p.g(np.array(sigma * p.q))))
                  + 2 * ns * _log_sx(p, sigma)
                  + log_gamma(-ns) - log_gamma(ns)
                  - 2 * e)
    dp = float(p.p0(np.array(p.q)) - p.p0(np.array(-p.q)))
    pref = nus[1] * nus[-1] / (math.sinh(2 * p.q) ** 2
                               * complex(np.asarray(p.dp0(np.array(p.q))))
                               * complex(np.asarray(p.dp0(np.array(-p.q)))))
    expo = (-2 + 2 * sign * (nus[1] + nus[-1])) * math.log(p.m)
    return pref * cmath.exp(sign * log_u + expo + sign * 1j * p.m * dp)


def relation_residual(p: GskProblem, n: int = 128) -> float:
    """|w_osc(+1) - exp(W0[nu-1] - W0[nu])| relative, and likewise for -1."""
    nu = nu_function(p, n)
    base = w0_from_nu(p, nu)
    res = 0.0
    for sign in (1, -1):
        lhs = w_osc(p, sign, n)
        rhs = cmath.exp(w0_from_nu(p, nu, shift=sign) - base)
        res = max(res, abs(lhs - rhs) / abs(rhs))
    return res
