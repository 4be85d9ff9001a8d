"""Nystrom solution of the ground-state linear integral equations.

XXZ:          f(l) + (1/2pi) int_{-q}^{q} K(l-m) f(m) dm = rhs(l)
Bose gas:     f(l) - (1/2pi) int_{-q}^{q} K(l-m) f(m) dm = rhs(l)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .models import ModelSpec, bare_momentum_deriv, kernel_K, kernel_K_derivs
from .numkit import Grid, NumericError, find_root, gauss_legendre, lu_solve_det


class NoFermiSeaError(NumericError):
    pass


@dataclass(frozen=True)
class ThermoConfig:
    n: int = 128
    q_tol: float = 1e-13
    q_start: float = 1e-3
    q_max: float = 60.0


def ll_dressed_energy_rhs(lam, h):
    # convention for the Bose gas: eps - K*eps/2pi = lam^2 - h
    return lam * lam - h


@dataclass(frozen=True)
class NystromSolution:
    model: ModelSpec
    grid: Grid
    values: np.ndarray
    rhs: Callable = field(repr=False)

    def _sum(self, kvals):
        return (self.model.sign / (2 * math.pi)) * (kvals @ (self.grid.weights * self.values))

    def __call__(self, lam):
        """Nystrom interpolant; accepts real or complex arrays."""
        lam = np.asarray(lam)
        k = kernel_K(self.model, lam[..., None] - self.grid.nodes)
        return self.rhs(lam) - self._sum(k)

    def deriv(self, lam, order: int = 1, rhs_derivs=(0.0, 0.0)):
        """Derivative of the interpolant; rhs derivatives default to those of a constant."""
        lam = np.asarray(lam)
        ks = kernel_K_derivs(self.model, lam[..., None] - self.grid.nodes)
        extra = rhs_derivs[order - 1]
        extra = extra(lam) if callable(extra) else extra
        return extra - self._sum(ks[order])


def solve_linear_ie(model: ModelSpec, q: float, rhs: Callable, n: int = 128) -> NystromSolution:
    if q <= 0 or n < 8:
        raise ValueError("need q > 0 and n >= 8")
    grid = gauss_legendre(n, -q, q)
    x, w = grid.nodes, grid.weights
    A = np.eye(n) + (model.sign / (2 * math.pi)) * kernel_K(model, x[:, None] - x[None, :]) * w[None, :]
    b = np.asarray(rhs(x), dtype=float) * np.ones(n)
    sol, _ = lu_solve_det(A, b)
    values = sol.real.copy()
    values.setflags(write=False)
    return NystromSolution(model, grid, values, rhs)


def dressed_energy_rhs(model: ModelSpec) -> Callable:
    if model.is_xxz:
        s = math.sin(model.zeta)
        return lambda lam: model.h - 2 * s * bare_momentum_deriv(model, lam)
    return lambda lam: ll_dressed_energy_rhs(lam, model.h)


def _eps_at_boundary(model: ModelSpec, q: float, n: int) -> float:
    eps = solve_linear_ie(model, q, dressed_energy_rhs(model), n)
    return float(np.real(eps(np.array([q]))[0]))


def find_fermi_boundary(model: ModelSpec, n: int = 128, config: ThermoConfig = ThermoConfig()) -> float:
    rhs0 = float(dressed_energy_rhs(model)(np.array(0.0)))
    if rhs0 >= 0:
        raise NoFermiSeaError(
            f"eps(0) = {rhs0:.6g} >= 0 as q -> 0: field too strong, ground state has no Fermi sea")
    lo = config.q_start
    f_lo = _eps_at_boundary(model, lo, n)
    if f_lo >= 0:
        raise NoFermiSeaError("dressed energy non-negative at the smallest boundary tried")
    hi = lo
    while True:
        hi *= 2
        if hi > config.q_max:
            raise NoFermiSeaError(f"no sign change of eps(q) up to q = {config.q_max}")
        if _eps_at_boundary(model, hi, n) > 0:
            break
        lo = hi
    return find_root(lambda q: _eps_at_boundary(model, q, n), lo, hi, config.q_tol)


@dataclass(frozen=True)
class ThermoSolution:
    model: ModelSpec
    q: float
    grid: Grid
    rho: np.ndarray
    Z: np.ndarray
    eps: np.ndarray
    p_F: float
    D: float
    Z_q: float
    rho_q: float
    Z_fn: NystromSolution = field(repr=False)
    rho_fn: NystromSolution = field(repr=False)
    eps_fn: NystromSolution = field(repr=False)

    @property
    def n(self) -> int:
        return self.grid.n

    def dressed_momentum(self, lam):
        """p(lam) = 2pi int_0^lam rho, by Gauss on [0, lam]."""
        lam = float(lam)
        if lam == 0:
            return 0.0
        sub = gauss_legendre(self.n, min(0.0, lam), max(0.0, lam))
        val = 2 * math.pi * float(np.real(sub.integrate(self.rho_fn(sub.nodes))))
        return val if lam > 0 else -val


def dressed_quantities(model: ModelSpec, n: int = 128, config: ThermoConfig = ThermoConfig()) -> ThermoSolution:
    q = find_fermi_boundary(model, n, config)
    eps_fn = solve_linear_ie(model, q, dressed_energy_rhs(model), n)
    Z_fn = solve_linear_ie(model, q, lambda lam: np.ones(np.shape(lam)), n)
    if model.is_xxz:
        rho_fn = solve_linear_ie(model, q, lambda lam: bare_momentum_deriv(model, lam) / (2 * math.pi), n)
        rho = rho_fn.values
    else:
        rho_fn = NystromSolution(model, Z_fn.grid, Z_fn.values / (2 * math.pi),
                                 lambda lam: np.ones(np.shape(lam)) / (2 * math.pi))
        rho = rho_fn.values
    grid = Z_fn.grid
    D = float(grid.integrate(rho))
    bnd = np.array([q])
    sol = ThermoSolution(
        model=model, q=q, grid=grid, rho=rho, Z=Z_fn.values, eps=eps_fn.values,
        p_F=0.0, D=D, Z_q=float(np.real(Z_fn(bnd)[0])), rho_q=float(np.real(rho_fn(bnd)[0])),
        Z_fn=Z_fn, rho_fn=rho_fn, eps_fn=eps_fn)
    object.__setattr__(sol, "p_F", sol.dressed_momentum(q))
    return sol
