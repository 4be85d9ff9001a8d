"""Fredholm determinants on an interval and on closed contours around it."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .numkit import Grid, gauss_legendre, lu_solve_det


@dataclass(frozen=True)
class Contour:
    """Ellipse centred at 0 with semi-axes (q+d, d), trapezoidal in the angle."""

    q: float
    d: float
    nodes: np.ndarray
    dw: np.ndarray

    @property
    def n(self) -> int:
        return len(self.nodes)

    def refined(self, factor: int = 2) -> "Contour":
        return make_contour(self.q, self.d, self.n * factor)

    def winding(self, lam) -> np.ndarray:
        lam = np.atleast_1d(np.asarray(lam, dtype=complex))
        return (self.dw[None, :] / (self.nodes[None, :] - lam[:, None])).sum(axis=1) / (2j * math.pi)


def make_contour(q: float, d: float, n: int = 256) -> Contour:
    if q <= 0 or d <= 0 or n < 4:
        raise ValueError("need q > 0, d > 0, n >= 4")
    t = 2 * math.pi * np.arange(n) / n
    a = q + d
    nodes = a * np.cos(t) + 1j * d * np.sin(t)
    dw = (-a * np.sin(t) + 1j * d * np.cos(t)) * (2 * math.pi / n)
    return Contour(q, d, nodes, dw)


def default_height(strip: float) -> float:
    """d with 2d below the kernel strip width; strip = min(zeta, pi - zeta) or c."""
    return strip / 4


@dataclass(frozen=True)
class FredholmResult:
    log_det: complex
    n_nodes: int
    refinement_delta: float

    @property
    def det(self) -> complex:
        return complex(np.exp(self.log_det))


def _interval_logdet(kernel, grid: Grid) -> complex:
    x = grid.nodes
    s = np.sqrt(grid.weights)
    M = np.eye(grid.n) + s[:, None] * np.asarray(kernel(x[:, None], x[None, :]), dtype=complex) * s[None, :]
    return lu_solve_det(M)[1]


def _contour_logdet(kernel, contour: Contour) -> complex:
    w = contour.nodes
    M = np.eye(contour.n) + np.asarray(kernel(w[:, None], w[None, :]), dtype=complex) * (contour.dw / (2j * math.pi))[None, :]
    return lu_solve_det(M)[1]


def _wrap_delta(a: complex, b: complex) -> float:
    # log dets may differ by 2 pi i between resolutions
    d = b - a
    d -= 2j * math.pi * round(d.imag / (2 * math.pi))
    return abs(d)


def det_interval(kernel: Callable, grid: Grid, refine: bool = True) -> FredholmResult:
    """log det(I + V) with V(x, y) = kernel(x, y) on grid's interval (vectorized kernel)."""
    ld = _interval_logdet(kernel, grid)
    delta = math.nan
    if refine:
        fine = gauss_legendre(2 * grid.n, grid.a, grid.b)
        delta = _wrap_delta(ld, _interval_logdet(kernel, fine))
    return FredholmResult(ld, grid.n, delta)


def det_contour(kernel: Callable, contour: Contour, refine: bool = True) -> FredholmResult:
    """log det(I + (1/2 pi i) U) with U(w, w') = kernel(w, w') acting on the contour."""
    ld = _contour_logdet(kernel, contour)
    delta = math.nan
    if refine:
        delta = _wrap_delta(ld, _contour_logdet(kernel, contour.refined()))
    return FredholmResult(ld, contour.n, delta)


def _curve(curve):
    if isinstance(curve, Contour):
        return curve.nodes, curve.dw
    return curve.nodes.astype(complex), curve.weights.astype(complex)


def shift_identity_check(V: Callable, h: Callable, w0: complex, curve) -> float:
    """Residual of det[I+V] = (g(w0)/h(w0)) det[I + V(w,w') - g(w)/g(w0) V(w0,w')],
    g = h + V h, all operators acting with the curve's measure."""
    x, wt = _curve(curve)
    n = len(x)
    Vm = np.asarray(V(x[:, None], x[None, :]), dtype=complex)
    lhs = lu_solve_det(np.eye(n) + Vm * wt[None, :])[1]
    hx = np.asarray(h(x), dtype=complex)
    V0 = np.asarray(V(np.full(n, w0), x), dtype=complex)
    g = hx + Vm @ (wt * hx)
    g0 = complex(h(np.array([w0]))[0] + V0 @ (wt * hx))
    if g0 == 0:
        raise ZeroDivisionError("g(w0) = 0")
    h0 = complex(h(np.array([w0]))[0])
    M = np.eye(n) + (Vm - np.outer(g / g0, V0)) * wt[None, :]
    rhs = np.log(g0 / h0) + lu_solve_det(M)[1]
    return abs(np.exp(lhs) - np.exp(rhs)) / abs(np.exp(lhs))


def theta_independence_check(U_family: Callable, theta1: complex, theta2: complex,
                             normalizer: Callable, contour: Contour) -> float:
    """Relative difference of det[I + U_theta/2pi i]/normalizer(theta) at two thetas."""
    vals = []
    for th in (theta1, theta2):
        ld = det_contour(U_family(th), contour, refine=False).log_det
        vals.append(np.exp(ld) / normalizer(th))
    return abs(vals[0] - vals[1]) / abs(vals[0])
