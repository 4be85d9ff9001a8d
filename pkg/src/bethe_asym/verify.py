"""Identity checks: determinant cycle expansion, Lagrange series and their
generalizations, finite-N Fredholm representations, free-fermion closed forms."""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.signal import fftconvolve
from scipy.special import factorial

from .fredholm import Contour, det_contour, det_interval, shift_identity_check
from .numkit import NumericError, gauss_legendre, lu_solve_det


class ConvergenceError(NumericError):
    pass


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tol: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual) and self.residual < self.tol)


# ---------------------------------------------------------------- cycles

def partitions(n: int):
    """Integer partitions of n as {part: multiplicity}."""
    def rec(rest, largest):
        if rest == 0:
            yield {}
            return
        for k in range(min(rest, largest), 0, -1):
            for p in rec(rest - k, k):
                q = dict(p)
                q[k] = q.get(k, 0) + 1
                yield q
    yield from rec(n, n)


def cycle_expansion(A) -> tuple[complex, int]:
    """det A as sum over {l_s} of prod_s (1/l_s!) ((-1)^{s+1}/s)^{l_s} tr(A^s)^{l_s}."""
    A = np.asarray(A, dtype=complex)
    n = A.shape[0]
    traces = {}
    P = np.eye(n, dtype=complex)
    for s in range(1, n + 1):
        P = P @ A
        traces[s] = np.trace(P)
    total, count = 0j, 0
    for part in partitions(n):
        term = 1 + 0j
        for s, l in part.items():
            term *= ((-1) ** (s + 1) / s * traces[s]) ** l / math.factorial(l)
        total += term
        count += 1
    return total, count


def cycle_expansion_check(A) -> float:
    A = np.asarray(A, dtype=complex)
    if A.shape[0] > 8:
        raise ValueError("cycle expansion check limited to n <= 8")
    val, _ = cycle_expansion(A)
    det = cmath.exp(lu_solve_det(A)[1])
    return abs(det - val) / abs(det)


# ---------------------------------------------------------------- Lagrange, scalar

def damped_fixed_point(step: Callable, x0, damping: float = 0.5, tol: float = 1e-14, maxiter: int = 2000):
    x = np.asarray(x0, dtype=float)
    for it in range(maxiter):
        with np.errstate(over="ignore", invalid="ignore"):
            nxt = (1 - damping) * x + damping * np.asarray(step(x))
        if not np.all(np.isfinite(nxt)):
            raise ConvergenceError(f"fixed-point iteration diverged at step {it + 1}")
        if np.max(np.abs(nxt - x)) <= tol * max(1.0, np.max(np.abs(nxt))):
            return nxt, it + 1
        x = nxt
    raise ConvergenceError(f"fixed point not reached in {maxiter} iterations")


def lagrange_scalar_check(t: float, truncation: int) -> float:
    """sum_{n<=N} n^n t^n / n! against 1/(1 - T), T = t e^T."""
    if abs(t) >= 1 / math.e:
        raise ValueError("need |t| < 1/e")
    if t == 0:
        return 0.0
    series = 1.0 + sum(math.exp(n * math.log(n) + n * math.log(abs(t)) - math.lgamma(n + 1))
                       * (1 if t > 0 or n % 2 == 0 else -1) for n in range(1, truncation + 1))
    T, _ = damped_fixed_point(lambda x: t * np.exp(x), 0.0, damping=1.0)
    closed = 1 / (1 - float(T))
    return abs(series - closed) / abs(closed)


# ---------------------------------------------------------------- truncated polynomials

class Poly:
    """Dense multivariate polynomial truncated at total degree `deg`."""

    def __init__(self, coeffs: np.ndarray, deg: int):
        self.deg = deg
        self.c = coeffs * _mask(coeffs.ndim, deg)

    @classmethod
    def const(cls, value, nvar, deg):
        c = np.zeros((deg + 1,) * nvar)
        c[(0,) * nvar] = value
        return cls(c, deg)

    @classmethod
    def linear(cls, coefs, deg):
        nvar = len(coefs)
        c = np.zeros((deg + 1,) * nvar)
        for i, a in enumerate(coefs):
            idx = [0] * nvar
            idx[i] = 1
            if deg >= 1:
                c[tuple(idx)] = a
        return cls(c, deg)

    def __mul__(self, other: "Poly") -> "Poly":
        full = fftconvolve(self.c, other.c)
        sl = tuple(slice(0, self.deg + 1) for _ in range(self.c.ndim))
        return Poly(full[sl], self.deg)

    def __add__(self, other: "Poly") -> "Poly":
        return Poly(self.c + other.c, self.deg)

    def scale(self, a) -> "Poly":
        return Poly(self.c * a, self.deg)

    def compose_series(self, taylor: Sequence[float]) -> "Poly":
        """sum_k taylor[k] * self^k (self without constant term)."""
        nvar = self.c.ndim
        out = Poly.const(taylor[0], nvar, self.deg)
        p = Poly.const(1.0, nvar, self.deg)
        for k in range(1, self.deg + 1):
            p = p * self
            out = out + p.scale(taylor[k])
        return out


_MASKS: dict = {}


def _mask(nvar, deg):
    key = (nvar, deg)
    if key not in _MASKS:
        grids = np.indices((deg + 1,) * nvar)
        _MASKS[key] = (grids.sum(axis=0) <= deg).astype(float)
    return _MASKS[key]


def lagrange_series_sum(phis: Sequence[Poly], F: Poly, truncation: int) -> float:
    """sum_{|s| <= truncation} [eps^s] (prod_j phi_j^{s_j} F): the series of mixed partials."""
    nvar = len(phis)
    deg = truncation
    powers = []
    for ph in phis:
        row = [Poly.const(1.0, nvar, deg)]
        for _ in range(truncation):
            row.append(row[-1] * ph)
        powers.append(row)
    total = 0.0
    # accumulate products over the first nvar-1 factors, read the last by coefficient lookup
    for head in itertools.product(range(truncation + 1), repeat=nvar - 1):
        if sum(head) > truncation:
            continue
        acc = F
        for j, s in enumerate(head):
            acc = acc * powers[j][s]
        for s_last in range(truncation - sum(head) + 1):
            s = tuple(head) + (s_last,)
            prod_last = powers[-1][s_last]
            total += _coeff_of_product(acc, prod_last, s)
    return float(total)


def _coeff_of_product(a: Poly, b: Poly, s) -> float:
    sl_a = tuple(slice(0, k + 1) for k in s)
    A = a.c[sl_a]
    B = b.c[sl_a]
    Bf = B[tuple(slice(None, None, -1) for _ in s)]
    return float(np.sum(A * Bf))


# ---------------------------------------------------------------- Lagrange, matrix

@dataclass(frozen=True)
class LagrangeProblem:
    """phi_j = f(sum_a eps_a theta(mu_a, mu_j)), F = F(sum_a g(mu_a) eps_a)."""

    f: Callable
    df: Callable
    f_taylor: Callable  # k -> f^{(k)}(0)/k!
    F: Callable
    F_taylor: Callable
    theta: Callable
    g: Callable
    truncation: int = 12


def _taylor_list(fn, n):
    return [fn(k) for k in range(n + 1)]


def matrix_series(problem: LagrangeProblem, mu: np.ndarray) -> float:
    N, T = len(mu), problem.truncation
    th = problem.theta(mu[:, None], mu[None, :])  # th[a, j] = theta(mu_a, mu_j)
    ft = _taylor_list(problem.f_taylor, T)
    phis = [Poly.linear(th[:, j], T).compose_series(ft) for j in range(N)]
    F = Poly.linear(problem.g(mu), T).compose_series(_taylor_list(problem.F_taylor, T))
    return lagrange_series_sum(phis, F, T)


def matrix_closed_form(problem: LagrangeProblem, mu: np.ndarray, weights=None) -> float:
    """F({z})/det S with z_j = f(sum_a w_a z_a theta(mu_a, mu_j))."""
    N = len(mu)
    w = np.ones(N) if weights is None else weights
    th = problem.theta(mu[:, None], mu[None, :])
    z, _ = damped_fixed_point(lambda z: problem.f((w * z) @ th), np.full(N, problem.f(0.0)))
    X = (w * z) @ th
    S = np.eye(N) - problem.df(X)[:, None] * (th.T * w[None, :])
    ld = lu_solve_det(S)[1]
    return float((problem.F(np.dot(w * problem.g(mu), z)) / cmath.exp(ld)).real)


def lagrange_matrix_check(problem: LagrangeProblem, mu=(0.3, 2.5)) -> float:
    mu = np.asarray(mu, dtype=float)
    lhs = matrix_series(problem, mu)
    rhs = matrix_closed_form(problem, mu)
    return abs(lhs - rhs) / abs(rhs)


def default_matrix_problem(truncation: int = 12, scale: float = 0.1) -> LagrangeProblem:
    return LagrangeProblem(
        f=lambda x: scale * np.exp(x), df=lambda x: scale * np.exp(x),
        f_taylor=lambda k: scale / math.factorial(k),
        F=lambda y: 1 + y, F_taylor=lambda k: 1.0 if k < 2 else 0.0,
        theta=lambda a, b: np.cos(a - b), g=lambda m: np.asarray(m, dtype=float),
        truncation=truncation)


# ---------------------------------------------------------------- Lagrange, continuous

@dataclass(frozen=True)
class SeparableKernel:
    """theta(l, m) = sum_r a_r(l) b_r(m)."""

    a: Sequence[Callable]
    b: Sequence[Callable]

    def __call__(self, lam, mu):
        return sum(ar(lam) * br(mu) for ar, br in zip(self.a, self.b))


def gaussian_cos_kernel() -> SeparableKernel:
    """exp(-(l^2 + m^2)/2) cos(l - m), rank two."""
    env = lambda x: np.exp(-0.5 * np.asarray(x) ** 2)
    return SeparableKernel(
        a=(lambda x: env(x) * np.cos(x), lambda x: env(x) * np.sin(x)),
        b=(lambda x: env(x) * np.cos(x), lambda x: env(x) * np.sin(x)))


def default_continuous_problem(truncation: int = 8) -> LagrangeProblem:
    return LagrangeProblem(
        f=lambda x: 0.05 * (np.exp(x) - 1) + 0.05, df=lambda x: 0.05 * np.exp(x),
        f_taylor=lambda k: 0.05 / math.factorial(k),
        F=lambda y: np.exp(y), F_taylor=lambda k: 1 / math.factorial(k),
        theta=gaussian_cos_kernel(), g=lambda m: np.cos(m), truncation=truncation)


def continuous_series(problem: LagrangeProblem, q: float, n_nodes: int) -> float:
    """Truncated series of multiple integrals for a separable theta.

    With Y_0 = sum g eps and Y_r = sum a_r eps, the n-fold integral term equals
    the order-n part of the (R+1)-variable Lagrange series with
    Phi_r(Y) = int c_r(l) f(sum_r' b_r'(l) Y_r') dl,  c_0 = g, c_r = a_r.
    The moments of Phi_r are computed on the n_nodes Gauss lattice.
    """
    th = problem.theta
    if not isinstance(th, SeparableKernel):
        raise TypeError("continuous_series needs a SeparableKernel")
    T = problem.truncation
    R = len(th.a)
    nvar = R + 1
    grid = gauss_legendre(n_nodes, -q, q)
    x, w = grid.nodes, grid.weights
    bvals = [np.asarray(b(x)) for b in th.b]
    cvals = [np.asarray(problem.g(x))] + [np.asarray(a(x)) for a in th.a]
    ft = _taylor_list(problem.f_taylor, T)
    # coefficient of Y^alpha in f(b.Y): f_k k!/alpha! prod b^alpha, k = |alpha|; Y_0 absent
    phis = [Poly(np.zeros((T + 1,) * nvar), T) for _ in range(nvar)]
    idx = np.indices((T + 1,) * nvar)
    mask = _mask(nvar, T)
    deg = idx.sum(axis=0)
    mono_fact = np.prod(factorial(idx[1:]), axis=0)
    base = np.array(ft)[np.minimum(deg, T)] * factorial(deg) / mono_fact * (idx[0] == 0) * mask
    for i in range(n_nodes):
        monom = np.ones_like(mask)
        for r in range(1, nvar):
            monom = monom * bvals[r - 1][i] ** idx[r]
        term = base * monom
        for r in range(nvar):
            phis[r].c += w[i] * cvals[r][i] * term
    Fpoly = Poly.linear([1.0] + [0.0] * R, T).compose_series(_taylor_list(problem.F_taylor, T))
    return lagrange_series_sum(phis, Fpoly, T)


def picard_solution(problem: LagrangeProblem, f: Callable, grid, maxiter: int = 200, tol: float = 1e-12):
    x, w = grid.nodes, grid.weights
    Th = problem.theta(x[:, None], x[None, :])  # Th[l, m] = theta(l, m)
    z = np.full(grid.n, float(f(0.0)))
    for it in range(maxiter):
        with np.errstate(over="ignore", invalid="ignore"):
            nxt = 0.5 * z + 0.5 * f((w * z) @ Th)
        if not np.all(np.isfinite(nxt)):
            raise ConvergenceError(f"Picard iteration diverged at step {it + 1}")
        if np.max(np.abs(nxt - z)) < tol:
            return nxt, Th
        z = nxt
    raise ConvergenceError("Picard iteration exceeded 200 steps")


def continuous_closed_form(problem: LagrangeProblem, q: float, n_nodes: int, f=None, df=None) -> float:
    f = problem.f if f is None else f
    df = problem.df if df is None else df
    grid = gauss_legendre(n_nodes, -q, q)
    z, Th = picard_solution(problem, f, grid)
    X = (grid.weights * z) @ Th
    fp = df(X)
    kernel = _JacobianKernel(problem.theta, grid.nodes, fp)
    ld = det_interval(kernel, grid, refine=False).log_det
    num = problem.F(np.dot(grid.weights * problem.g(grid.nodes), z))
    return float((num / cmath.exp(ld)).real)


class _JacobianKernel:
    """-theta(m, l) f'(X(l)) with rows l and columns m on fixed nodes."""

    def __init__(self, theta, nodes, fp):
        self.M = -theta(nodes[None, :], nodes[:, None]) * fp[:, None]

    def __call__(self, a, b):
        if a.shape[0] == self.M.shape[0] and b.shape[1] == self.M.shape[1]:
            return self.M
        raise ValueError("kernel fixed to its construction nodes")


def lagrange_continuous_check(problem: LagrangeProblem, n_nodes: int = 48, q: float = 1.0) -> float:
    lhs = continuous_series(problem, q, n_nodes)
    rhs = continuous_closed_form(problem, q, n_nodes)
    return abs(lhs - rhs) / abs(rhs)


def multi_series_check(problem: LagrangeProblem, n_series: int = 2, gamma: float = 0.1,
                       n_nodes: int = 48, q: float = 1.0) -> float:
    """Coupled system z_{s,a} = f_s(sum_t sum_b w_b z_{t,b} theta(mu_b, mu_a)) with its
    nN Jacobian, against the single equation for f_sum = sum_s f_s."""
    fs = [lambda x, s=s: gamma ** s / s * problem.f(x) for s in range(1, n_series + 1)]
    dfs = [lambda x, s=s: gamma ** s / s * problem.df(x) for s in range(1, n_series + 1)]
    grid = gauss_legendre(n_nodes, -q, q)
    x, w = grid.nodes, grid.weights
    Th = problem.theta(x[:, None], x[None, :])
    N = n_nodes

    def step(zz):
        zz = zz.reshape(n_series, N)
        X = (w * zz.sum(axis=0)) @ Th
        return np.concatenate([f(X) for f in fs])

    zz, _ = damped_fixed_point(step, np.zeros(n_series * N))
    zz = zz.reshape(n_series, N)
    X = (w * zz.sum(axis=0)) @ Th
    S = np.eye(n_series * N)
    for s in range(n_series):
        for t in range(n_series):
            S[s * N:(s + 1) * N, t * N:(t + 1) * N] -= dfs[s](X)[:, None] * Th.T * w[None, :]
    path_a = problem.F(np.dot(w * problem.g(x), zz.sum(axis=0))) / cmath.exp(lu_solve_det(S)[1])
    fsum = lambda y: sum(f(y) for f in fs)
    dfsum = lambda y: sum(f(y) for f in dfs)
    path_b = continuous_closed_form(problem, q, n_nodes, fsum, dfsum)
    return abs(path_a.real - path_b) / abs(path_b)


# ---------------------------------------------------------------- finite-N Fredholm data

@dataclass(frozen=True)
class FiniteBetheData:
    zeta: float
    kappa: complex
    theta: complex
    lambdas: np.ndarray
    zs: np.ndarray

    def __post_init__(self):
        if len(set(np.round(self.lambdas, 14))) != len(self.lambdas) or \
                len(set(np.round(self.zs, 14))) != len(self.zs):
            raise ValueError("lambdas and zs must be pairwise distinct")

    def kk(self, x):
        iz = 1j * self.zeta
        x = np.asarray(x, dtype=complex)
        return 1 / np.tanh(x + iz) - self.kappa / np.tanh(x - iz)

    def V(self, mu, sign: int):
        mu = np.asarray(mu, dtype=complex)[..., None]
        iz = sign * 1j * self.zeta
        return np.prod(np.sinh(mu - self.lambdas + iz) / np.sinh(mu - self.zs + iz), axis=-1)


def random_bethe_data(rng, N: int, zeta: float, kappa: complex, theta: complex,
                      q: float = 1.0, d: float | None = None) -> FiniteBetheData:
    d = min(zeta, math.pi - zeta) / 4 if d is None else d
    lam = np.sort(rng.uniform(-0.8 * q, 0.8 * q, N))
    zs = lam + rng.uniform(-0.1, 0.1, N) + 1j * rng.uniform(-0.5 * d, 0.5 * d, N)
    return FiniteBetheData(zeta, kappa, theta, lam, zs)


def U_lambda_matrix(data: FiniteBetheData, theta=None) -> np.ndarray:
    th = data.theta if theta is None else theta
    lam, z, k = data.lambdas, data.zs, data.kappa
    N = len(lam)
    U = np.empty((N, N), dtype=complex)
    for j in range(N):
        num = np.prod(np.sinh(z - lam[j]))
        den = np.prod([np.sinh(lam[a] - lam[j]) for a in range(N) if a != j])
        vden = 1 / data.V(lam[j], 1) - k / data.V(lam[j], -1)
        U[j] = num / den * (data.kk(lam[j] - lam) - data.kk(th - lam)) / vden
    return U


def U_z_matrix(data: FiniteBetheData, theta=None) -> np.ndarray:
    th = data.theta if theta is None else theta
    lam, z, k = data.lambdas, data.zs, data.kappa
    N = len(lam)
    U = np.empty((N, N), dtype=complex)
    for kk in range(N):
        num = np.prod(np.sinh(z[kk] - lam))
        den = np.prod([np.sinh(z[kk] - z[a]) for a in range(N) if a != kk])
        vden = data.V(z[kk], -1) - k * data.V(z[kk], 1)
        U[:, kk] = num / den * (data.kk(z - z[kk]) - data.kk(z - th)) / vden
    return U


def contour_kernel_lambda(data: FiniteBetheData, theta=None) -> Callable:
    th = data.theta if theta is None else theta

    def kern(w, wp):
        w = np.asarray(w, dtype=complex)
        pref = -np.prod(np.sinh(w[..., None] - data.zs) / np.sinh(w[..., None] - data.lambdas), axis=-1)
        vden = 1 / data.V(w, 1) - data.kappa / data.V(w, -1)
        return pref / vden * (data.kk(w - wp) - data.kk(th - wp))
    return kern


def contour_kernel_z(data: FiniteBetheData, theta=None) -> Callable:
    th = data.theta if theta is None else theta

    def kern(w, wp):
        wp = np.asarray(wp, dtype=complex)
        pref = np.prod(np.sinh(wp[..., None] - data.lambdas) / np.sinh(wp[..., None] - data.zs), axis=-1)
        vden = data.V(wp, -1) - data.kappa * data.V(wp, 1)
        return pref / vden * (data.kk(w - wp) - data.kk(w - th))
    return kern


def fredholm_equiv_check(data: FiniteBetheData, contour: Contour) -> float:
    """max relative difference between det_N[1 + U] and the contour determinant, both families."""
    N = len(data.lambdas)
    res = 0.0
    for mat, kern in ((U_lambda_matrix(data), contour_kernel_lambda(data)),
                      (U_z_matrix(data), contour_kernel_z(data))):
        lhs = cmath.exp(lu_solve_det(np.eye(N) + mat)[1])
        rhs = det_contour(kern, contour, refine=False).det
        res = max(res, abs(lhs - rhs) / abs(lhs))
    return res


def comb_theta_check(data: FiniteBetheData, theta1: complex, theta2: complex) -> float:
    """det_N[1 + U(theta)] / (V_+^{-1}(theta) - kappa V_-^{-1}(theta)) at two thetas."""
    vals = []
    N = len(data.lambdas)
    for th in (theta1, theta2):
        det = cmath.exp(lu_solve_det(np.eye(N) + U_lambda_matrix(data, th))[1])
        vals.append(det / (1 / data.V(th, 1) - data.kappa / data.V(th, -1)))
    return abs(vals[0] - vals[1]) / abs(vals[0])


def free_fermion_closed_forms(data: FiniteBetheData) -> tuple[complex, complex]:
    """Cauchy-type closed forms of det_N[1 + U^(lambda)] and det_N[1 + U^(z)] at zeta = pi/2."""
    lam, z, th = data.lambdas, data.zs, data.theta
    N = len(lam)
    cross = np.prod(np.cosh(z[:, None] - lam[None, :]))
    tri = 1 + 0j
    for a in range(N):
        for b in range(a):
            tri *= np.cosh(z[a] - z[b]) * np.cosh(lam[a] - lam[b])
    ratio = np.prod(np.cosh(th - z) / np.cosh(th - lam))
    return ratio * tri / cross, tri / (ratio * cross)


def free_fermion_res_check(data: FiniteBetheData) -> float:
    N = len(data.lambdas)
    cl, cz = free_fermion_closed_forms(data)
    dl = cmath.exp(lu_solve_det(np.eye(N) + U_lambda_matrix(data))[1])
    dz = cmath.exp(lu_solve_det(np.eye(N) + U_z_matrix(data))[1])
    return max(abs(dl - cl) / abs(cl), abs(dz - cz) / abs(cz))


def shift_identity_random(rng, contour: Contour, w0: complex) -> float:
    """Shift identity with a smooth random kernel and h = exp(0.3 * sum of poles outside)."""
    c = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    c *= 0.05

    def V(w, wp):
        basis_w = np.stack([np.ones_like(w), w, w * w])
        basis_p = np.stack([np.ones_like(wp), np.cos(wp), np.exp(0.3 * wp)])
        return np.einsum("i...,ij,j...->...", basis_w, c, basis_p) + 0.02 * np.exp(-(w - wp) ** 2)

    def h(w):
        return np.exp(0.3 * np.log((w - 3.0) / (w + 3.0)))
    return shift_identity_check(V, h, w0, contour)


# ---------------------------------------------------------------- free-fermion suite

@dataclass
class Report:
    results: list = field(default_factory=list)

    def add(self, name, residual, tol, detail=""):
        self.results.append(CheckResult(name, float(residual), tol, detail))

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)


def free_fermion_suite(h: float = 2.0, n: int = 128, contour_nodes: int = 256, seed: int = 42) -> Report:
    from .asymptotics import Amplitudes, contour_for, generating_fn_full, szsz_osc_coefficient
    from .gsk import GskProblem, exact_gsk_logdet
    from .models import ModelSpec, bare_momentum, bare_momentum_deriv
    from .thermo import dressed_quantities

    rep = Report()
    model = ModelSpec.xxz(math.pi / 2, h)
    th = dressed_quantities(model, n)
    x = th.grid.nodes
    q_exact = 0.5 * math.acosh(4 / h) if h < 4 else math.nan
    rep.add("q closed form", abs(th.q - q_exact), 1e-8)
    rep.add("Z == 1", np.max(np.abs(th.Z - 1)), 1e-10)
    rep.add("rho = 1/(pi cosh 2l)", np.max(np.abs(th.rho - 1 / (math.pi * np.cosh(2 * x)))), 1e-10)
    rep.add("sin p_F = tanh 2q", abs(math.sin(th.p_F) - math.tanh(2 * th.q)), 1e-10)
    rep.add("D = p_F/pi", abs(th.D - th.p_F / math.pi), 1e-10)
    amp = Amplitudes(th, contour_for(th, n=contour_nodes))
    rep.add("C1 = 0", abs(amp.C1), 1e-8)
    zt, q = amp.zt, th.q
    rep.add("C0 from Cauchy transform",
            abs(2j * math.pi * (zt(q - 0.5j * math.pi) - zt(-q - 0.5j * math.pi)) - amp.C0), 1e-8)
    rep.add("det[I + U/2pi i] = 1", abs(amp.det_lambda(2j * math.pi) - 1), 1e-8)
    rep.add("oscillating coefficient 2/pi^2", abs(szsz_osc_coefficient(amp) - 2 / math.pi ** 2), 1e-6)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for N in (2, 3):
        data = random_bethe_data(rng, N, math.pi / 2, 0.6 + 0.2j, 0.2 + 0.05j, q=1.0)
        worst = max(worst, free_fermion_res_check(data))
    rep.add("closed-form det_N[1 + U] (arbitrary data)", worst, 1e-10)
    beta, m = 0.2, 160
    p = GskProblem(q=q, p0=lambda v: bare_momentum(model, v), dp0=lambda v: bare_momentum_deriv(model, v),
                   gamma=math.expm1(beta), m=m)
    exact = cmath.exp(exact_gsk_logdet(p))
    approx = generating_fn_full(amp, beta, m)
    rep.add("generating function at m=160", abs(approx - exact) / abs(exact), 1e-6)
    return rep
