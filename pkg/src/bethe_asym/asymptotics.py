"""Long-distance asymptotics: Cauchy transform of the dressed charge, the
constants C0, C1, the amplitude A~, the generating-function leading term and
the density-density expansions for both models."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .fredholm import Contour, default_height, det_contour, det_interval, make_contour
from .gsk import antisym_double_integral, edge_integral
from .models import k_kappa, kernel_K
from .numkit import NumericError
from .specfun import barnes_pair, is_degenerate
from .thermo import ThermoSolution

FREE_FERMION_TOL = 1e-10


class BetaDegenerateError(ValueError):
    pass


def contour_for(thermo: ThermoSolution, d: float | None = None, n: int = 256) -> Contour:
    m = thermo.model
    strip = min(m.zeta, math.pi - m.zeta) if m.is_xxz else m.c
    if d is None:
        d = min(default_height(strip), max(thermo.q, 1.0))
    if 2 * d >= strip:
        raise ValueError(f"contour height {d} violates 2d < {strip}")
    return make_contour(thermo.q, d, n)


def _shift(thermo: ThermoSolution) -> float:
    m = thermo.model
    return m.zeta if m.is_xxz else m.c


def is_free_fermion(thermo: ThermoSolution) -> bool:
    return thermo.model.is_xxz and abs(thermo.Z_q - 1) < FREE_FERMION_TOL


class CauchyTransform:
    """z~(w) = (1/2 pi i) int coth(l - w) Z(l) dl  (XXZ),  int Z(l)/(l - w) dl (Bose gas)."""

    def __init__(self, thermo: ThermoSolution, values=None):
        self.thermo = thermo
        self.xxz = thermo.model.is_xxz
        self.x = thermo.grid.nodes
        self.wZ = thermo.grid.weights * (thermo.Z if values is None else np.asarray(values))
        self.synthetic = values is not None
        self.q = thermo.q

    def _weight(self, lam, w):
        d = lam - w
        return 1 / np.tanh(d) if self.xxz else 1 / d

    def _primitive(self, w):
        """int_{-q}^{q} weight(l - w) dl, continuous branch along the real segment."""
        q = self.q
        w = np.asarray(w, dtype=complex)
        real = np.abs(w.imag) < 1e-300
        with np.errstate(all="ignore"):
            if self.xxz:
                cplx = (np.log(np.exp(2 * (q - w)) - 1) - (q - w)) - (np.log(np.exp(2 * (-q - w)) - 1) - (-q - w))
                rl = np.log(np.abs(np.sinh(q - w.real))) - np.log(np.abs(np.sinh(-q - w.real)))
            else:
                cplx = np.log(q - w) - np.log(-q - w)
                rl = np.log(np.abs(q - w.real)) - np.log(np.abs(-q - w.real))
        return np.where(real, rl, cplx)

    def _near(self, w):
        # Bernstein-ellipse estimate of the Gauss error for a pole at w
        u = np.asarray(w, dtype=complex) / self.q
        rho = np.abs(u + np.sqrt(u - 1) * np.sqrt(u + 1))
        rho = np.maximum(rho, 1 / np.maximum(rho, 1e-300))
        return 2 * len(self.x) * np.log(rho) < 40

    def __call__(self, w):
        w = np.asarray(w, dtype=complex)
        scalar = w.ndim == 0
        w = np.atleast_1d(w)
        if np.any((np.abs(w.imag) == 0) & (np.abs(w.real) <= self.q)):
            raise ValueError("z~ evaluated on the cut [-q, q]")
        out = (self._weight(self.x[None, :], w[:, None]) @ self.wZ) / (2j * math.pi)
        near = self._near(w)
        if np.any(near) and not self.synthetic:
            wn = w[near]
            Zw = self.thermo.Z_fn(wn)
            diff = self.thermo.Z[None, :] - Zw[:, None]
            body = (self._weight(self.x[None, :], wn[:, None]) * diff) @ self.thermo.grid.weights
            out[near] = (body + Zw * self._primitive(wn)) / (2j * math.pi)
        return out[0] if scalar else out


def const_C0(thermo: ThermoSolution) -> float:
    x, w, Z = thermo.grid.nodes, thermo.grid.weights, thermo.Z
    d = x[:, None] - x[None, :]
    if thermo.model.is_xxz:
        ker = 1 / np.sinh(d - 1j * thermo.model.zeta) ** 2
    else:
        ker = 1 / (d - 1j * thermo.model.c) ** 2
    val = (w * Z) @ ker @ (w * Z)
    if abs(val.imag) > 1e-9 * max(1.0, abs(val)):
        raise NumericError(f"C0 has imaginary part {val.imag:.3g}")
    return float(val.real)


def const_C1(thermo: ThermoSolution) -> float:
    x = thermo.grid.nodes
    Z = thermo.Z.astype(complex)
    dZ = thermo.Z_fn.deriv(x, 1)
    d2Z = thermo.Z_fn.deriv(x, 2)
    rational = not thermo.model.is_xxz
    val = 0.5 * antisym_double_integral(thermo.grid, Z, dZ, d2Z, rational)
    val += 2 * thermo.Z_q * edge_integral(thermo.grid, Z, dZ, d2Z, thermo.Z_q, thermo.q, rational)
    return float(val.real)


def log_det_K(thermo: ThermoSolution) -> complex:
    """log det[I + K/2pi] (XXZ) or log det[I - K/2pi] (Bose gas) on [-q, q]."""
    m = thermo.model
    res = det_interval(lambda a, b: m.sign * kernel_K(m, a - b) / (2 * math.pi), thermo.grid, refine=False)
    return res.log_det


def _kkappa_reduced(model, lam):
    # K_kappa / (1 - kappa) at zeta = pi/2
    return np.tanh(np.asarray(lam, dtype=complex))


class Amplitudes:
    """Everything built from one ThermoSolution and one contour."""

    def __init__(self, thermo: ThermoSolution, contour: Contour | None = None):
        self.thermo = thermo
        self.model = thermo.model
        self.contour = contour if contour is not None else contour_for(thermo)
        self.zt = CauchyTransform(thermo)
        self.s = _shift(thermo)
        w = self.contour.nodes
        self._zw = self.zt(w)
        self._zp = self.zt(w + 1j * self.s)
        self._zm = self.zt(w - 1j * self.s)
        self.free = is_free_fermion(thermo)

    @property
    def C0(self) -> float:
        return self._cached("_C0", lambda: const_C0(self.thermo))

    @property
    def C1(self) -> float:
        return self._cached("_C1", lambda: const_C1(self.thermo))

    @property
    def logdetK(self) -> complex:
        return self._cached("_ldK", lambda: log_det_K(self.thermo))

    def _cached(self, name, fn):
        if not hasattr(self, name):
            setattr(self, name, fn())
        return getattr(self, name)

    # kernels on the contour, as matrices over (w_i, w_j)
    def _kk(self, lam, kappa):
        return k_kappa(self.model, lam, kappa)

    def U_lambda(self, beta: complex, theta: complex) -> np.ndarray:
        w = self.contour.nodes
        kappa = cmath.exp(beta)
        if self.free and abs(kappa - 1) < 1e-14:
            pre = -np.exp(beta * (self._zw - self._zp))
            return pre[:, None] * (_kkappa_reduced(self.model, w[:, None] - w[None, :])
                                   - _kkappa_reduced(self.model, theta - w[None, :]))
        den = np.exp(beta * self._zp) - np.exp(beta + beta * self._zm)
        pre = -np.exp(beta * self._zw) / den
        return pre[:, None] * (self._kk(w[:, None] - w[None, :], kappa) - self._kk(theta - w[None, :], kappa))

    def U_z(self, beta: complex, theta: complex) -> np.ndarray:
        w = self.contour.nodes
        kappa = cmath.exp(beta)
        if self.free and abs(kappa - 1) < 1e-14:
            pre = np.exp(-beta * (self._zw - self._zp))
            return pre[None, :] * (_kkappa_reduced(self.model, w[:, None] - w[None, :])
                                   - _kkappa_reduced(self.model, w[:, None] - theta))
        den = np.exp(-beta * self._zm) - np.exp(beta - beta * self._zp)
        pre = np.exp(-beta * self._zw) / den
        return pre[None, :] * (self._kk(w[:, None] - w[None, :], kappa) - self._kk(w[:, None] - theta, kappa))

    def U_ll(self, theta: complex | None = None) -> np.ndarray:
        """Bose-gas kernel at beta = 2 pi i."""
        w = self.contour.nodes
        th = -self.thermo.q if theta is None else theta
        m = self.model
        den = np.exp(2j * math.pi * self._zp) - np.exp(2j * math.pi * self._zm)
        pre = 1j * np.exp(2j * math.pi * self._zw) / den
        return pre[:, None] * (kernel_K(m, w[:, None] - w[None, :]) - kernel_K(m, th - w[None, :]))

    def _contour_logdet(self, U: np.ndarray) -> complex:
        return det_contour(_MatrixKernel(U), self.contour, refine=False).log_det

    def det_lambda(self, beta, theta=None) -> complex:
        th = -self.thermo.q if theta is None else theta
        if not self.model.is_xxz:
            return cmath.exp(self._contour_logdet(self.U_ll(th)))
        return cmath.exp(self._contour_logdet(self.U_lambda(beta, th)))

    def det_z(self, beta, theta=None) -> complex:
        th = self.thermo.q if theta is None else theta
        return cmath.exp(self._contour_logdet(self.U_z(beta, th)))

    def A(self, beta: complex, theta1=None, theta2=None, limit: bool = False) -> complex:
        """The coefficient A(beta); beta = 0 is only available through the limit flag."""
        if not self.model.is_xxz:
            raise ValueError("A(beta) is implemented for the XXZ chain")
        if beta == 0:
            if limit:
                return 1.0 + 0j
            raise BetaDegenerateError("A(0) = 1 is a removable limit; pass limit=True")
        k = beta / (2j * math.pi)
        if abs(k - round(k.real)) < 1e-15:
            return 0j  # structural double zero from (e^beta - 1)^2
        q = self.thermo.q
        th1 = -q if theta1 is None else theta1
        th2 = q if theta2 is None else theta2
        zt, s = self.zt, self.s
        den1 = cmath.exp(beta * zt(th1 + 1j * s)) - cmath.exp(beta + beta * zt(th1 - 1j * s))
        den2 = cmath.exp(-beta * zt(th2 - 1j * s)) - cmath.exp(beta - beta * zt(th2 + 1j * s))
        num = complex(np.expm1(beta)) ** 2 * self.det_lambda(beta, th1) * self.det_z(beta, th2)
        return num / (den1 * den2 * cmath.exp(2 * self.logdetK))

    def A_tilde(self, theta=None) -> float:
        th = -self.thermo.q if theta is None else theta
        q, s, Zq = self.thermo.q, self.s, self.thermo.Z_q
        ph = cmath.exp(1j * math.pi * (self.zt(q - 1j * s) - self.zt(-q - 1j * s)))
        lg2 = barnes_pair(Zq, 2)
        det = self.det_lambda(2j * math.pi, th)
        if theta is not None and self.model.is_xxz:
            # move theta: normalise by the theta-dependent denominator ratio
            ref = self._theta_norm(-q)
            det = det * ref / self._theta_norm(th)
        val = ph * cmath.exp(lg2) * det / (math.pi * Zq * cmath.exp(self.logdetK))
        return abs(val) ** 2

    def _theta_norm(self, th):
        # kappa h(th - i s) - h(th + i s) with h = e^{beta z~}, beta = 2 pi i
        b = 2j * math.pi
        if self.free:
            # both terms vanish; use the reduced form e^{b z~(th + i s)}
            return cmath.exp(b * self.zt(th + 1j * self.s))
        return cmath.exp(b * self.zt(th - 1j * self.s)) - cmath.exp(b * self.zt(th + 1j * self.s))


class _MatrixKernel:
    """Adapter feeding a precomputed node matrix to det_contour."""

    def __init__(self, U):
        self.U = U

    def __call__(self, a, b):
        return self.U


@dataclass(frozen=True)
class AsymptoticExpansion:
    const_term: float
    power_amp: float
    power_exp: float
    osc_amp: float
    osc_exp: float
    osc_phase_rate: float
    validity_note: str = "leading order only"

    def power_term(self, m):
        return self.power_amp / np.asarray(m, dtype=float) ** self.power_exp

    def osc_term(self, m):
        m = np.asarray(m, dtype=float)
        return self.osc_amp * np.cos(self.osc_phase_rate * m) / m ** self.osc_exp

    def total(self, m):
        return self.const_term + self.power_term(m) + self.osc_term(m)


@dataclass(frozen=True)
class Constants:
    Z_q: float
    p_F: float
    D: float
    C0: float
    C1: float
    A_tilde: float
    F_sigma_sq: float


def szsz_constants(amp: Amplitudes) -> Constants:
    t = amp.thermo
    base = 2 * math.pi * math.sinh(2 * t.q) * t.rho_q
    At = amp.A_tilde()
    Fs = 4 * At * math.sin(t.p_F) ** 2 * math.exp(amp.C1 - amp.C0) * base ** (-2 * t.Z_q ** 2)
    return Constants(t.Z_q, t.p_F, t.D, amp.C0, amp.C1, At, Fs)


def szsz_leading(amp: Amplitudes) -> tuple[AsymptoticExpansion, Constants]:
    t = amp.thermo
    if not t.model.is_xxz:
        raise ValueError("szsz_leading needs the XXZ model")
    c = szsz_constants(amp)
    osc_amp = 2 * c.F_sigma_sq
    exp = AsymptoticExpansion(
        const_term=(2 * t.D - 1) ** 2,
        power_amp=-2 * t.Z_q ** 2 / math.pi ** 2,
        power_exp=2.0,
        osc_amp=osc_amp,
        osc_exp=2 * t.Z_q ** 2,
        osc_phase_rate=2 * t.p_F,
    )
    return exp, c


def szsz_osc_coefficient(amp: Amplitudes) -> float:
    """8 A~ e^{C1-C0} sin^2 p_F / [2 pi sinh 2q rho(q)]^{2 Z^2}, assembled term by term."""
    t = amp.thermo
    base = 2 * math.pi * math.sinh(2 * t.q) * t.rho_q
    return 8 * amp.A_tilde() * math.exp(amp.C1 - amp.C0) * math.sin(t.p_F) ** 2 / base ** (2 * t.Z_q ** 2)


def ll_jj_leading(amp: Amplitudes) -> tuple[AsymptoticExpansion, Constants]:
    t = amp.thermo
    if t.model.is_xxz:
        raise ValueError("ll_jj_leading needs the Bose gas")
    At = amp.A_tilde()
    base = 4 * math.pi * t.q * t.rho_q
    osc = 2 * At * t.p_F ** 2 * math.exp(amp.C1 - amp.C0) / base ** (2 * t.Z_q ** 2)
    exp = AsymptoticExpansion(
        const_term=t.D ** 2,
        power_amp=-t.Z_q ** 2 / (2 * math.pi ** 2),
        power_exp=2.0,
        osc_amp=osc,
        osc_exp=2 * t.Z_q ** 2,
        osc_phase_rate=2 * t.p_F,
    )
    return exp, Constants(t.Z_q, t.p_F, t.D, amp.C0, amp.C1, At, math.nan)


def generating_fn_G0(amp: Amplitudes, beta: complex, m: float, limit: bool = False, A_value=None) -> complex:
    t = amp.thermo
    if beta == 0:
        if limit:
            return 1.0 + 0j
        raise BetaDegenerateError("G0 at beta = 0 needs limit=True")
    A = amp.A(beta) if A_value is None else A_value
    if A == 0:
        return 0j
    x = beta * t.Z_q / (2j * math.pi)
    lg = barnes_pair(x, 1)
    if is_degenerate(lg):
        return 0j
    base = 2 * math.pi * math.sinh(2 * t.q) * t.rho_q * m
    log_rest = (beta * m * t.D + beta ** 2 * t.Z_q ** 2 / (2 * math.pi ** 2) * math.log(base)
                + 2 * lg + beta ** 2 / (4 * math.pi ** 2) * (amp.C0 - amp.C1))
    return A * cmath.exp(log_rest)


def generating_fn_full(amp: Amplitudes, beta: complex, m: float, limit: bool = False, A_cache=None) -> complex:
    total = 0j
    for sigma in (0, 1, -1):
        b = beta + 2j * math.pi * sigma
        Av = None
        if A_cache is not None and b != 0:
            Av = A_cache(b)
        total += generating_fn_G0(amp, b, m, limit=limit, A_value=Av)
    return total


def szsz_from_generating(amp: Amplitudes, m: int, step: float = 1e-3) -> float:
    """2 D_m^2 d^2/dbeta^2 <e^{beta Q}> + 2<s^z> - 1 with finite differences."""
    if m < 2:
        raise ValueError("m >= 2 required")
    t = amp.thermo

    @lru_cache(maxsize=None)
    def A_of(b):
        return amp.A(b)

    def d2(mm, h):
        f = lambda b: generating_fn_full(amp, b, mm, limit=True, A_cache=A_of)
        return ((f(h) - 2 * f(0) + f(-h)) / h ** 2).real

    def second(mm):
        return (4 * d2(mm, step / 2) - d2(mm, step)) / 3

    lattice = second(m + 1) + second(m - 1) - 2 * second(m)
    return 2 * lattice + 2 * (1 - 2 * t.D) - 1
