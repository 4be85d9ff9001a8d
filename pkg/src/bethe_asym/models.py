"""Kernels and bare momenta for the XXZ chain and the Lieb-Liniger gas."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

XXZ = "xxz"
LL = "ll"


@dataclass(frozen=True)
class ModelSpec:
    variant: str
    h: float
    zeta: float | None = None
    c: float | None = None

    def __post_init__(self):
        if self.variant == XXZ:
            if self.zeta is None or not 0 < self.zeta < math.pi:
                raise ValueError("XXZ needs 0 < zeta < pi")
        elif self.variant == LL:
            if self.c is None or self.c <= 0:
                raise ValueError("Lieb-Liniger needs c > 0")
        else:
            raise ValueError(f"unknown model variant {self.variant!r}")
        if self.h <= 0:
            raise ValueError("field / chemical potential must be positive")

    @classmethod
    def xxz(cls, zeta: float, h: float) -> "ModelSpec":
        return cls(XXZ, float(h), zeta=float(zeta))

    @classmethod
    def lieb_liniger(cls, c: float, h: float) -> "ModelSpec":
        return cls(LL, float(h), c=float(c))

    @property
    def is_xxz(self) -> bool:
        return self.variant == XXZ

    @property
    def sign(self) -> int:
        """+1: f + K*f/2pi = rhs (XXZ); -1: f - K*f/2pi = rhs (Bose gas)."""
        return 1 if self.is_xxz else -1

    @property
    def strip(self) -> float:
        """Distance to the nearest kernel pole off the real axis."""
        return self.zeta if self.is_xxz else self.c

    @property
    def is_free_fermion(self) -> bool:
        return self.is_xxz and abs(self.zeta - math.pi / 2) < 1e-14


def kernel_K(model: ModelSpec, lam):
    lam = np.asarray(lam, dtype=complex) if np.iscomplexobj(lam) else np.asarray(lam, dtype=float)
    if model.is_xxz:
        z = model.zeta
        # sinh(l+iz) sinh(l-iz) = (cosh 2l - cos 2z)/2
        return 2 * math.sin(2 * z) / (np.cosh(2 * lam) - math.cos(2 * z))
    c = model.c
    return 2 * c / (lam * lam + c * c)


def kernel_K_derivs(model: ModelSpec, lam):
    """(K, K', K'') on real or complex arguments."""
    lam = np.asarray(lam)
    if model.is_xxz:
        s = 2 * math.sin(2 * model.zeta)
        d = np.cosh(2 * lam) - math.cos(2 * model.zeta)
        d1 = 2 * np.sinh(2 * lam)
        d2 = 4 * np.cosh(2 * lam)
        return s / d, -s * d1 / d**2, -s * (d2 * d - 2 * d1 * d1) / d**3
    c = model.c
    den = lam * lam + c * c
    return 2 * c / den, -4 * c * lam / den**2, 4 * c * (3 * lam * lam - c * c) / den**3


def bare_momentum(model: ModelSpec, lam):
    """p0 on the real line, continuous with p0(0) = 0."""
    lam = np.asarray(lam, dtype=float)
    if model.is_xxz:
        # continuous branch of -i log[sinh(i z/2 - l) / sinh(i z/2 + l)]
        return 2 * np.arctan(np.tan(0.5 * (math.pi - model.zeta)) * np.tanh(lam))
    return lam.copy()


def bare_momentum_deriv(model: ModelSpec, lam):
    if model.is_xxz:
        z = model.zeta
        return 2 * math.sin(z) / (np.cosh(2 * np.asarray(lam)) - math.cos(z))
    return np.ones_like(np.asarray(lam))


def k_kappa(model: ModelSpec, lam, kappa):
    """coth(l + i z) - kappa coth(l - i z); rational analogue for the Bose gas."""
    lam = np.asarray(lam, dtype=complex)
    if model.is_xxz:
        iz = 1j * model.zeta
        return 1 / np.tanh(lam + iz) - kappa / np.tanh(lam - iz)
    ic = 1j * model.c
    return 1 / (lam + ic) - kappa / (lam - ic)
