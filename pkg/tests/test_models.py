import math

import numpy as np
import pytest

from bethe_asym.models import (ModelSpec, bare_momentum, bare_momentum_deriv, k_kappa, kernel_K,
                               kernel_K_derivs)


def test_validation():
    with pytest.raises(ValueError):
        ModelSpec.xxz(0.0, 1.0)
    with pytest.raises(ValueError):
        ModelSpec.xxz(1.0, -1.0)
    with pytest.raises(ValueError):
        ModelSpec.lieb_liniger(-1.0, 1.0)


def test_free_fermion_flags():
    m = ModelSpec.xxz(math.pi / 2, 2.0)
    assert m.is_free_fermion and m.sign == 1 and m.strip == math.pi / 2
    assert ModelSpec.lieb_liniger(2.0, 1.0).sign == -1
    assert np.allclose(kernel_K(m, np.linspace(-2, 2, 9)), 0, atol=1e-15)


def test_kernel_normalisation():
    # int K = 2(pi - 2 zeta) for XXZ, 2 pi for the Bose gas
    x = np.linspace(-60, 60, 400001)
    m = ModelSpec.xxz(1.0, 1.0)
    assert abs(np.trapezoid(kernel_K(m, x), x) - 2 * (math.pi - 2)) < 1e-6
    ll = ModelSpec.lieb_liniger(0.5, 1.0)
    xl = np.linspace(-4000, 4000, 800001)
    assert abs(np.trapezoid(kernel_K(ll, xl), xl) - 2 * math.pi) < 1e-3


@pytest.mark.parametrize("model", [ModelSpec.xxz(1.1, 1.0), ModelSpec.lieb_liniger(3.0, 1.0)])
def test_kernel_derivatives(model):
    x = np.linspace(-1.5, 1.5, 7)
    h = 1e-5
    K, K1, K2 = kernel_K_derivs(model, x)
    assert np.allclose((kernel_K(model, x + h) - kernel_K(model, x - h)) / (2 * h), K1, atol=1e-8)
    assert np.allclose((kernel_K_derivs(model, x + h)[1] - kernel_K_derivs(model, x - h)[1]) / (2 * h),
                       K2, atol=1e-7)


def test_bare_momentum():
    m = ModelSpec.xxz(1.2, 1.0)
    x = np.linspace(-3, 3, 13)
    h = 1e-6
    assert np.allclose((bare_momentum(m, x + h) - bare_momentum(m, x - h)) / (2 * h),
                       bare_momentum_deriv(m, x), atol=1e-8)
    # limits: p0(+-inf) = +-(pi - zeta)
    assert abs(bare_momentum(m, 40.0) - (math.pi - 1.2)) < 1e-12
    assert abs(bare_momentum(m, 0.0)) < 1e-15
    ff = ModelSpec.xxz(math.pi / 2, 1.0)
    assert np.allclose(bare_momentum_deriv(ff, x), 2 / np.cosh(2 * x))


def test_k_kappa_reduces_to_kernel():
    m = ModelSpec.xxz(0.9, 1.0)
    x = np.linspace(-1, 1, 5)
    assert np.allclose(k_kappa(m, x, 1.0), 1j * kernel_K(m, x)) or \
        np.allclose(k_kappa(m, x, 1.0), -1j * kernel_K(m, x))
