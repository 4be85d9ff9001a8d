import math

import numpy as np
import pytest

from bethe_asym.fredholm import (det_contour, det_interval, make_contour, shift_identity_check,
                                 theta_independence_check)
from bethe_asym.numkit import gauss_legendre


def test_zero_kernels():
    g = gauss_legendre(16, -1, 1)
    assert det_interval(lambda x, y: 0 * x * y, g).log_det == 0
    c = make_contour(1.0, 0.3, 64)
    assert det_contour(lambda x, y: 0 * x * y, c).log_det == 0


def test_rank_one_interval():
    g = gauss_legendre(40, -1, 1)
    r = det_interval(lambda x, y: np.exp(x) * np.cos(y), g)
    # int_{-1}^{1} e^x cos x dx
    exact = math.log(1 + (math.exp(1) * (math.sin(1) + math.cos(1)) - math.exp(-1) * (math.cos(1) - math.sin(1))) / 2)
    assert abs(r.log_det - exact) < 1e-13
    assert r.refinement_delta < 1e-13


def test_rank_two_gram():
    g = gauss_legendre(40, -1, 1)
    u = [lambda x: np.ones_like(x), lambda x: x]
    v = [lambda y: np.cos(y), lambda y: y * y]
    r = det_interval(lambda x, y: u[0](x) * v[0](y) + u[1](x) * v[1](y), g)
    G = np.array([[g.integrate(v[a](g.nodes) * u[b](g.nodes)) for b in range(2)] for a in range(2)])
    assert abs(np.exp(r.log_det) - np.linalg.det(np.eye(2) + G)) < 1e-10


def test_winding():
    c = make_contour(1.0, 0.25, 256)
    lam = np.linspace(-1, 1, 21)
    assert np.max(np.abs(c.winding(lam) - 1)) < 1e-8


def test_contour_rank_one_residue():
    # kernel with a simple pole at a inside: det = 1 + residue
    a = 0.3 + 0.05j
    c = make_contour(1.0, 0.25, 256)
    r = det_contour(lambda w, wp: 0.5 * np.cos(w) / (wp - a), c)
    assert abs(r.det - (1 + 0.5 * np.cos(a))) < 1e-12


def test_contour_refinement_geometric():
    c = make_contour(1.0, 0.25, 64)
    kern = lambda w, wp: 0.2 * np.exp(-(w - wp) ** 2) / (wp - 0.1 - 0.6j)
    deltas = [det_contour(kern, make_contour(1.0, 0.25, n)).refinement_delta for n in (32, 64, 128)]
    assert deltas[2] < deltas[1] < deltas[0] or deltas[2] < 1e-14


def test_shift_identity_trivial_and_rank_one():
    g = gauss_legendre(32, -1, 1)
    h = lambda w: np.exp(0.3 * w)
    assert shift_identity_check(lambda x, y: 0 * x * y, h, 0.2, g) < 1e-15
    assert shift_identity_check(lambda x, y: 0.4 * np.exp(x) * np.sin(y + 1), h, 0.2, g) < 1e-12


def test_theta_trivial():
    c = make_contour(1.0, 0.25, 32)
    assert theta_independence_check(lambda th: (lambda w, wp: 0 * w * wp), 0.1, 0.4, lambda th: 2.0, c) == 0
