"""Complex log-Gamma and the Barnes G-function.

log_barnes_g1(z) returns log G(1+z) on the branch obtained by analytic
continuation from the positive real axis (real there, continuous off the
negative real axis), which is also the branch of log_gamma used in the
recurrence G(1+z) = Gamma(z) G(z).
"""

from __future__ import annotations

import cmath
import math

from scipy.special import zeta

EULER_GAMMA = 0.577215664901532860606512090082
ZETA_PRIME_M1 = -0.165421143700450929213919435798
LOG_2PI = math.log(2 * math.pi)

_LANCZOS_G = 7
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# Taylor coefficients of log G(1+z) beyond the quadratic part:
# sum_{k>=2} (-1)^k zeta(k) z^(k+1) / (k+1)
_TAYLOR_TERMS = 140
_TAYLOR = [(-1) ** k * float(zeta(k)) / (k + 1) for k in range(2, _TAYLOR_TERMS)]

# Bernoulli numbers B_4 .. B_20 for the large-|z| expansion
_BERNOULLI = (-1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6, -3617 / 510,
              43867 / 798, -174611 / 330)

NEG_INF = complex(-math.inf, 0.0)


class PoleError(ValueError):
    pass


def _is_nonpositive_int(z: complex) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real)


def _lanczos_log_gamma(z: complex) -> complex:
    # valid for Re z >= 1/2
    z = z - 1
    acc = _LANCZOS[0]
    for k in range(1, len(_LANCZOS)):
        acc += _LANCZOS[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return 0.5 * LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(acc)


def log_gamma(z: complex) -> complex:
    """log Gamma(z), real on the positive axis and analytic off the negative axis."""
    z = complex(z)
    if _is_nonpositive_int(z):
        raise PoleError(f"Gamma has a pole at {z.real:g}")
    if z.real >= 0.5:
        return _lanczos_log_gamma(z)
    # upward recurrence keeps the branch continuous (reflection would not)
    k = math.ceil(0.5 - z.real)
    shift = 0j
    for j in range(k):
        shift += cmath.log(z + j)
    return _lanczos_log_gamma(z + k) - shift


def _log_g1_taylor(r: complex) -> complex:
    acc = 0j
    p = r * r * r
    for c in _TAYLOR:
        term = c * p
        acc += term
        if abs(term) < 1e-18 * max(1.0, abs(acc)):
            break
        p *= r
    return 0.5 * r * LOG_2PI - 0.5 * (r + (1 + EULER_GAMMA) * r * r) + acc


def _log_g1_asymptotic(z: complex) -> complex:
    lz = cmath.log(z)
    acc = 0.5 * z * z * lz - 0.75 * z * z + 0.5 * z * LOG_2PI - lz / 12 + ZETA_PRIME_M1
    zinv2 = 1 / (z * z)
    p = zinv2
    for k, b in enumerate(_BERNOULLI, start=1):
        acc += b / (4 * k * (k + 1)) * p
        p *= zinv2
    return acc


def log_barnes_g1(z: complex) -> complex:
    """log G(1+z). Returns -inf at the zeros z = -1, -2, ..."""
    z = complex(z)
    if _is_nonpositive_int(z + 1):
        return NEG_INF
    n = round(z.real)
    r = z - n
    if abs(r) <= 0.7 and abs(n) <= 40:
        val = _log_g1_taylor(r)
        if n > 0:
            for k in range(n):
                val += log_gamma(1 + r + k)
        else:
            for k in range(n, 0):
                val -= log_gamma(1 + r + k)
        return val
    shift = max(0, math.ceil(14.0 - z.real)) if abs(z) < 14 or z.real < 0 else 0
    val = _log_g1_asymptotic(z + shift)
    for k in range(1, shift + 1):
        val -= log_gamma(z + k)
    return val


def barnes_pair(z: complex, offset: int = 1) -> complex:
    """log[G(offset+z) G(offset-z)] for offset 1 or 2.

    At offset 1 and z = +-1 one factor is G(0) = 0 and the -inf sentinel is
    returned; callers treat that as the degenerate case.
    """
    if offset not in (1, 2):
        raise ValueError("offset must be 1 or 2")
    a = log_barnes_g1(offset - 1 + z)
    b = log_barnes_g1(offset - 1 - z)
    if math.isinf(a.real) or math.isinf(b.real):
        return NEG_INF
    return a + b


def is_degenerate(value: complex) -> bool:
    return math.isinf(value.real) and value.real < 0
