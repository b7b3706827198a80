"""Special functions needed by the oscillator formulas.

Everything here is self-contained: Gamma and its logarithm use a Lanczos
sum, the polygammas use upward recurrence plus the asymptotic series, the
orthogonal polynomials use three-term recurrences and Kummer's function is
summed directly or, for large arguments, through Kummer's transformation and
the large-argument expansion.

Scalar entry points return :class:`SpecialFnResult`.  Array kernels used in
hot loops live in ``_backend``.
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from . import _backend
from .errors import (
    AccuracyLossError,
    DegreeBudgetError,
    DomainError,
    PoleError,
    RangeOverflowError,
)

EULER_GAMMA = 0.57721566490153286060651209008240243
PI = math.pi
EPS = np.finfo(float).eps

POLY_DEGREE_BUDGET = 200
# Above this argument the series is replaced by the transformed asymptotic
# expansion; below it the series error estimate is the smaller of the two.
KUMMER_SERIES_MAX_Z = 500.0
KUMMER_LOSS_BUDGET = 1e-8

# Godfrey's g = 607/128, 15-term Lanczos sum (coefficients re-derived at
# 60 digits by exact interpolation at z = 0..14).
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = (
    0.9999999999999970918205,
    57.15623566586292351658,
    -59.59796035547549124814,
    14.13609797474174717386,
    -0.4919138160976201997828,
    3.399464998481188869892e-5,
    4.652362892704857566523e-5,
    -9.837447530487956467654e-5,
    1.580887032249124888361e-4,
    -2.102644417241048831927e-4,
    2.174396181152126431961e-4,
    -1.643181065367638902171e-4,
    8.441822398385274329281e-5,
    -2.619083840158140866967e-5,
    3.689918265953162270368e-6,
)
_LN_SQRT_2PI = 0.91893853320467274178032973640562

# B_2k / (2k (2k-1)) for the Stirling series of ln Gamma
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)
# Bernoulli numbers B_2 .. B_16
_BERNOULLI = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
)
_GAMMA_MAX_ARG = 171.62


class SpecialFnResult(NamedTuple):
    value: float
    est_abs_error: float


def _lanczos_sum(zm1: float) -> float:
    s = _LANCZOS_C[0]
    for k in range(1, len(_LANCZOS_C)):
        s += _LANCZOS_C[k] / (zm1 + k)
    return s


def _sinpi(x: float) -> float:
    """sin(pi x) with exact zeros at the integers."""
    r = math.fmod(x, 2.0)
    if r < 0:
        r += 2.0
    if r == 0.0 or r == 1.0:
        return 0.0
    if r > 1.0:
        return -_sinpi(r - 1.0)
    if r > 0.5:
        r = 1.0 - r
    return math.sin(PI * r)


def _is_nonpositive_integer(z: float) -> bool:
    return z <= 0 and z == math.floor(z)


def _gamma_positive(z: float) -> float:
    zm1 = z - 1.0
    t = zm1 + _LANCZOS_G + 0.5
    half = t ** ((zm1 + 0.5) / 2.0)
    return math.sqrt(2.0 * PI) * half * (half * math.exp(-t)) * _lanczos_sum(zm1)


def gamma(z: float) -> SpecialFnResult:
    """Gamma function of a real argument.

    Uses the reflection formula below 1/2.  Raises :class:`PoleError` at the
    non-positive integers and :class:`RangeOverflowError` beyond ~171.6.
    """
    z = float(z)
    if not math.isfinite(z):
        raise DomainError(f"gamma: non-finite argument {z}")
    if _is_nonpositive_integer(z):
        raise PoleError(f"gamma: pole at z = {z}")
    if z > _GAMMA_MAX_ARG:
        raise RangeOverflowError(f"gamma({z}) exceeds the double range")
    if z >= 0.5:
        v = _gamma_positive(z)
        return SpecialFnResult(v, 8.0 * EPS * abs(v))
    s = _sinpi(z)
    g1 = _gamma_positive(1.0 - z)
    denom = s * g1
    if denom == 0.0 or not math.isfinite(denom):
        raise RangeOverflowError(f"gamma({z}) underflows the double range")
    v = PI / denom
    if not math.isfinite(v):
        raise RangeOverflowError(f"gamma({z}) exceeds the double range")
    return SpecialFnResult(v, 16.0 * EPS * abs(v) * (1.0 + abs(z)))


def _ln_gamma_stirling(z: float) -> float:
    inv = 1.0 / z
    inv2 = inv * inv
    s = 0.0
    p = inv
    for c in _STIRLING:
        s += c * p
        p *= inv2
    return (z - 0.5) * math.log(z) - z + _LN_SQRT_2PI + s


def ln_gamma(z: float) -> SpecialFnResult:
    """ln Gamma(z) for z > 0; safe for arguments up to and beyond 1e6."""
    z = float(z)
    if not (z > 0) or not math.isfinite(z):
        raise DomainError(f"ln_gamma: requires finite z > 0, got {z}")
    if z >= 12.0:
        v = _ln_gamma_stirling(z)
    elif z >= 0.5:
        zm1 = z - 1.0
        t = zm1 + _LANCZOS_G + 0.5
        v = _LN_SQRT_2PI + (zm1 + 0.5) * math.log(t) - t + math.log(_lanczos_sum(zm1))
    else:
        return SpecialFnResult(ln_gamma(z + 1.0).value - math.log(z), 8.0 * EPS * (1.0 + abs(math.log(z))))
    return SpecialFnResult(v, 8.0 * EPS * max(1.0, abs(v)))


def _polygamma_shift(z: float, name: str) -> tuple[float, float, float]:
    if not (z > 0) or not math.isfinite(z):
        raise DomainError(f"{name}: requires finite z > 0, got {z}")
    acc1 = 0.0
    acc2 = 0.0
    while z < 10.0:
        acc1 += 1.0 / z
        acc2 += 1.0 / (z * z)
        z += 1.0
    return z, acc1, acc2


def digamma(z: float) -> SpecialFnResult:
    """psi(z) = Gamma'(z)/Gamma(z) for z > 0."""
    x, acc, _ = _polygamma_shift(float(z), "digamma")
    inv2 = 1.0 / (x * x)
    s = 0.0
    p = inv2
    for k, b in enumerate(_BERNOULLI, start=1):
        s += b / (2 * k) * p
        p *= inv2
    v = math.log(x) - 0.5 / x - s - acc
    return SpecialFnResult(v, 4.0 * EPS * (abs(v) + acc + math.log(x)))


def trigamma(z: float) -> SpecialFnResult:
    """psi'(z) for z > 0."""
    x, _, acc = _polygamma_shift(float(z), "trigamma")
    inv = 1.0 / x
    inv2 = inv * inv
    s = 0.0
    p = inv2 * inv
    for b in _BERNOULLI:
        s += b * p
        p *= inv2
    v = inv + 0.5 * inv2 + s + acc
    return SpecialFnResult(v, 4.0 * EPS * abs(v))


def _check_degree(n: int, name: str) -> int:
    if int(n) != n or n < 0:
        raise DomainError(f"{name}: degree must be a non-negative integer, got {n}")
    if n > POLY_DEGREE_BUDGET:
        raise DegreeBudgetError(f"{name}: degree {n} exceeds budget {POLY_DEGREE_BUDGET}")
    return int(n)


def laguerre(n: int, eta: float, z):
    """Associated Laguerre polynomial L_n^(eta)(z) by forward recurrence.

    ``z`` may be a scalar or an array.
    """
    n = _check_degree(n, "laguerre")
    out = _backend.laguerre_array(n, float(eta), np.atleast_1d(np.asarray(z, dtype=float)))
    return float(out[0]) if np.ndim(z) == 0 else out.reshape(np.shape(z))


def laguerre_coefficients(n: int, eta: float) -> np.ndarray:
    """Power-sum coefficients c_j with L_n^(eta)(z) = sum_j c_j z^j.

    c_j = (-1)^j binom(n+eta, n-j) / j!, built by exact ratios of
    neighbouring terms so no Gamma evaluation is needed.
    """
    n = _check_degree(n, "laguerre_coefficients")
    c = np.empty(n + 1)
    # c_n = (-1)^n / n!
    c[n] = (-1.0) ** n / math.factorial(n) if n <= 170 else 0.0
    for j in range(n, 0, -1):
        # c_{j-1}/c_j = -j (eta + j) / (n - j + 1)
        c[j - 1] = -c[j] * j * (eta + j) / (n - j + 1)
    return c


def hermite(n: int, z):
    """Physicists' Hermite polynomial H_n(z)."""
    n = _check_degree(n, "hermite")
    out = _backend.hermite_array(n, np.atleast_1d(np.asarray(z, dtype=float)))
    return float(out[0]) if np.ndim(z) == 0 else out.reshape(np.shape(z))


def _check_kummer_q(q: float) -> None:
    if _is_nonpositive_integer(q):
        raise PoleError(f"kummer: q = {q} is a non-positive integer")


def _gamma_sign(x: float) -> float:
    if x > 0:
        return 1.0
    return -1.0 if math.floor(-x) % 2 == 0 else 1.0


def _kummer_asymptotic_scaled(p: float, q: float, z: np.ndarray):
    """exp(-z) M(p,q,z) for large positive z via M(p,q,z) = e^z M(q-p,q,-z)."""
    value = np.zeros_like(z)
    err = np.zeros_like(z)
    if not _is_nonpositive_integer(p):
        # Gamma(q)/Gamma(p) z^(p-q) sum_k (q-p)_k (1-p)_k / (k! z^k),
        # each element truncated at its smallest term
        total = np.ones_like(z)
        term = np.ones_like(z)
        last = np.zeros_like(z)
        live = np.ones(z.shape, dtype=bool)
        for k in range(80):
            nxt = term * (q - p + k) * (1.0 - p + k) / ((k + 1) * z)
            stop = live & (np.abs(nxt) >= np.abs(term))
            last = np.where(stop, np.abs(term), last)
            live &= ~stop
            term = np.where(live, nxt, term)
            total = total + np.where(live, nxt, 0.0)
            settled = live & (np.abs(nxt) <= EPS * np.abs(total))
            last = np.where(settled, np.abs(nxt), last)
            live &= ~settled
            if not live.any():
                break
        last = np.where(live, np.abs(term), last)
        sign = _gamma_sign(q) * _gamma_sign(p)
        pref = sign * np.exp(math.lgamma(q) - math.lgamma(p) + (p - q) * np.log(z))
        value = pref * total
        err = np.abs(pref) * (last + 4.0 * EPS * np.abs(total))
    if not _is_nonpositive_integer(q - p):
        # subdominant branch Gamma(q)/Gamma(q-p) cos(pi p) z^(-p) e^(-z)
        with np.errstate(under="ignore", over="ignore"):
            mag = np.exp(math.lgamma(q) - math.lgamma(q - p) - p * np.log(z) - z)
        sub = _gamma_sign(q) * _gamma_sign(q - p) * math.cos(PI * p) * mag
        value = value + sub
        err = err + np.abs(sub) * 1e-3
    return value, err


def kummer_scaled(p: float, q: float, z):
    """Vectorised exp(-z) M(p, q, z) for z >= 0 with absolute error estimates.

    Returns ``(value, est_abs_error)`` arrays.  Below
    :data:`KUMMER_SERIES_MAX_Z` the direct series is summed; above it the
    transformed large-argument expansion is used.
    """
    _check_kummer_q(q)
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise DomainError("kummer_scaled: z must be non-negative")
    flat = z.ravel()
    val = np.empty_like(flat)
    err = np.empty_like(flat)
    small = flat <= KUMMER_SERIES_MAX_Z
    if small.any():
        v, e = _backend.kummer_series_scaled(float(p), float(q), flat[small])
        val[small] = v
        err[small] = e
    if (~small).any():
        v, e = _kummer_asymptotic_scaled(float(p), float(q), flat[~small])
        val[~small] = v
        err[~small] = e
    return val.reshape(z.shape), err.reshape(z.shape)


def kummer_m(p: float, q: float, z: float) -> SpecialFnResult:
    """Kummer's confluent hypergeometric function M(p, q, z), z >= 0."""
    z = float(z)
    if z < 0 or not math.isfinite(z):
        raise DomainError(f"kummer_m: requires finite z >= 0, got {z}")
    v, e = kummer_scaled(p, q, np.array([z]))
    if z > 709.0:
        raise RangeOverflowError(f"kummer_m: e^z overflows at z = {z}")
    scale = math.exp(z)
    value = float(v[0]) * scale
    err = float(e[0]) * scale
    if not math.isfinite(err) or err > KUMMER_LOSS_BUDGET * abs(value):
        raise AccuracyLossError(
            f"kummer_m({p}, {q}, {z}): estimated error {err:.3e} exceeds budget "
            f"for value {value:.6e}"
        )
    return SpecialFnResult(value, err)
