"""Pure-Python (numpy) implementations of the hot kernels.

These mirror the compiled module ``_kernels`` one to one and are selected
automatically when the extension is not built.
"""
import numpy as np

_EPS = np.finfo(float).eps
_MAX_TERMS = 5000


def laguerre_array(n, eta, z):
    """L_n^(eta)(z) by the three-term recurrence, elementwise over ``z``."""
    z = np.asarray(z, dtype=float)
    prev = np.ones_like(z)
    if n == 0:
        return prev
    cur = 1.0 + eta - z
    for k in range(1, n):
        nxt = ((2 * k + 1 + eta - z) * cur - (k + eta) * prev) / (k + 1)
        prev, cur = cur, nxt
    return cur


def hermite_array(n, z):
    """Physicists' Hermite polynomial H_n(z) by recurrence."""
    z = np.asarray(z, dtype=float)
    prev = np.ones_like(z)
    if n == 0:
        return prev
    cur = 2.0 * z
    for k in range(1, n):
        prev, cur = cur, 2.0 * z * cur - 2.0 * k * prev
    return cur


def kummer_series_scaled(p, q, z):
    """exp(-z) * M(p, q, z) from the power series, with a rounding estimate.

    Returns ``(value, abs_err)``; ``abs_err`` is infinite where the series
    did not settle within the term budget.
    """
    z = np.asarray(z, dtype=float)
    shape = z.shape
    z = z.ravel()
    total = np.ones_like(z)
    absum = np.ones_like(z)
    term = np.ones_like(z)
    active = np.ones(z.shape, dtype=bool)
    m_stop = max(-p, 0.0) + 1.0
    m = 0
    while active.any() and m < _MAX_TERMS:
        idx = np.nonzero(active)[0]
        t = term[idx] * ((p + m) / (q + m)) * z[idx] / (m + 1)
        term[idx] = t
        total[idx] += t
        absum[idx] += np.abs(t)
        m += 1
        done = (t == 0.0) | (
            (m > m_stop) & (m + 1 > z[idx]) & (np.abs(t) <= 1e-17 * absum[idx])
        )
        active[idx[done]] = False
    scale = np.exp(-z)
    err = (4.0 + np.sqrt(m)) * _EPS * absum * scale
    err[active] = np.inf
    return (total * scale).reshape(shape), err.reshape(shape)
