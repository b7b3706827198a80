# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels (see ``_kernels_py`` for the reference)."""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, fabs, sqrt, INFINITY

cnp.import_array()

cdef double _EPS = 2.220446049250313e-16
cdef int _MAX_TERMS = 5000


def laguerre_array(int n, double eta, z):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] zz = np.ascontiguousarray(z, dtype=np.float64).ravel()
    cdef Py_ssize_t i, npts = zz.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cur = np.ones(npts)
    if n == 0:
        return cur.reshape(np.shape(z))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] prev = np.ones(npts)
    cdef double[::1] xv = zz, cv = cur, pv = prev
    cdef int k
    cdef double a, b, d, nxt
    for i in range(npts):
        cv[i] = 1.0 + eta - xv[i]
    # recurrence index outermost so the inner loop runs over contiguous points
    for k in range(1, n):
        a = 2 * k + 1 + eta
        b = k + eta
        d = k + 1
        for i in range(npts):
            nxt = ((a - xv[i]) * cv[i] - b * pv[i]) / d
            pv[i] = cv[i]
            cv[i] = nxt
    return cur.reshape(np.shape(z))


def hermite_array(int n, z):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] zz = np.ascontiguousarray(z, dtype=np.float64).ravel()
    cdef Py_ssize_t i, npts = zz.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cur = np.ones(npts)
    if n == 0:
        return cur.reshape(np.shape(z))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] prev = np.ones(npts)
    cdef double[::1] xv = zz, cv = cur, pv = prev
    cdef int k
    cdef double nxt
    for i in range(npts):
        cv[i] = 2.0 * xv[i]
    for k in range(1, n):
        for i in range(npts):
            nxt = 2.0 * xv[i] * cv[i] - 2.0 * k * pv[i]
            pv[i] = cv[i]
            cv[i] = nxt
    return cur.reshape(np.shape(z))


def kummer_series_scaled(double p, double q, z):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] zz = np.ascontiguousarray(z, dtype=np.float64).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] val = np.empty_like(zz)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] err = np.empty_like(zz)
    cdef Py_ssize_t i, npts = zz.shape[0]
    cdef int m
    cdef double x, t, total, absum, scale
    cdef double m_stop = (-p if p < 0.0 else 0.0) + 1.0
    cdef bint settled
    for i in range(npts):
        x = zz[i]
        t = 1.0
        total = 1.0
        absum = 1.0
        settled = False
        m = 0
        while m < _MAX_TERMS:
            t = t * ((p + m) / (q + m)) * x / (m + 1)
            total += t
            absum += fabs(t)
            m += 1
            if t == 0.0 or (m > m_stop and m + 1 > x and fabs(t) <= 1e-17 * absum):
                settled = True
                break
        scale = exp(-x)
        val[i] = total * scale
        if settled:
            err[i] = (4.0 + sqrt(m)) * _EPS * absum * scale
        else:
            err[i] = INFINITY
    shape = np.shape(z)
    return val.reshape(shape), err.reshape(shape)
