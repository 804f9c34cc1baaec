# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels for the Chebyshev-coefficient recurrence.

Same contracts as :mod:`schlafli._pykernels`. Arrays are contiguous float64,
0-based: element ``i`` holds the coefficient multiplying ``T_i`` with the
first element carrying the halved weight.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()

BACKEND = "cython"


cdef void _fit(const double[:, ::1] tmat, const double[::1] values, double[::1] out) noexcept nogil:
    cdef Py_ssize_t N = values.shape[0]
    cdef Py_ssize_t i, j
    cdef double s
    for i in range(N):
        s = 0.0
        for j in range(N):
            s += tmat[i, j] * values[j]
        out[i] = 2.0 * s / N


cdef void _product(const double[::1] c, const double[::1] a, double[::1] d) noexcept nogil:
    cdef Py_ssize_t N = c.shape[0]
    cdef Py_ssize_t m, i
    cdef double s1, s2
    s2 = 0.0
    for i in range(1, N):
        s2 += c[i] * a[i]
    d[0] = 0.5 * c[0] * a[0] + s2
    for m in range(1, N):
        s1 = 0.0
        for i in range(1, m):
            s1 += c[i] * a[m - i]
        s2 = 0.0
        for i in range(m, N):
            s2 += c[i] * a[i - m] + c[i - m] * a[i]
        d[m] = 0.5 * s1 + 0.5 * s2


cdef void _solve(long n, const double[::1] d, double[::1] a) noexcept nogil:
    # 1-based k maps to index k-1; d_{N+1}=d_{N+2}=a_{N+1}=a_{N+2}=0
    cdef Py_ssize_t N = d.shape[0]
    cdef Py_ssize_t k
    a[N - 1] = d[N - 1] / (2.0 * N + n - 3.0)
    a[N - 2] = (d[N - 2] - 4.0 * (N - 1) * a[N - 1]) / (2.0 * N + n - 5.0)
    for k in range(N - 2, 0, -1):
        a[k - 1] = (d[k - 1] - d[k + 1] + (n - 2.0 * k - 3.0) * a[k + 1]
                    - 4.0 * k * a[k]) / (2.0 * k + n - 3.0)


def fit_values(const double[::1] values, const double[:, ::1] tmat):
    cdef Py_ssize_t N = values.shape[0]
    out = np.empty(N, dtype=np.float64)
    cdef double[::1] ov = out
    _fit(tmat, values, ov)
    return out


def product_coeffs(const double[::1] c, const double[::1] a):
    out = np.empty(c.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    _product(c, a, ov)
    return out


def solve_step(long n, const double[::1] d):
    out = np.empty(d.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    _solve(n, d, ov)
    return out


def advance(const double[::1] a_prev, long p, const double[:, ::1] tmat, const double[::1] nodes):
    """Map the coefficients of Q_{p-2} to those of Q_p."""
    cdef Py_ssize_t N = a_prev.shape[0]
    cdef Py_ssize_t j
    cdef double num = (p - 1.0) * (p - 1.0) * sqrt(<double>p * (p - 2.0))
    cdef double x
    g = np.empty(N, dtype=np.float64)
    c = np.empty(N, dtype=np.float64)
    d = np.empty(N, dtype=np.float64)
    out = np.empty(N, dtype=np.float64)
    cdef double[::1] gv = g
    cdef double[::1] cv = c
    cdef double[::1] dv = d
    cdef double[::1] ov = out
    with nogil:
        for j in range(N):
            x = nodes[j] + p
            gv[j] = num / (x * sqrt(x * x - 1.0))
        _fit(tmat, gv, cv)
        _product(cv, a_prev, dv)
        _solve(p, dv, ov)
    return out


def clenshaw(const double[::1] a, double y):
    cdef Py_ssize_t N = a.shape[0]
    cdef Py_ssize_t i
    cdef double r1 = 0.0, r2 = 0.0, t
    for i in range(N - 1, 0, -1):
        t = 2.0 * y * r1 - r2 + a[i]
        r2 = r1
        r1 = t
    return y * r1 - r2 + 0.5 * a[0]


def derivative_coeffs(const double[::1] a):
    cdef Py_ssize_t N = a.shape[0]
    cdef Py_ssize_t k
    out = np.zeros(N + 2, dtype=np.float64)
    cdef double[::1] b = out
    for k in range(N, 1, -1):
        b[k - 2] = b[k] + 2.0 * (k - 1) * a[k - 1]
    return out[:N].copy()
