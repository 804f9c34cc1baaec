"""Pure-Python (numpy) kernels; the fallback when the compiled extension is absent.

Contracts match :mod:`schlafli._ckernels` exactly. Storage is 0-based:
element ``i`` multiplies ``T_i`` and element 0 carries the halved weight.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "python"


def fit_values(values: np.ndarray, tmat: np.ndarray) -> np.ndarray:
    N = values.shape[0]
    return 2.0 * (tmat @ values) / N


def product_coeffs(c: np.ndarray, a: np.ndarray) -> np.ndarray:
    N = c.shape[0]
    conv = np.convolve(c, a)[:N]
    # sum over i0 >= m of c[i0] a[i0-m] (and the mirror term)
    cross_ca = np.convolve(c, a[::-1])[N - 1:]
    cross_ac = np.convolve(a, c[::-1])[N - 1:]
    d = np.empty(N)
    d[0] = 0.5 * c[0] * a[0] + np.dot(c[1:], a[1:])
    inner = conv[1:] - c[0] * a[1:] - c[1:] * a[0]
    d[1:] = 0.5 * inner + 0.5 * (cross_ca[1:] + cross_ac[1:])
    return d


def solve_step(n: int, d: np.ndarray) -> np.ndarray:
    N = d.shape[0]
    dd = d.tolist()
    out = [0.0] * N
    out[N - 1] = dd[N - 1] / (2.0 * N + n - 3.0)
    out[N - 2] = (dd[N - 2] - 4.0 * (N - 1) * out[N - 1]) / (2.0 * N + n - 5.0)
    for k in range(N - 2, 0, -1):
        out[k - 1] = (dd[k - 1] - dd[k + 1] + (n - 2.0 * k - 3.0) * out[k + 1]
                      - 4.0 * k * out[k]) / (2.0 * k + n - 3.0)
    return np.array(out)


def advance(a_prev: np.ndarray, p: int, tmat: np.ndarray, nodes: np.ndarray) -> np.ndarray:
    """Map the coefficients of Q_{p-2} to those of Q_p."""
    num = (p - 1.0) * (p - 1.0) * math.sqrt(float(p) * (p - 2.0))
    x = nodes + p
    g = num / (x * np.sqrt(x * x - 1.0))
    c = fit_values(g, tmat)
    return solve_step(p, product_coeffs(c, a_prev))


def clenshaw(a: np.ndarray, y: float) -> float:
    r1 = 0.0
    r2 = 0.0
    for ai in a[:0:-1].tolist():
        r1, r2 = 2.0 * y * r1 - r2 + ai, r1
    return y * r1 - r2 + 0.5 * float(a[0])


def derivative_coeffs(a: np.ndarray) -> np.ndarray:
    N = a.shape[0]
    b = [0.0] * (N + 2)
    for k in range(N, 1, -1):
        b[k - 2] = b[k] + 2.0 * (k - 1) * float(a[k - 1])
    return np.array(b[:N])
