"""Arbitrary-precision kernels on lists of :class:`mpmath.mpf`.

Plain loops only, so the field type is whatever the inputs carry. Used when
a run asks for more than binary64; orders of magnitude slower than the
float64 kernels.
"""

from __future__ import annotations

import mpmath as mp

BACKEND = "mpmath"


def nodes(N):
    return [mp.cos(mp.pi * (2 * j + 1) / (2 * N)) for j in range(N)]


def cosine_matrix(N):
    # reduce i*(2j+1) mod 4N so every angle is in [0, 2*pi)
    return [[mp.cos(mp.pi * ((i * (2 * j + 1)) % (4 * N)) / (2 * N)) for j in range(N)]
            for i in range(N)]


def fit_values(values, tmat):
    N = len(values)
    return [2 * mp.fsum(tmat[i][j] * values[j] for j in range(N)) / N for i in range(N)]


def product_coeffs(c, a):
    N = len(c)
    d = [c[0] * a[0] / 2 + mp.fsum(c[i] * a[i] for i in range(1, N))]
    for m in range(1, N):
        s1 = mp.fsum(c[i] * a[m - i] for i in range(1, m))
        s2 = mp.fsum(c[i] * a[i - m] + c[i - m] * a[i] for i in range(m, N))
        d.append((s1 + s2) / 2)
    return d


def solve_step(n, d):
    N = len(d)
    out = [mp.mpf(0)] * N
    out[N - 1] = d[N - 1] / (2 * N + n - 3)
    out[N - 2] = (d[N - 2] - 4 * (N - 1) * out[N - 1]) / (2 * N + n - 5)
    for k in range(N - 2, 0, -1):
        out[k - 1] = (d[k - 1] - d[k + 1] + (n - 2 * k - 3) * out[k + 1]
                      - 4 * k * out[k]) / (2 * k + n - 3)
    return out


def g_values(p, ys):
    num = (p - 1) ** 2 * mp.sqrt(p * (p - 2))
    return [num / ((y + p) * mp.sqrt((y + p) ** 2 - 1)) for y in ys]


def advance(a_prev, p, tmat, ys):
    c = fit_values(g_values(p, ys), tmat)
    return solve_step(p, product_coeffs(c, a_prev))


def clenshaw(a, y):
    y = mp.mpf(y)
    r1 = r2 = mp.mpf(0)
    for ai in reversed(a[1:]):
        r1, r2 = 2 * y * r1 - r2 + ai, r1
    return y * r1 - r2 + a[0] / 2
