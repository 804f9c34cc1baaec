"""Chebyshev series on y in [-1, 1].

A series of order N is the truncated expansion

    f(y) ~ a_1/2 + sum_{k=2}^{N} a_k T_{k-1}(y)

so the coefficient with 1-based index i multiplies T_{i-1} and the first one
enters with half weight. ``ChebyshevSeries.coeffs`` stores the same numbers
0-based: ``coeffs[0]`` is a_1.

Float64 series run on the compiled kernels when available (see
:mod:`schlafli._backend`). Series whose coefficients are :class:`mpmath.mpf`
(numpy object arrays) run on the arbitrary-precision kernels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import mpmath as mp
import numpy as np

from . import _mpkernels
from ._backend import kernels
from .errors import DomainError, EvaluationError, ShapeError

DEFAULT_TAIL = 3


@dataclass(frozen=True, eq=False)
class ChebyshevSeries:
    """Coefficients ``a_1 .. a_N`` of a Chebyshev series (0-based storage)."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = self.coeffs
        if not isinstance(c, np.ndarray):
            if c and isinstance(c[0], mp.mpf):
                c = np.array(list(c), dtype=object)
            else:
                c = np.asarray(c, dtype=np.float64)
        if c.dtype != object:
            c = np.ascontiguousarray(c, dtype=np.float64)
        if c.ndim != 1 or c.shape[0] < 2:
            raise ValueError(f"a series needs at least 2 coefficients, got shape {c.shape}")
        if c.dtype == object:
            if not all(mp.isfinite(v) for v in c):
                raise ValueError("series coefficients must be finite")
        elif not np.all(np.isfinite(c)):
            raise ValueError("series coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def N(self) -> int:
        return self.coeffs.shape[0]

    @property
    def is_multiprecision(self) -> bool:
        return self.coeffs.dtype == object

    def __call__(self, y):
        return clenshaw_eval(self, y)

    def __len__(self):
        return self.N

    def to_float(self) -> ChebyshevSeries:
        if not self.is_multiprecision:
            return self
        return ChebyshevSeries(np.array([float(v) for v in self.coeffs]))


def nodes(N: int) -> np.ndarray:
    """Zeros of T_N, y_k = cos(pi (k - 1/2) / N) for k = 1..N (decreasing)."""
    if N < 1:
        raise ValueError("N must be positive")
    k = np.arange(1, N + 1)
    return np.cos(np.pi * (2 * k - 1) / (2 * N))


@lru_cache(maxsize=64)
def cosine_matrix(N: int) -> np.ndarray:
    """``T[i, k] = T_i(y_{k+1})``, built from exact integer angle multiples."""
    i = np.arange(N)[:, None]
    k = np.arange(N)[None, :]
    m = (i * (2 * k + 1)) % (4 * N)
    out = np.cos(np.pi * m / (2 * N))
    out.setflags(write=False)
    return out


@lru_cache(maxsize=16)
def _mp_tables(N: int, dps: int):
    with mp.workdps(dps):
        return _mpkernels.nodes(N), _mpkernels.cosine_matrix(N)


def fit(f: Callable[[float], float], N: int, *, dps: int | None = None) -> ChebyshevSeries:
    """Fit ``f`` at the N zeros of T_N.

    The result interpolates ``f`` at every node. With ``dps`` set, nodes and
    sums are carried in mpmath at that many digits and ``f`` receives
    :class:`mpmath.mpf` arguments.
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    if dps is not None:
        ys, tmat = _mp_tables(N, dps)
        with mp.workdps(dps):
            values = [mp.mpf(f(y)) for y in ys]
            for k, v in enumerate(values):
                if not mp.isfinite(v):
                    raise EvaluationError(f"f is not finite at node {k + 1} (y={mp.nstr(ys[k], 17)})")
            return ChebyshevSeries(np.array(_mpkernels.fit_values(values, tmat), dtype=object))
    ys = nodes(N)
    values = np.array([f(float(y)) for y in ys], dtype=np.float64)
    return fit_values(values)


def fit_values(values: np.ndarray) -> ChebyshevSeries:
    """Series from samples already taken at :func:`nodes` (same order)."""
    values = np.ascontiguousarray(values, dtype=np.float64)
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        k = int(bad[0])
        raise EvaluationError(
            f"f is not finite at node {k + 1} (y={nodes(values.shape[0])[k]!r})")
    N = values.shape[0]
    return ChebyshevSeries(kernels.fit_values(values, cosine_matrix(N)))


def _check_y(y):
    if isinstance(y, np.ndarray):
        if y.size and (np.min(y) < -1.0 or np.max(y) > 1.0 or np.any(np.isnan(y))):
            raise DomainError("Chebyshev evaluation outside [-1, 1]")
    elif not (-1.0 <= y <= 1.0):
        raise DomainError(f"y={y!r} is outside [-1, 1]")


def clenshaw_eval(s: ChebyshevSeries, y):
    """Evaluate the series by Clenshaw's backward recurrence.

    ``y`` may be a scalar or a numpy array; values outside [-1, 1] raise
    :class:`DomainError` since the series is never extrapolated.
    """
    if not isinstance(y, np.ndarray) and not isinstance(y, mp.mpf):
        y = float(y)
    _check_y(y)
    if s.is_multiprecision:
        if isinstance(y, np.ndarray):
            return np.array([_mpkernels.clenshaw(list(s.coeffs), v) for v in y], dtype=object)
        return _mpkernels.clenshaw(list(s.coeffs), y)
    if isinstance(y, np.ndarray):
        a = s.coeffs
        r1 = np.zeros_like(y, dtype=np.float64)
        r2 = np.zeros_like(r1)
        two_y = 2.0 * y
        for ai in a[:0:-1]:
            r1, r2 = two_y * r1 - r2 + ai, r1
        return y * r1 - r2 + 0.5 * a[0]
    return kernels.clenshaw(s.coeffs, float(y))


def derivative_coeffs(s: ChebyshevSeries) -> ChebyshevSeries:
    """Coefficients b_i of the derivative series, same halved-b_1 convention.

    Solved downward from b_{N+1} = b_N = 0 using
    b_{k-1} = b_{k+1} + 2(k-1) a_k for k = N..2. The k = 1 instance of that
    relation has a zero left side and does not constrain b; b_1 comes from
    k = 2 and is read with half weight like a_1.
    """
    if s.is_multiprecision:
        a = list(s.coeffs)
        N = len(a)
        b = [mp.mpf(0)] * (N + 2)
        for k in range(N, 1, -1):
            b[k - 2] = b[k] + 2 * (k - 1) * a[k - 1]
        return ChebyshevSeries(np.array(b[:N], dtype=object))
    return ChebyshevSeries(kernels.derivative_coeffs(s.coeffs))


def product_coeffs(c: ChebyshevSeries, a: ChebyshevSeries) -> ChebyshevSeries:
    """Order-N series of the pointwise product, truncated at T_{N-1}.

    d_1 = c_1 a_1 / 2 + sum_{i>=2} c_i a_i, and for k >= 2
    d_k = (1/2) sum_{i=2}^{k-1} c_i a_{k+1-i}
          + (1/2) sum_{i=k}^{N} (c_i a_{i-k+1} + c_{i-k+1} a_i).
    """
    if c.N != a.N:
        raise ShapeError(f"series orders differ: {c.N} != {a.N}")
    if c.is_multiprecision or a.is_multiprecision:
        return ChebyshevSeries(np.array(
            _mpkernels.product_coeffs([mp.mpf(v) for v in c.coeffs], [mp.mpf(v) for v in a.coeffs]),
            dtype=object))
    return ChebyshevSeries(kernels.product_coeffs(c.coeffs, a.coeffs))


def truncation_error(s: ChebyshevSeries, tail: int = DEFAULT_TAIL) -> float:
    """Sum of |a_i| over the last ``tail`` coefficients.

    A computable stand-in for the omitted tail sum_{i>N} |a_i|, which is
    dominated by its first term when the coefficients decay quickly.
    """
    if not 0 < tail < s.N:
        raise ValueError(f"tail must satisfy 0 < tail < N={s.N}, got {tail}")
    return float(math.fsum(abs(float(v)) for v in s.coeffs[s.N - tail:]))
