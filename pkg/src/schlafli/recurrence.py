"""Chebyshev coefficients of the regular companion q_n on [n-1, n+1].

With y = x - n the function Q_n(y) = q_n(y + n) solves

    2 (1 + y) Q_n'(y) + (n - 1) Q_n(y) = G_n(y) Q_{n-2}(y),

    G_n(y) = (n-1)^2 sqrt(n (n-2)) / ((y + n) sqrt((y + n)^2 - 1)).

Substituting Chebyshev series for every factor turns this into a banded
three-term relation between the a_k, solved from the top coefficient down.
Starting from the closed-form Q_2 (even n) or Q_3 (odd n) and stepping n by
two reaches any target. Nothing pins Q_n(-1) = 1; the singular coefficient
of Q_n' forces it, which makes the left endpoint a free correctness check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import mpmath as mp
import numpy as np

from . import _mpkernels
from ._backend import kernels
from .cheb import ChebyshevSeries, clenshaw_eval, cosine_matrix, fit_values, nodes, truncation_error
from .errors import DomainError

DEFAULT_N = 57
SEED_SWITCH = 1e-4
_EPS64 = float(np.finfo(np.float64).eps)
_SQRT3 = math.sqrt(3.0)

# Taylor coefficients in t = y + 1 of the two seeds about y = -1
_Q2_SERIES = (1.0, -5.0 / 12.0, 43.0 / 160.0, -177.0 / 896.0, 2867.0 / 18432.0)
_Q3_SERIES = (1.0, -7.0 / 12.0, 13.0 / 36.0, -205.0 / 864.0, 1069.0 / 6480.0)


def _poly(coeffs, t):
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def arcsec(x):
    return math.acos(1.0 / x)


def g_source(n: int, y: float) -> float:
    """G_n(y); equals n - 1 at y = -1."""
    if n < 4:
        raise DomainError(f"G_n is only used for n >= 4, got n={n}")
    x = y + n
    return (n - 1.0) ** 2 * math.sqrt(n * (n - 2.0)) / (x * math.sqrt(x * x - 1.0))


def seed_q2(y: float) -> float:
    """Q_2(y) = arcsec(y + 2) / sqrt(2 + 2y), with Q_2(-1) = 1."""
    if not -1.0 <= y <= 1.0:
        raise DomainError(f"y={y!r} is outside [-1, 1]")
    t = y + 1.0
    if t < SEED_SWITCH:
        return _poly(_Q2_SERIES, t)
    # arccos(1/(1+t)) = 2 asin(sqrt(t / (2(1+t)))), no cancellation as t -> 0
    return 2.0 * math.asin(math.sqrt(t / (2.0 * (1.0 + t)))) / math.sqrt(2.0 * t)


def seed_q3(y: float) -> float:
    """Q_3(y) = 2 sqrt(3) (arcsec(y + 3) - pi/3) / (y + 1), with Q_3(-1) = 1."""
    if not -1.0 <= y <= 1.0:
        raise DomainError(f"y={y!r} is outside [-1, 1]")
    t = y + 1.0
    if t < SEED_SWITCH:
        return _poly(_Q3_SERIES, t)
    # arcsec(2 + t) - pi/3 as one angle: atan2 of its sine and cosine, with
    # the sine's difference of square roots rationalized
    x = 2.0 + t
    root = math.sqrt(x * x - 1.0)
    sin_d = t * (4.0 + t) / (2.0 * x * (root + _SQRT3))
    cos_d = (0.5 + 0.5 * _SQRT3 * root) / x
    return 2.0 * _SQRT3 * math.atan2(sin_d, cos_d) / t


def _mp_seed(p, y):
    # extra digits absorb the cancellation near y = -1
    with mp.extradps(20):
        t = y + 1
        if t == 0:
            return mp.mpf(1)
        if p == 4:
            return mp.asec(y + 2) / mp.sqrt(2 * t)
        return 2 * mp.sqrt(3) * (mp.asec(y + 3) - mp.pi / 3) / t


@dataclass(frozen=True)
class RecurrenceConfig:
    """Target index and series order for one pipeline run.

    ``dps`` switches every step to mpmath at that many decimal digits; the
    default None uses binary64.
    """

    target_n: int
    N: int = DEFAULT_N
    dps: int | None = None

    def __post_init__(self):
        if self.N < 8:
            raise ValueError(f"N must be at least 8, got {self.N}")
        if self.target_n < 4:
            raise DomainError(
                f"the recurrence starts at n=4; n={self.target_n} has a closed form")
        if self.dps is not None and self.dps < 15:
            raise ValueError("dps below 15 is coarser than binary64")


@dataclass(frozen=True)
class QnSolution:
    """Series of Q_n on [-1, 1] with its error estimate.

    ``err_estimate`` is the sum of three parts kept alongside it:
    ``seed_err`` (tail of the Q_2 / Q_3 seed series, which every later step
    inherits), ``truncation_err`` (tail of this series) and ``rounding_err``
    (working epsilon times sum |a_i| times the number of steps taken).
    """

    n: int
    series: ChebyshevSeries = field(repr=False)
    err_estimate: float
    dps: int | None = None
    seed_err: float = 0.0
    truncation_err: float = 0.0
    rounding_err: float = 0.0

    @property
    def N(self) -> int:
        return self.series.N

    @property
    def coeffs(self) -> np.ndarray:
        return self.series.coeffs

    def __call__(self, x):
        return eval_qn(self, x)


def solve_step(n: int, d: ChebyshevSeries) -> ChebyshevSeries:
    """Coefficients of Q_n from those of the right-hand side G_n Q_{n-2}.

    a_N = d_N / (2N + n - 3)
    a_{N-1} = (d_{N-1} - 4(N-1) a_N) / (2N + n - 5)
    a_k = (d_k - d_{k+2} + (n - 2k - 3) a_{k+2} - 4k a_{k+1}) / (2k + n - 3)
    """
    if n < 4:
        raise DomainError(f"n must be at least 4, got {n}")
    if d.is_multiprecision:
        return ChebyshevSeries(np.array(_mpkernels.solve_step(n, list(d.coeffs)), dtype=object))
    return ChebyshevSeries(kernels.solve_step(n, d.coeffs))


def _seed_rhs(p: int, N: int) -> np.ndarray:
    ys = nodes(N)
    seed = seed_q2 if p == 4 else seed_q3
    return np.array([g_source(p, float(y)) * seed(float(y)) for y in ys])


def _iter_float(N: int, target_n: int) -> Iterator[QnSolution]:
    p = 4 if target_n % 2 == 0 else 5
    a = kernels.solve_step(p, fit_values(_seed_rhs(p, N)).coeffs)
    seed_err = truncation_error(ChebyshevSeries(a))
    yield _solution(p, ChebyshevSeries(a), seed_err, 1, _EPS64)
    tmat = cosine_matrix(N)
    ys = nodes(N)
    steps = 1
    while p < target_n:
        p += 2
        steps += 1
        a = kernels.advance(a, p, tmat, ys)
        yield _solution(p, ChebyshevSeries(a), seed_err, steps, _EPS64)


def _iter_mp(N: int, target_n: int, dps: int) -> Iterator[QnSolution]:
    p = 4 if target_n % 2 == 0 else 5
    eps = 10.0 ** (1 - dps)
    with mp.workdps(dps):
        ys = _mpkernels.nodes(N)
        tmat = _mpkernels.cosine_matrix(N)
        rhs = [g * _mp_seed(p, y) for g, y in zip(_mpkernels.g_values(p, ys), ys)]
        a = _mpkernels.solve_step(p, _mpkernels.fit_values(rhs, tmat))
    series = ChebyshevSeries(np.array(a, dtype=object))
    seed_err = truncation_error(series)
    yield _solution(p, series, seed_err, 1, eps, dps)
    steps = 1
    while p < target_n:
        p += 2
        steps += 1
        with mp.workdps(dps):
            a = _mpkernels.advance(a, p, tmat, ys)
        yield _solution(p, ChebyshevSeries(np.array(a, dtype=object)), seed_err, steps, eps, dps)


def _solution(p, series, seed_err, steps, eps, dps=None) -> QnSolution:
    trunc = truncation_error(series)
    scale = math.fsum(abs(float(v)) for v in series.coeffs)
    rounding = eps * scale * steps
    return QnSolution(n=p, series=series, err_estimate=seed_err + trunc + rounding, dps=dps,
                      seed_err=seed_err, truncation_err=trunc, rounding_err=rounding)


def iter_chain(cfg: RecurrenceConfig) -> Iterator[QnSolution]:
    """Yield the solution for every n of the target's parity, from 4 or 5 up.

    The values are exactly those :func:`run_pipeline` produces for each
    intermediate target, since both walk the same steps.
    """
    if cfg.dps is None:
        return _iter_float(cfg.N, cfg.target_n)
    return _iter_mp(cfg.N, cfg.target_n, cfg.dps)


def run_pipeline(cfg: RecurrenceConfig) -> QnSolution:
    sol = None
    for sol in iter_chain(cfg):
        pass
    return sol


@lru_cache(maxsize=256)
def solve(n: int, N: int = DEFAULT_N, dps: int | None = None) -> QnSolution:
    """Cached :func:`run_pipeline` keyed on (n, N, dps)."""
    return run_pipeline(RecurrenceConfig(target_n=n, N=N, dps=dps))


def solve_many(ns, N: int = DEFAULT_N, dps: int | None = None) -> dict[int, QnSolution]:
    """Solutions for several n, walking each parity chain once."""
    wanted = sorted(set(int(n) for n in ns))
    for n in wanted:
        if n < 4:
            raise DomainError(f"the recurrence starts at n=4, got n={n}")
    out = {}
    for parity in (0, 1):
        targets = [n for n in wanted if n % 2 == parity]
        if not targets:
            continue
        todo = set(targets)
        for sol in iter_chain(RecurrenceConfig(target_n=targets[-1], N=N, dps=dps)):
            if sol.n in todo:
                out[sol.n] = sol
    return out


def eval_qn(sol: QnSolution, x):
    """q_n(x) for x in [n-1, n+1]; arrays are accepted."""
    n = sol.n
    if isinstance(x, np.ndarray):
        if x.size and (np.min(x) < n - 1 or np.max(x) > n + 1 or np.any(np.isnan(x))):
            raise DomainError(f"x outside [{n - 1}, {n + 1}]")
        return clenshaw_eval(sol.series, x - n)
    if not n - 1 <= x <= n + 1:
        raise DomainError(f"x={x!r} is outside [{n - 1}, {n + 1}]")
    if sol.dps is not None:
        with mp.workdps(sol.dps):
            return clenshaw_eval(sol.series, mp.mpf(x) - n)
    return clenshaw_eval(sol.series, float(x) - n)
