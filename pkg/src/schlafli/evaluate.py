"""The Schlafli function f_n(x) from the regular companion q_n.

For n > 1 and x in [n-1, n+1]

    f_n(x) = K_n (x - n + 1)^((n-1)/2) q_n(x),

    K_n = 2^n sqrt(n) (n/2)! / (pi^(n/2) (n!)^2)            (even n)
    K_n = sqrt(n) / (pi^((n-1)/2) n! ((n-1)/2)!)             (odd n)

K_n underflows double precision quickly, so f_n is assembled as a
:class:`LogScaledReal`. Indices n <= 3 have elementary closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .logreal import LogScaledReal
from .recurrence import DEFAULT_N, solve

_EPS = np.finfo(float).eps
# Gauss-Legendre panel rule for the integral continuation
_GL_X, _GL_W = np.polynomial.legendre.leggauss(24)


def arcsec(x):
    return np.arccos(1.0 / x)


def f_closed(n: int, x):
    """f_0 = f_1 = 1, f_2 = arcsec(x)/pi, f_3 = arcsec(x)/pi - 1/3.

    Accepts scalars or arrays; f_2 and f_3 need |x| >= 1.
    """
    if n not in (0, 1, 2, 3):
        raise DomainError(f"no closed form for n={n}")
    xa = np.asarray(x, dtype=float)
    if n in (0, 1):
        out = np.ones_like(xa)
    else:
        if np.any(np.abs(xa) < 1.0) or np.any(np.isnan(xa)):
            raise DomainError(f"f_{n}(x) needs |x| >= 1, got x={x!r}")
        out = arcsec(xa) / math.pi
        if n == 3:
            out = out - 1.0 / 3.0
    return float(out) if out.ndim == 0 else out


def ln_prefactor(n: int) -> float:
    """Natural log of K_n."""
    if n < 2:
        raise DomainError(f"the prefactor is defined for n >= 2, got n={n}")
    ln_pi = math.log(math.pi)
    if n % 2 == 0:
        return (n * math.log(2.0) + 0.5 * math.log(n) + math.lgamma(n / 2 + 1)
                - 0.5 * n * ln_pi - 2.0 * math.lgamma(n + 1))
    return (0.5 * math.log(n) - 0.5 * (n - 1) * ln_pi - math.lgamma(n + 1)
            - math.lgamma((n - 1) / 2 + 1))


def log_prefactor(n: int) -> LogScaledReal:
    return LogScaledReal.from_ln(ln_prefactor(n))


@dataclass(frozen=True)
class SchlafliValue:
    n: int
    x: float
    value: LogScaledReal
    abs_err_estimate: float
    rel_err_estimate: float = 0.0

    def __float__(self):
        return self.value.to_float()


def f_n(n: int, x: float, N: int = DEFAULT_N, dps: int | None = None) -> SchlafliValue:
    """f_n(x) on [n-1, n+1] (any |x| >= 1 for the closed forms n <= 3)."""
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    x = float(x)
    if n <= 3:
        v = f_closed(n, x)
        return SchlafliValue(n, x, LogScaledReal.from_float(v), 4 * _EPS * abs(v), 4 * _EPS)
    if not n - 1 <= x <= n + 1:
        raise DomainError(f"f_{n}(x) is computed on [{n - 1}, {n + 1}], got x={x!r}")
    if x == n - 1:
        return SchlafliValue(n, x, LogScaledReal.zero(), 0.0, 0.0)
    sol = solve(n, N, dps)
    q = float(sol(x))
    if q <= 0.0:
        raise ArithmeticError(f"q_{n}({x}) = {q} is not positive; increase N")
    ln_f = ln_prefactor(n) + 0.5 * (n - 1) * math.log(x - n + 1) + math.log(q)
    value = LogScaledReal.from_ln(ln_f)
    rel = sol.err_estimate / q
    abs_err = (value * rel).to_float() if rel > 0 else 0.0
    return SchlafliValue(n, x, value, abs_err, rel)


def f_float(n: int, x, N: int = DEFAULT_N):
    """f_n as plain floats, vectorized; meant for n small enough not to underflow."""
    xa = np.asarray(x, dtype=float)
    if n <= 3:
        return f_closed(n, xa if xa.ndim else float(xa))
    if xa.size and (np.min(xa) < n - 1 or np.max(xa) > n + 1):
        raise DomainError(f"f_{n}(x) is computed on [{n - 1}, {n + 1}]")
    q = solve(n, N)(xa if xa.ndim else float(xa))
    out = math.exp(ln_prefactor(n)) * np.power(xa - n + 1, 0.5 * (n - 1)) * q
    return float(out) if np.ndim(out) == 0 else out


def f_by_integration(m: int, x, N: int = DEFAULT_N):
    """f_m(x) for any x >= m-1, continuing past m+1 by the integral form.

    f_m(x) = f_m(m+1) + (1/pi) int_{m+1}^x f_{m-2}(z-2) / (z sqrt(z^2-1)) dz

    The integrand is analytic on the path (its singularities sit at or below
    z = m-1), so fixed Gauss-Legendre panels reach rounding level. Used to
    evaluate identity terms whose index places x beyond the pipeline
    interval.
    """
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if m <= 3:
        out = np.asarray(f_closed(m, xa), dtype=float)
    else:
        if np.any(xa < m - 1):
            raise DomainError(f"f_{m}(x) by integration needs x >= {m - 1}")
        out = np.empty_like(xa)
        inside = xa <= m + 1
        if np.any(inside):
            out[inside] = f_float(m, xa[inside], N)
        beyond = ~inside
        if np.any(beyond):
            xb = xa[beyond]
            lo = float(m + 1)
            panels = max(1, int(math.ceil(np.max(xb) - lo)))
            # panel edges per point: lo + (x - lo) * j / panels
            frac = np.arange(panels + 1) / panels
            edges = lo + (xb[:, None] - lo) * frac[None, :]
            left, right = edges[:, :-1], edges[:, 1:]
            half = 0.5 * (right - left)
            z = (0.5 * (left + right))[..., None] + half[..., None] * _GL_X
            inner = f_by_integration(m - 2, (z - 2.0).ravel(), N).reshape(z.shape)
            integrand = inner / (z * np.sqrt(z * z - 1.0))
            total = np.sum(half * np.sum(integrand * _GL_W, axis=-1), axis=-1)
            out[beyond] = f_float(m, lo, N) + total / math.pi
    return float(out[0]) if np.ndim(x) == 0 else out


@lru_cache(maxsize=None)
def tanh_coefficients(count: int = 25) -> tuple[Fraction, ...]:
    """|coefficients| of x, x^3, x^5, ... in tanh x, from the tangent numbers."""
    t = [0] * (count + 1)
    t[1] = 1
    for k in range(2, count + 1):
        t[k] = (k - 1) * t[k - 1]
    for k in range(2, count + 1):
        for j in range(k, count + 1):
            t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j]
    return tuple(Fraction(t[k], math.factorial(2 * k - 1)) for k in range(1, count + 1))


def _term(m: int, x: float, N: int, strict: bool) -> float:
    if m <= 3:
        return f_closed(m, x)
    if m - 1 <= x <= m + 1:
        return f_float(m, x, N)
    if strict:
        raise DomainError(f"term f_{m}({x}) lies outside its interval [{m - 1}, {m + 1}]")
    return f_by_integration(m, x, N)


def identity_check_odd(n: int, x: float, N: int = DEFAULT_N, strict: bool = True) -> tuple[float, float]:
    """Both sides of f_n = f_{n-1} - f_{n-3}/3 + 2 f_{n-5}/15 - ... for odd n.

    The sum runs down to f_0 = 1 with tanh-series weights. With ``strict``
    every pipeline term must have x inside its own interval; otherwise terms
    beyond it are continued by :func:`f_by_integration`.
    """
    if n < 5 or n % 2 == 0:
        raise DomainError(f"n must be odd and at least 5, got {n}")
    if not n - 1 <= x <= n + 1:
        raise DomainError(f"x={x!r} is outside [{n - 1}, {n + 1}]")
    coeffs = tanh_coefficients()
    rhs = []
    for k, m in enumerate(range(n - 1, -1, -2)):
        sign = 1.0 if k % 2 == 0 else -1.0
        rhs.append(sign * float(coeffs[k]) * _term(m, x, N, strict))
    return f_float(n, x, N), math.fsum(rhs)


def even_endpoint_identity(n: int, N: int = DEFAULT_N) -> tuple[float, float]:
    """Both sides of f_n(n) = f_{n-2}(n)/3 - 2 f_{n-4}(n)/15 + ... for even n.

    Every pipeline term f_m(n) with m >= 4 sits outside [m-1, m+1], so only
    n = 4 (closed-form terms) is evaluable; other n raise DomainError naming
    the first offending term.
    """
    if n < 4 or n % 2:
        raise DomainError(f"n must be even and at least 4, got {n}")
    coeffs = tanh_coefficients()
    rhs = []
    for k, m in enumerate(range(n - 2, -1, -2)):
        sign = 1.0 if k % 2 == 0 else -1.0
        rhs.append(sign * float(coeffs[k + 1]) * _term(m, float(n), N, True))
    return f_float(n, float(n), N), math.fsum(rhs)


def ln_sphere_surface(n: int) -> float:
    """ln S_n, S_n = 2 pi^(n/2) / Gamma(n/2), the content of the unit (n-1)-sphere."""
    return math.log(2.0) + 0.5 * n * math.log(math.pi) - math.lgamma(n / 2)


def simplex_content(n: int, x: float, N: int = DEFAULT_N) -> LogScaledReal:
    """Content 2^-n n! S_n f_n(x) of the regular spherical simplex."""
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    f = f_n(n, x, N).value
    scale = LogScaledReal.from_ln(-n * math.log(2.0) + math.lgamma(n + 1) + ln_sphere_surface(n))
    return scale * f
