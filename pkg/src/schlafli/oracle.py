"""Reference values of f_n for small n by direct nested integration.

    f_n(x) = (1/pi) int_{n-1}^x f_{n-2}(z - 2) / (z sqrt(z^2 - 1)) dz

n = 4, 5 need one integral over the closed forms f_2, f_3; n = 6, 7 nest a
second one. Nothing here touches the Chebyshev pipeline, so these values
serve as an independent check of it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad

from .errors import DomainError, QuadratureError
from .evaluate import f_closed, ln_prefactor

SUPPORTED = (4, 5, 6, 7)
TARGET_TOL = {1: 1e-10, 2: 1e-8}
_REQUEST = dict(epsabs=1e-14, epsrel=1e-13, limit=200)


@dataclass(frozen=True)
class OracleResult:
    n: int
    x: float
    value: float
    quad_err: float


def _weight(z):
    return 1.0 / (z * math.sqrt(z * z - 1.0))


def _depth1(n: int, x: float) -> tuple[float, float]:
    if x == n - 1:
        return 0.0, 0.0
    val, err = quad(lambda z: f_closed(n - 2, z - 2.0) * _weight(z), n - 1, x, **_REQUEST)
    return val / math.pi, err / math.pi


def _depth2(n: int, x: float) -> tuple[float, float]:
    if x == n - 1:
        return 0.0, 0.0
    worst_inner = [0.0]

    def integrand(z):
        v, e = _depth1(n - 2, z - 2.0)
        worst_inner[0] = max(worst_inner[0], e)
        return v * _weight(z)

    val, err = quad(integrand, n - 1, x, **_REQUEST)
    # inner errors pass through an integral of the positive weight
    weight_mass = (math.atan(math.sqrt(x * x - 1.0)) - math.atan(math.sqrt((n - 1.0) ** 2 - 1.0)))
    return val / math.pi, (err + worst_inner[0] * weight_mass) / math.pi


def oracle_f(n: int, x: float) -> OracleResult:
    """f_n(x) for n in 4..7 and x in [n-1, n+1] by adaptive quadrature."""
    if n not in SUPPORTED:
        raise DomainError(f"the quadrature oracle covers n in {SUPPORTED}, got {n}")
    x = float(x)
    if not n - 1 <= x <= n + 1:
        raise DomainError(f"x={x!r} is outside [{n - 1}, {n + 1}]")
    depth = 1 if n <= 5 else 2
    value, err = (_depth1 if depth == 1 else _depth2)(n, x)
    if err > TARGET_TOL[depth]:
        raise QuadratureError(
            f"quadrature error {err:.3g} exceeds {TARGET_TOL[depth]:.0e} for f_{n}({x})", value, err)
    return OracleResult(n, x, value, err)


def oracle_qn(n: int, x: float) -> OracleResult:
    """q_n(x) = f_n(x) / (K_n (x - n + 1)^((n-1)/2)) from :func:`oracle_f`."""
    x = float(x)
    if x == n - 1:
        raise DomainError("q_n(n-1) = 1 by normalization; the quotient is 0/0 there")
    res = oracle_f(n, x)
    scale = math.exp(ln_prefactor(n)) * (x - n + 1) ** (0.5 * (n - 1))
    return OracleResult(n, x, res.value / scale, res.quad_err / scale)
