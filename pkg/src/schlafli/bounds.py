"""Sphere-packing, kissing-number and quantizer bounds built on f_n(n).

Rogers' density bound
    2^(-3n/2) sqrt(n+1) (n!)^2 f_n(n) V_n,   V_n = pi^(n/2) / Gamma(n/2 + 1)
Coxeter's kissing bound
    floor(2 f_{n-1}(n) / f_n(n))
Conway and Sloane's quantizer bound
    (n + 3 - 2 H_{n+2}) / (4n(n+1)) (n+1)^(1/n) (n!)^(4/n) f_n(n)^(2/n)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError
from .evaluate import SchlafliValue, f_n
from .logreal import LogScaledReal
from .recurrence import DEFAULT_N

# ratios closer than this many error estimates to an integer are flagged
AMBIGUITY_FACTOR = 10.0


def harmonic(m: int) -> float:
    """H_m summed left to right."""
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    s = 0.0
    for i in range(1, m + 1):
        s += 1.0 / i
    return s


def ln_unit_ball(n: int) -> float:
    """ln V_n, the volume of the unit n-ball."""
    return 0.5 * n * math.log(math.pi) - math.lgamma(0.5 * n + 1)


def rogers_bound(n: int, include_vn: bool = True, N: int = DEFAULT_N) -> LogScaledReal:
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    f = f_n(n, n, N).value
    ln_scale = -1.5 * n * math.log(2.0) + 0.5 * math.log(n + 1) + 2.0 * math.lgamma(n + 1)
    if include_vn:
        ln_scale += ln_unit_ball(n)
    return LogScaledReal.from_ln(ln_scale) * f


def coxeter_ratio(n: int, N: int = DEFAULT_N) -> tuple[float, float]:
    """2 f_{n-1}(n) / f_n(n) and an estimate of its absolute error."""
    if n < 3:
        raise DomainError(f"n must be at least 3, got {n}")
    num = f_n(n - 1, n, N)
    den = f_n(n, n, N)
    ratio = 2.0 * (num.value / den.value).to_float()
    return ratio, float(ratio * (num.rel_err_estimate + den.rel_err_estimate))


def coxeter_bound(n: int, N: int = DEFAULT_N) -> int:
    ratio, _ = coxeter_ratio(n, N)
    return math.floor(ratio)


def quantizer_bound(n: int, N: int = DEFAULT_N) -> float:
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    f = f_n(n, n, N).value
    lead = (n + 3 - 2.0 * harmonic(n + 2)) / (4.0 * n * (n + 1))
    ln_rest = (math.log(n + 1) + 4.0 * math.lgamma(n + 1) + 2.0 * f.ln_mag) / n
    return lead * math.exp(ln_rest)


@dataclass(frozen=True)
class BoundsReport:
    n: int
    rogers_density: LogScaledReal
    rogers_density_no_vn: LogScaledReal
    quantizer_msre: float
    coxeter_kissing: int | None = None
    coxeter_ratio: float | None = None
    coxeter_ratio_err: float | None = None
    coxeter_ambiguous: bool = False
    inputs: dict[str, SchlafliValue] = field(default_factory=dict)


def bounds_report(n: int, N: int = DEFAULT_N) -> BoundsReport:
    """All three bounds for one n (the kissing bound only from n = 3)."""
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    inputs = {"f_n(n)": f_n(n, n, N)}
    kissing = ratio = err = None
    ambiguous = False
    if n >= 3:
        inputs["f_n-1(n)"] = f_n(n - 1, n, N)
        ratio, err = coxeter_ratio(n, N)
        kissing = math.floor(ratio)
        ambiguous = bool(abs(ratio - round(ratio)) < AMBIGUITY_FACTOR * err)
    return BoundsReport(
        n=n,
        rogers_density=rogers_bound(n, True, N),
        rogers_density_no_vn=rogers_bound(n, False, N),
        quantizer_msre=quantizer_bound(n, N),
        coxeter_kissing=kissing,
        coxeter_ratio=ratio,
        coxeter_ratio_err=err,
        coxeter_ambiguous=ambiguous,
        inputs=inputs,
    )
