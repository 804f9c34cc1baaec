"""Large-n expansions used to validate the pipeline.

Both take b with 1/b = x - n + 1 > 0 and work entirely in log space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .logreal import LogScaledReal


@dataclass(frozen=True)
class AsymptoticEstimate:
    n: int
    x: float
    leading: LogScaledReal
    with_correction: LogScaledReal
    b: float

    @property
    def correction_factor(self) -> float:
        return 10.0 ** (self.with_correction.log10_mag - self.leading.log10_mag)


def _b(n, x):
    inv_b = x - n + 1
    if not inv_b > 0:
        raise DomainError(f"the expansion needs x - n + 1 > 0, got x={x!r}, n={n}")
    return 1.0 / inv_b


def rogers_correction(n: int, b: float) -> float:
    """First-order bracket term (1/12 + 1/b + 3/(2 b^2)) / n."""
    return (1.0 / 12.0 + 1.0 / b + 1.5 / (b * b)) / n


def rogers_asymptotic(n: int, x: float) -> AsymptoticEstimate:
    """Rogers' expansion of f_n(x) for large n.

    f_n(x) ~ sqrt(1 + n b) / (sqrt(2) n! e^(1/b)) (2e / (pi n b))^(n/2)
             [1 + (1/12 + 1/b + 3/(2b^2))/n]
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    b = _b(n, x)
    ln_lead = (0.5 * math.log1p(n * b) - 0.5 * math.log(2.0) - math.lgamma(n + 1) - 1.0 / b
               + 0.5 * n * (math.log(2.0) + 1.0 - math.log(math.pi) - math.log(n) - math.log(b)))
    ln_corr = ln_lead + math.log1p(rogers_correction(n, b))
    return AsymptoticEstimate(n, float(x), LogScaledReal.from_ln(ln_lead),
                              LogScaledReal.from_ln(ln_corr), b)


def marshall_volume(n: int, x: float) -> LogScaledReal:
    """Marshall's expansion of the simplex content for large n.

    V_n(x) ~ sqrt(n) b^(-(n-1)/2) / ((n-1)! e^(1/b)) [1 + (3/2)(1/b + 1/b^2)/(n-1)]
    """
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    b = _b(n, x)
    ln_v = (0.5 * math.log(n) - 0.5 * (n - 1) * math.log(b) - math.lgamma(n) - 1.0 / b
            + math.log1p(1.5 * (1.0 / b + 1.0 / (b * b)) / (n - 1)))
    return LogScaledReal.from_ln(ln_v)
