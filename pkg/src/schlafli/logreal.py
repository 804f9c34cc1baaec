"""Sign and log-magnitude arithmetic for values outside the float64 range.

Factorials in the Schlafli prefactors overflow double precision near n = 85,
and f_n(n) itself underflows long before n = 1000, so every such quantity is
carried as ``sign * 10**log10_mag``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

LN10 = math.log(10.0)


@dataclass(frozen=True)
class LogScaledReal:
    """A real number stored as a sign and the base-10 log of its magnitude.

    ``log10_mag`` is ``-inf`` when ``sign`` is 0.
    """

    sign: int
    log10_mag: float

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or 1, got {self.sign!r}")
        if self.sign == 0:
            object.__setattr__(self, "log10_mag", -math.inf)
        elif math.isnan(self.log10_mag) or self.log10_mag == math.inf:
            raise ValueError(f"invalid log magnitude {self.log10_mag!r}")
        elif self.log10_mag == -math.inf:
            object.__setattr__(self, "sign", 0)

    @classmethod
    def zero(cls) -> LogScaledReal:
        return cls(0, -math.inf)

    @classmethod
    def from_float(cls, value: float) -> LogScaledReal:
        if not math.isfinite(value):
            raise ValueError(f"cannot represent {value!r}")
        if value == 0.0:
            return cls.zero()
        return cls(1 if value > 0 else -1, math.log10(abs(value)))

    @classmethod
    def from_ln(cls, ln_mag: float, sign: int = 1) -> LogScaledReal:
        """Build from a natural-log magnitude."""
        if sign == 0:
            return cls.zero()
        return cls(sign, ln_mag / LN10)

    @property
    def ln_mag(self) -> float:
        return self.log10_mag * LN10

    def is_zero(self) -> bool:
        return self.sign == 0

    def to_float(self) -> float:
        """Materialize as a float; underflow gives 0.0, overflow raises."""
        if self.sign == 0:
            return 0.0
        if self.log10_mag > 308.25:
            raise OverflowError(f"10**{self.log10_mag} exceeds the float range")
        if self.log10_mag < -330.0:
            return 0.0 * self.sign
        # split so the mantissa keeps full precision near the range limits
        whole = math.floor(self.log10_mag)
        return self.sign * 10.0 ** (self.log10_mag - whole) * 10.0 ** whole

    __float__ = to_float

    def __mul__(self, other):
        if not isinstance(other, LogScaledReal):
            other = LogScaledReal.from_float(float(other))
        if self.sign == 0 or other.sign == 0:
            return LogScaledReal.zero()
        return LogScaledReal(self.sign * other.sign, self.log10_mag + other.log10_mag)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, LogScaledReal):
            other = LogScaledReal.from_float(float(other))
        if other.sign == 0:
            raise ZeroDivisionError("division by a zero LogScaledReal")
        if self.sign == 0:
            return LogScaledReal.zero()
        return LogScaledReal(self.sign * other.sign, self.log10_mag - other.log10_mag)

    def __pow__(self, exponent: float):
        if self.sign == 0:
            if exponent > 0:
                return LogScaledReal.zero()
            raise ZeroDivisionError("zero raised to a non-positive power")
        if self.sign < 0:
            if float(exponent).is_integer():
                sign = -1 if int(exponent) % 2 else 1
            else:
                raise ValueError("negative base with a fractional exponent")
        else:
            sign = 1
        return LogScaledReal(sign, self.log10_mag * exponent)

    def __neg__(self):
        return LogScaledReal(-self.sign, self.log10_mag)

    def __abs__(self):
        return LogScaledReal(abs(self.sign), self.log10_mag)

    def to_json(self) -> dict:
        return {"sign": self.sign, "log10": None if self.sign == 0 else self.log10_mag}

    def __str__(self):
        if self.sign == 0:
            return "0"
        whole = math.floor(self.log10_mag)
        mant = 10.0 ** (self.log10_mag - whole)
        return f"{'-' if self.sign < 0 else ''}{mant:.12f}e{whole:+d}"
