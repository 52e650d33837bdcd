"""Overflow-safe scalar machinery.

``LogValue`` stores a nonnegative magnitude by its natural log.  Long
weight products are accumulated as a float mantissa times a power of two
(:class:`ScaledProduct`), which is exact for dyadic weights and loses at
most one rounding per factor otherwise; the log is formed once at the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Tuple

from .errors import NumericRangeError

__all__ = ['LogValue', 'ScaledProduct', 'log_fraction', 'logsumexp',
           'sqrt_bounds', 'capped_product', 'exact_root', 'DEFAULT_BIT_CAP']

# ln 2 split so that k * LN2_HI is exact for |k| < 2**20
LN2_HI = 6.93147180369123816490e-01
LN2_LO = 1.90821492927058770002e-10

DEFAULT_BIT_CAP = 4096


def _ln2_times(k: int) -> float:
    return k * LN2_HI + k * LN2_LO


def log_fraction(q: Fraction) -> float:
    """Natural log of a positive rational without float overflow."""
    if q <= 0:
        raise ValueError('log of a nonpositive number')
    n, d = q.numerator, q.denominator
    en, ed = n.bit_length(), d.bit_length()
    if en < 1000 and ed < 1000:
        return math.log(n) - math.log(d) if (en > 52 or ed > 52) else math.log(n / d)
    # shift both to 53-bit mantissas
    sn, sd = max(en - 60, 0), max(ed - 60, 0)
    return math.log((n >> sn) / (d >> sd)) + _ln2_times(sn - sd)


@dataclass(frozen=True)
class LogValue:
    """Nonnegative magnitude stored as its natural log."""

    log_magnitude: float
    zero_flag: bool = False

    @classmethod
    def zero(cls) -> 'LogValue':
        return cls(-math.inf, True)

    @classmethod
    def from_value(cls, v) -> 'LogValue':
        if isinstance(v, Fraction):
            return cls.zero() if v == 0 else cls(log_fraction(abs(v)))
        v = abs(v)
        return cls.zero() if v == 0 else cls(math.log(v))

    @property
    def value(self) -> float:
        """Float value, saturating to ``inf`` or ``0.0``."""
        if self.zero_flag:
            return 0.0
        lg = self.log_magnitude
        if not math.isfinite(lg):
            return math.inf if lg > 0 else 0.0
        # split off the power of two so dyadic magnitudes come back exact
        k = round(lg / math.log(2))
        try:
            return math.ldexp(math.exp(lg - _ln2_times(k)), k)
        except OverflowError:
            return math.inf

    def __float__(self):
        return self.value

    def __mul__(self, other: 'LogValue') -> 'LogValue':
        if self.zero_flag or other.zero_flag:
            return LogValue.zero()
        return LogValue(self.log_magnitude + other.log_magnitude)

    def __truediv__(self, other: 'LogValue') -> 'LogValue':
        if other.zero_flag:
            raise ZeroDivisionError('division by a zero LogValue')
        if self.zero_flag:
            return self
        return LogValue(self.log_magnitude - other.log_magnitude)

    def __lt__(self, other: 'LogValue') -> bool:
        if self.zero_flag:
            return not other.zero_flag
        if other.zero_flag:
            return False
        return self.log_magnitude < other.log_magnitude

    def __le__(self, other: 'LogValue') -> bool:
        return not other < self

    def rel_diff(self, other: 'LogValue') -> float:
        """``|self/other - 1|`` computed in the log domain."""
        if self.zero_flag or other.zero_flag:
            return 0.0 if self.zero_flag == other.zero_flag else math.inf
        return abs(math.expm1(self.log_magnitude - other.log_magnitude))

    def to_json(self):
        return {'log_value': None if self.zero_flag else self.log_magnitude,
                'value': self.value}


class ScaledProduct:
    """Running product ``mantissa * 2**exponent`` with mantissa in [0.5, 1)."""

    __slots__ = ('mantissa', 'exponent')

    def __init__(self, value: float = 1.0):
        m, e = math.frexp(value)
        self.mantissa, self.exponent = m, e

    def copy(self) -> 'ScaledProduct':
        sp = ScaledProduct.__new__(ScaledProduct)
        sp.mantissa, sp.exponent = self.mantissa, self.exponent
        return sp

    def mul(self, v: float) -> 'ScaledProduct':
        m, e = math.frexp(self.mantissa * v)
        self.mantissa = m
        self.exponent += e
        return self

    def mul_fraction(self, q: Fraction) -> 'ScaledProduct':
        n, d = q.numerator, q.denominator
        if n.bit_length() < 1000 and d.bit_length() < 1000:
            return self.mul(n / d)
        return self.mul_log(log_fraction(q))

    def mul_log(self, lg: float) -> 'ScaledProduct':
        k = math.floor(lg / math.log(2))
        return self.mul(math.exp(lg - _ln2_times(k))).shift(k)

    def shift(self, k: int) -> 'ScaledProduct':
        self.exponent += k
        return self

    @property
    def log(self) -> float:
        if self.mantissa == 0:
            return -math.inf
        # log(2m) is exactly 0 for pure powers of two
        return math.log(2 * self.mantissa) + _ln2_times(self.exponent - 1)

    def log_ratio(self, other: 'ScaledProduct') -> float:
        """``log(self / other)`` with the power-of-two part subtracted exactly."""
        return (math.log(self.mantissa / other.mantissa)
                + _ln2_times(self.exponent - other.exponent))

    def to_logvalue(self) -> LogValue:
        if self.mantissa == 0:
            return LogValue.zero()
        return LogValue(self.log)


def logsumexp(xs: Iterable[float]) -> float:
    xs = [x for x in xs if x != -math.inf]
    if not xs:
        return -math.inf
    m = max(xs)
    return m + math.log(math.fsum(math.exp(x - m) for x in xs))


def capped_product(factors: Iterable[Fraction], bit_cap: Optional[int] = DEFAULT_BIT_CAP) -> Fraction:
    """Exact product, raising :class:`NumericRangeError` past ``bit_cap`` bits."""
    out = Fraction(1)
    for f in factors:
        out *= f
        if bit_cap is not None and (out.numerator.bit_length() > bit_cap
                                    or out.denominator.bit_length() > bit_cap):
            raise NumericRangeError(
                f'exact product exceeds {bit_cap}-bit cap; retry in log mode')
    return out


def sqrt_bounds(q: Fraction, bits: int = 128) -> Tuple[Fraction, Fraction]:
    """Rational ``lo <= sqrt(q) <= hi`` with ``hi - lo`` about ``sqrt(q) 2**-bits``.

    ``lo == hi`` exactly when ``q`` is a perfect rational square.
    """
    if q < 0:
        raise ValueError('sqrt of a negative number')
    if q == 0:
        return Fraction(0), Fraction(0)
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        r = Fraction(rn, rd)
        return r, r
    # sqrt(n/d) = sqrt(n d) / d; scale by 4**k to gain ``bits`` bits
    nd = n * d
    k = max(0, bits - nd.bit_length() // 2 + 2)
    s = math.isqrt(nd << (2 * k))
    lo = Fraction(s, d << k)
    hi = Fraction(s + 1, d << k)
    return lo, hi


def _iroot(n: int, k: int) -> Optional[int]:
    """Exact integer k-th root of n, or None."""
    if n < 2:
        return n
    # integer Newton iteration started above the root decreases to the floor root
    x = 1 << (n.bit_length() // k + 1)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x if x ** k == n else None


def exact_root(q: Fraction, k: int) -> Optional[Fraction]:
    """``q ** (1/k)`` when it is rational, else None."""
    if q < 0 or k < 1:
        raise ValueError('exact_root needs q >= 0 and k >= 1')
    rn, rd = _iroot(q.numerator, k), _iroot(q.denominator, k)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)
