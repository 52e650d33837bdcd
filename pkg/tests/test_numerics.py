import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from wtchaos.errors import NumericRangeError
from wtchaos.numerics import (LogValue, ScaledProduct, capped_product, exact_root, log_fraction,
                              logsumexp, sqrt_bounds)


def test_log_fraction_huge():
    q = Fraction(3 ** 2000, 2 ** 3001)
    mpmath.mp.dps = 40
    ref = float(mpmath.log(mpmath.mpf(3) ** 2000 / mpmath.mpf(2) ** 3001))
    assert abs(log_fraction(q) - ref) < 1e-12 * abs(ref)
    with pytest.raises(ValueError):
        log_fraction(Fraction(0))


def test_logvalue_basics():
    z = LogValue.zero()
    assert z.value == 0.0 and z.to_json() == {'log_value': None, 'value': 0.0}
    assert LogValue(math.log(2) * 3).value == pytest.approx(8.0)
    assert LogValue(1e6).value == math.inf
    assert LogValue(-1e6).value == 0.0
    assert z < LogValue(-100) and not LogValue(-100) < z
    assert (LogValue(1.0) * z).zero_flag
    assert LogValue(2.0).rel_diff(LogValue(2.0)) == 0.0


def test_scaled_product_dyadic_exact():
    sp = ScaledProduct()
    for _ in range(5000):
        sp.mul(2.0)
    assert abs(sp.log / (5000 * math.log(2)) - 1) < 1e-15
    assert LogValue(sp.log).value == math.inf
    sp = ScaledProduct()
    for _ in range(3):
        sp.mul(2.0)
    assert sp.to_logvalue().value == 8.0


def test_logsumexp():
    assert logsumexp([]) == -math.inf
    assert logsumexp([0.0, 0.0]) == pytest.approx(math.log(2))
    assert logsumexp([1000.0, 1000.0]) == pytest.approx(1000 + math.log(2))


def test_capped_product():
    assert capped_product([Fraction(1, 2)] * 10) == Fraction(1, 1024)
    with pytest.raises(NumericRangeError):
        capped_product([Fraction(3)] * 100, bit_cap=64)


def test_exact_root():
    assert exact_root(Fraction(9, 4), 2) == Fraction(3, 2)
    assert exact_root(Fraction(2), 2) is None
    assert exact_root(Fraction(3 ** 300), 3) == 3 ** 100


@given(st.fractions(min_value=0, max_value=10 ** 6))
def test_sqrt_bounds_bracket(q):
    lo, hi = sqrt_bounds(q, 64)
    assert lo * lo <= q <= hi * hi
    if lo == hi:
        assert lo * lo == q


@given(st.integers(1, 10 ** 9), st.integers(1, 10 ** 9))
def test_sqrt_bounds_perfect_squares(a, b):
    lo, hi = sqrt_bounds(Fraction(a * a, b * b))
    assert lo == hi == Fraction(a, b)
