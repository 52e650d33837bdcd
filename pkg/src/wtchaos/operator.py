"""Weighted translations ``T_{a,w} f = w * (f * delta_a)`` on Z and Z x Z_m.

Conventions (checked against the single-step definition in the tests):

* ``(T f)(x) = w(x) f(x a^{-1})``: the mass sitting at ``y`` moves to
  ``y a`` and is multiplied by ``w(y a)``.
* ``phi_n(x) = prod_{j=1..n} w(x a^j)`` and ``T^n = T_{a^n} M_{phi_n}``, so
  ``(T^n f)(x a^n) = phi_n(x) f(x)``.  For the bilateral shift
  (``a = -1`` on Z) the window of ``phi_n(x)`` is ``{x-n, ..., x-1}``.
* ``||T^n f||_p^p = sum_x phi_n(x)^p |f(x)|^p``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Union

from .errors import DomainError, GroupMismatchError, NumericRangeError, PreconditionError
from .group import GroupElement, GroupSpec, compose, inverse, power
from .numerics import (DEFAULT_BIT_CAP, LogValue, ScaledProduct, capped_product)
from .vector import SparseVector, is_exact_scalar
from .weights import WeightSpec, as_fraction, invertibility_check, inverse_weight

__all__ = ['WeightedTranslation', 'bilateral_shift', 'multiply']

RATIONAL, LOG = 'rational', 'log'


def _scale(v, sp: ScaledProduct):
    """``v * mantissa * 2**exponent`` for a float or complex ``v``."""
    if isinstance(v, complex):
        return complex(math.ldexp(v.real * sp.mantissa, sp.exponent),
                       math.ldexp(v.imag * sp.mantissa, sp.exponent))
    try:
        return math.ldexp(float(v) * sp.mantissa, sp.exponent)
    except OverflowError:
        return math.copysign(math.inf, float(v))


@dataclass(frozen=True)
class WeightedTranslation:
    """The operator ``T_{a,w}`` on ``l^p(G)``."""

    group: GroupSpec
    a: GroupElement
    w: WeightSpec
    p: float = 2
    bit_cap: Optional[int] = field(default=DEFAULT_BIT_CAP, compare=False)

    def __post_init__(self):
        if not self.group.contains(self.a):
            raise GroupMismatchError(f'a={self.a!r} is not in {self.group}')
        if self.a.is_identity():
            raise DomainError('a must not be the identity')
        if not self.p >= 1:
            raise DomainError(f'p must be >= 1, got {self.p}')

    # cocycle -------------------------------------------------------------
    def _check(self, x: GroupElement) -> GroupElement:
        if not isinstance(x, GroupElement):
            x = self.group.element(int(x))
        if not self.group.contains(x):
            raise GroupMismatchError(f'{x!r} is not in {self.group}')
        return x

    def window(self, n: int, x) -> List[GroupElement]:
        """Positions ``x a, x a^2, ..., x a^n`` whose weights make up ``phi_n(x)``."""
        x = self._check(x)
        out, g = [], x
        for _ in range(n):
            g = compose(g, self.a)
            out.append(g)
        return out

    def phi_exact(self, n: int, x) -> Fraction:
        if n < 1:
            raise DomainError('phi_n needs n >= 1')
        return capped_product((self.w.eval(g) for g in self.window(n, x)), self.bit_cap)

    def phi_scaled(self, n: int, x) -> ScaledProduct:
        if n < 0:
            raise DomainError('phi_n needs n >= 0')
        sp = ScaledProduct()
        for g in self.window(n, x):
            sp.mul(self.w.eval_float(g))
        return sp

    def phi_log(self, n: int, x) -> LogValue:
        if n < 1:
            raise DomainError('phi_n needs n >= 1')
        return self.phi_scaled(n, x).to_logvalue()

    def phi(self, n: int, x, mode: str = RATIONAL) -> Union[Fraction, LogValue]:
        """``phi_n(x)``: exact Fraction in rational mode, LogValue in log mode."""
        if mode == RATIONAL:
            return self.phi_exact(n, x)
        if mode == LOG:
            return self.phi_log(n, x)
        raise DomainError(f'unknown mode {mode!r}')

    def phi_inverse_symbol(self, n: int, x) -> Fraction:
        """``1 / prod_{j=0..n-1} w(x a^{-j})``, the cocycle of the inverse operator."""
        x = self._check(x)
        ainv = inverse(self.a)
        factors, g = [], x
        for _ in range(n):
            factors.append(1 / self.w.eval(g))
            g = compose(g, ainv)
        return capped_product(factors, self.bit_cap)

    # action --------------------------------------------------------------
    def _check_vector(self, f: SparseVector):
        for g in f:
            if not self.group.contains(g):
                raise GroupMismatchError(f'vector entry at {g!r} is not in {self.group}')

    def apply(self, f: SparseVector) -> SparseVector:
        """One application of T."""
        return self.apply_power(f, 1)

    def apply_power(self, f: SparseVector, n: int, mode: str = RATIONAL) -> SparseVector:
        """``T^n f``; exact when ``f`` has exact entries and mode is rational."""
        if n < 0:
            raise DomainError('apply_power needs n >= 0')
        self._check_vector(f)
        if n == 0:
            return f
        an = power(self.a, n)
        out = {}
        if mode == RATIONAL and f.exact:
            for x, v in f.items():
                out[compose(x, an)] = self.phi_exact(n, x) * v
        else:
            for x, v in f.items():
                out[compose(x, an)] = _scale(v, self.phi_scaled(n, x))
        return SparseVector(out)

    def translate(self, f: SparseVector, m: int) -> SparseVector:
        """Unweighted ``T_{a^m} f``."""
        return f.translate(power(self.a, m))

    @property
    def invertible(self) -> bool:
        return invertibility_check(self.w)[0]

    def inverse_operator(self) -> 'WeightedTranslation':
        """``S_{a,w} = T_{a^{-1}, x -> 1/w(x a)}``."""
        if not self.invertible:
            raise PreconditionError('weight is not invertible')
        return WeightedTranslation(self.group, inverse(self.a),
                                   inverse_weight(self.w, self.a), self.p, self.bit_cap)

    def apply_inverse(self, f: SparseVector) -> SparseVector:
        if not self.invertible:
            raise PreconditionError('weight is not invertible')
        if f.is_zero():
            raise DomainError('apply_inverse of the zero vector')
        self._check_vector(f)
        ainv = inverse(self.a)
        out = {}
        for y, v in f.items():
            wy = self.w.eval(y)
            out[compose(y, ainv)] = v / wy if is_exact_scalar(v) else v / float(wy)
        return SparseVector(out)

    # norms ---------------------------------------------------------------
    def _terms(self, f: SparseVector, n: int) -> List[ScaledProduct]:
        terms = []
        for x, v in f.items():
            sp = self.phi_scaled(n, x)
            av = abs(v)
            if isinstance(av, Fraction):
                sp.mul_fraction(av)
            else:
                sp.mul(float(av))
            terms.append(sp)
        return terms

    def _combine(self, terms: List[ScaledProduct]) -> LogValue:
        terms = [t for t in terms if t.mantissa != 0]
        if not terms:
            return LogValue.zero()
        top = max(terms, key=lambda t: (t.exponent, t.mantissa))
        p = float(self.p)
        acc = math.fsum(math.exp(p * t.log_ratio(top)) for t in terms)
        return LogValue(top.log + math.log(acc) / p)

    def orbit_norm(self, f: SparseVector, n: int) -> LogValue:
        """``||T^n f||_p`` without materializing ``T^n f``."""
        if f.is_zero():
            raise DomainError('orbit norm of the zero vector')
        if n < 0:
            raise DomainError('orbit_norm needs n >= 0')
        self._check_vector(f)
        return self._combine(self._terms(f, n))

    def orbit_norm_p_power_exact(self, f: SparseVector, n: int) -> Fraction:
        """Exact ``||T^n f||_p^p``; needs integer p and exact entries."""
        if f.is_zero():
            raise DomainError('orbit norm of the zero vector')
        p = as_fraction(self.p)
        if p.denominator != 1 or not f.exact:
            raise DomainError('exact orbit norm needs integer p and exact entries')
        p = int(p)
        total = Fraction(0)
        for x, v in f.items():
            phi = self.phi_exact(n, x) if n > 0 else Fraction(1)
            total += (phi * abs(v)) ** p
        return total

    def orbit_norm_series(self, f: SparseVector, N: int) -> List[LogValue]:
        """``[||T^n f||_p for n = 1..N]``, updating each support point's product."""
        if N < 1:
            raise DomainError('orbit_norm_series needs N >= 1')
        if f.is_zero():
            raise DomainError('orbit norm of the zero vector')
        self._check_vector(f)
        a = self.a
        pos = list(f)
        terms = self._terms(f, 0)
        w = self.w
        out = []
        for _ in range(N):
            for i, g in enumerate(pos):
                g = compose(g, a)
                pos[i] = g
                terms[i].mul(w.eval_float(g))
            out.append(self._combine(terms))
        return out

    def orbit_norm_series_exact(self, f: SparseVector, N: int) -> List[Fraction]:
        """Exact ``||T^n f||_p^p`` for n = 1..N (integer p, exact entries)."""
        p = as_fraction(self.p)
        if p.denominator != 1 or not f.exact or f.is_zero():
            raise DomainError('exact orbit norms need integer p and exact nonzero entries')
        p = int(p)
        pos = list(f)
        vals = [abs(v) for v in f._entries.values()]
        out = []
        for _ in range(N):
            for i, g in enumerate(pos):
                g = compose(g, self.a)
                pos[i] = g
                vals[i] = vals[i] * self.w.eval(g)
            total = sum((v ** p for v in vals), Fraction(0))
            if self.bit_cap is not None and max(total.numerator.bit_length(),
                                                total.denominator.bit_length()) > self.bit_cap * max(p, 1):
                raise NumericRangeError('exact orbit norm exceeds bit cap; retry in log mode')
            out.append(total)
        return out

    def to_json(self) -> dict:
        return {'group': self.group.name, 'a': self.a.to_json(),
                'weight': self.w.to_json(), 'p': str(as_fraction(self.p))}


def bilateral_shift(w: WeightSpec, p: float = 2, **kw) -> WeightedTranslation:
    """``B_w = T_{-1,w}`` on ``l^p(Z)``."""
    return WeightedTranslation(GroupSpec.integers(), GroupElement(-1), w, p, **kw)


def multiply(w: WeightSpec, f: SparseVector) -> SparseVector:
    """``M_w f``: pointwise product with the weight."""
    out = {}
    for x, v in f.items():
        wx = w.eval(x)
        out[x] = wx * v if is_exact_scalar(v) else float(wx) * v
    return SparseVector(out)
