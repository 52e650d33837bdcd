"""Discrete groups Z and Z x Z_m with counting (Haar) measure.

Elements are written additively.  An element of Z x Z_m carries its
modulus so that mixing elements of different groups is caught early.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import GroupMismatchError, NumericRangeError

__all__ = ['GroupSpec', 'GroupElement', 'compose', 'inverse', 'power',
           'measure', 'translate_set', 'INT64_MAX']

INT64_MAX = 2**63 - 1
INT64_MIN = -2**63


def _check_int64(z: int) -> int:
    if not INT64_MIN <= z <= INT64_MAX:
        raise NumericRangeError(f'group coordinate {z} overflows int64')
    return z


@dataclass(frozen=True)
class GroupSpec:
    """Either the integers (``modulus is None``) or Z x Z_m."""

    modulus: Optional[int] = None

    def __post_init__(self):
        if self.modulus is not None and (not isinstance(self.modulus, int)
                                         or self.modulus < 2):
            raise ValueError(f'modulus must be an integer >= 2, got {self.modulus!r}')

    @classmethod
    def integers(cls) -> 'GroupSpec':
        return cls(None)

    @classmethod
    def product(cls, m: int) -> 'GroupSpec':
        return cls(m)

    @property
    def is_product(self) -> bool:
        return self.modulus is not None

    @property
    def name(self) -> str:
        return 'Z' if self.modulus is None else f'ZxZ{self.modulus}'

    def element(self, z: int, c: Optional[int] = None) -> 'GroupElement':
        if self.modulus is None:
            if c is not None:
                raise GroupMismatchError('Z has no cyclic coordinate')
            return GroupElement(z)
        return GroupElement(z, 0 if c is None else c % self.modulus, self.modulus)

    def identity(self) -> 'GroupElement':
        return self.element(0, 0 if self.is_product else None)

    def contains(self, g: 'GroupElement') -> bool:
        return g.m == self.modulus

    def __str__(self):
        return self.name


@dataclass(frozen=True, order=True)
class GroupElement:
    """A point ``z`` of Z, or ``(z, c)`` of Z x Z_m when ``m`` is set."""

    z: int
    c: Optional[int] = None
    m: Optional[int] = None

    def __post_init__(self):
        _check_int64(self.z)
        if (self.c is None) != (self.m is None):
            raise ValueError('cyclic coordinate and modulus must be given together')
        if self.m is not None and not 0 <= self.c < self.m:
            raise ValueError(f'cyclic coordinate {self.c} not in [0, {self.m})')

    @property
    def group(self) -> GroupSpec:
        return GroupSpec(self.m)

    def is_identity(self) -> bool:
        return self.z == 0 and not self.c

    def __add__(self, other: 'GroupElement') -> 'GroupElement':
        return compose(self, other)

    def __neg__(self) -> 'GroupElement':
        return inverse(self)

    def __sub__(self, other: 'GroupElement') -> 'GroupElement':
        return compose(self, inverse(other))

    def __repr__(self):
        if self.m is None:
            return f'({self.z})'
        return f'({self.z},{self.c})'

    def to_json(self):
        return self.z if self.m is None else [self.z, self.c]


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    if g.m != h.m:
        raise GroupMismatchError(f'cannot compose {g!r} in {g.group} with {h!r} in {h.group}')
    z = _check_int64(g.z + h.z)
    if g.m is None:
        return GroupElement(z)
    return GroupElement(z, (g.c + h.c) % g.m, g.m)


def inverse(g: GroupElement) -> GroupElement:
    if g.m is None:
        return GroupElement(_check_int64(-g.z))
    return GroupElement(_check_int64(-g.z), (-g.c) % g.m, g.m)


def power(a: GroupElement, n: int) -> GroupElement:
    """n-fold composition of ``a``; negative ``n`` uses the inverse."""
    z = a.z * n
    if not INT64_MIN <= z <= INT64_MAX:
        raise NumericRangeError(f'{a!r}^{n} overflows int64')
    if a.m is None:
        return GroupElement(z)
    return GroupElement(z, (a.c * n) % a.m, a.m)


def measure(S: Iterable[GroupElement]) -> int:
    """Counting measure of a finite set."""
    return len(set(S))


def translate_set(S: Iterable[GroupElement], a: GroupElement) -> frozenset:
    """Right translate ``S a`` of a finite set."""
    return frozenset(compose(g, a) for g in S)
