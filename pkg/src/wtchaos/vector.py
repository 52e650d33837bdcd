"""Finitely supported functions on a discrete group.

Entries are plain Python numbers.  Keep them as ``int``/``Fraction`` to
stay in exact arithmetic; any ``float`` or ``complex`` entry makes the
vector inexact.  Zeros are never stored.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Number
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple

from .group import GroupElement, compose
from .numerics import LogValue, logsumexp

__all__ = ['SparseVector', 'chi', 'is_exact_scalar']


def is_exact_scalar(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _key(g):
    return g if isinstance(g, GroupElement) else GroupElement(int(g))


class SparseVector:
    """Immutable mapping ``GroupElement -> scalar`` with finite support."""

    __slots__ = ('_entries', '_hash')

    def __init__(self, entries: Optional[Mapping] = None):
        clean: Dict[GroupElement, Number] = {}
        if entries:
            items = entries.items() if isinstance(entries, Mapping) else entries
            for g, v in items:
                g = _key(g)
                if v != 0:
                    clean[g] = v
        moduli = {g.m for g in clean}
        if len(moduli) > 1:
            raise ValueError('entries from different groups')
        self._entries = clean
        self._hash = None

    @classmethod
    def _raw(cls, entries: Dict) -> 'SparseVector':
        sv = cls.__new__(cls)
        sv._entries = entries
        sv._hash = None
        return sv

    # mapping protocol ----------------------------------------------------
    def __getitem__(self, g):
        return self._entries.get(_key(g), 0)

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self._entries)

    def __len__(self):
        return len(self._entries)

    def __contains__(self, g):
        return _key(g) in self._entries

    def items(self):
        return self._entries.items()

    @property
    def entries(self) -> Mapping[GroupElement, Number]:
        return MappingProxyType(self._entries)

    @property
    def support(self) -> frozenset:
        return frozenset(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    @property
    def exact(self) -> bool:
        return all(is_exact_scalar(v) for v in self._entries.values())

    # algebra -------------------------------------------------------------
    def __add__(self, other: 'SparseVector') -> 'SparseVector':
        out = dict(self._entries)
        for g, v in other.items():
            s = out.get(g, 0) + v
            if s == 0:
                out.pop(g, None)
            else:
                out[g] = s
        return SparseVector(out)

    def __neg__(self) -> 'SparseVector':
        return SparseVector._raw({g: -v for g, v in self._entries.items()})

    def __sub__(self, other: 'SparseVector') -> 'SparseVector':
        return self + (-other)

    def __mul__(self, c) -> 'SparseVector':
        if c == 0:
            return SparseVector()
        return SparseVector._raw({g: c * v for g, v in self._entries.items()})

    __rmul__ = __mul__

    def __abs__(self) -> 'SparseVector':
        return SparseVector._raw({g: abs(v) for g, v in self._entries.items()})

    def translate(self, b: GroupElement) -> 'SparseVector':
        """``f * delta_b``: the value at ``y`` moves to ``y b``."""
        return SparseVector._raw({compose(g, b): v for g, v in self._entries.items()})

    def restrict(self, S: Iterable) -> 'SparseVector':
        S = {_key(g) for g in S}
        return SparseVector._raw({g: v for g, v in self._entries.items() if g in S})

    def map_values(self, fn) -> 'SparseVector':
        return SparseVector({g: fn(g, v) for g, v in self._entries.items()})

    # norms ---------------------------------------------------------------
    def norm_p_power(self, p) -> Fraction:
        """Exact ``||f||_p^p`` for integer ``p`` and exact entries."""
        if not (isinstance(p, int) or (isinstance(p, Fraction) and p.denominator == 1)):
            raise ValueError('exact p-th power needs an integer p')
        if not self.exact:
            raise ValueError('exact p-th power needs exact entries')
        p = int(p)
        return sum((abs(v) ** p for v in self._entries.values()), Fraction(0))

    def log_norm(self, p: float) -> LogValue:
        if not self._entries:
            return LogValue.zero()
        lg = logsumexp(p * math.log(abs(v)) for v in self._entries.values())
        return LogValue(lg / p)

    def norm(self, p: float) -> float:
        return self.log_norm(p).value

    # misc ----------------------------------------------------------------
    def sorted_items(self):
        return sorted(self._entries.items(), key=lambda kv: kv[0])

    def __eq__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._entries.items()))
        return self._hash

    def __repr__(self):
        body = ', '.join(f'{g!r}: {v}' for g, v in self.sorted_items())
        return f'SparseVector({{{body}}})'

    def to_json(self):
        out = []
        for g, v in self.sorted_items():
            c = complex(v)
            out.append([g.to_json(), str(v) if is_exact_scalar(v) else repr(c.real), repr(c.imag)])
        return out


def chi(*points, group_modulus: Optional[int] = None, value=1) -> SparseVector:
    """Characteristic vector of the given points (``value`` on each).

    Points are ints on Z, ``(z, c)`` tuples on Z x Z_m (pass the modulus),
    or GroupElements.
    """
    entries = {}
    for p in points:
        if isinstance(p, GroupElement):
            g = p
        elif isinstance(p, tuple):
            g = GroupElement(p[0], p[1] % group_modulus, group_modulus)
        else:
            g = GroupElement(int(p)) if group_modulus is None else GroupElement(int(p), 0, group_modulus)
        entries[g] = value
    return SparseVector(entries)
