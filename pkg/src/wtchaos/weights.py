"""Positive bounded weights on Z and Z x Z_m.

Every weight evaluates to an exact :class:`fractions.Fraction` and carries
declared global bounds ``declared_inf <= w <= declared_sup``.  Evaluation
outside those bounds raises :class:`InvariantViolationError`.

Rules other than :class:`Table` and :class:`MirrorProduct` only look at
the integer coordinate of an element.
"""

from __future__ import annotations

import csv
import math
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import DomainError, InvariantViolationError, PreconditionError
from .group import GroupElement, compose

__all__ = ['WeightSpec', 'Constant', 'TwoSided', 'Periodic', 'Table',
           'CubicRuns', 'MirrorProduct', 'ShiftedReciprocal', 'as_fraction',
           'invertibility_check', 'inverse_weight', 'run_length_profile',
           'superlevel_runs', 'read_table_csv']

Number = Union[int, float, str, Fraction]

_CACHE_LIMIT = 1 << 20


def as_fraction(v: Number) -> Fraction:
    """Exact rational from an int, Fraction, decimal string or ``"p/q"``."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool):
        raise TypeError('bool is not a weight value')
    if isinstance(v, float):
        # floats are taken at their shortest decimal form, 0.1 -> 1/10
        return Fraction(repr(v))
    return Fraction(v)


def _z(g) -> int:
    return g.z if isinstance(g, GroupElement) else int(g)


class WeightSpec:
    """Base class of all weight rules.

    Subclasses implement ``_value(g)``; :meth:`eval` adds the bounds check
    and a small memo.  Instances are treated as immutable.
    """

    rule = 'abstract'

    def __init__(self, declared_sup: Number, declared_inf: Number):
        sup, inf = as_fraction(declared_sup), as_fraction(declared_inf)
        if inf <= 0:
            raise InvariantViolationError(f'declared_inf must be positive, got {inf}')
        if sup < inf:
            raise InvariantViolationError(f'declared_sup {sup} < declared_inf {inf}')
        self.declared_sup = sup
        self.declared_inf = inf
        self._memo: Dict = {}
        self._fmemo: Dict = {}

    def _value(self, g) -> Fraction:
        raise NotImplementedError

    def eval(self, g) -> Fraction:
        """Exact value ``w(g)``; ``g`` may be a GroupElement or a plain int."""
        try:
            return self._memo[g]
        except KeyError:
            pass
        v = self._value(g)
        if not self.declared_inf <= v <= self.declared_sup:
            raise InvariantViolationError(
                f'{self.rule} weight value {v} at {g!r} outside declared bounds '
                f'[{self.declared_inf}, {self.declared_sup}]')
        if len(self._memo) > _CACHE_LIMIT:
            self._memo.clear()
        self._memo[g] = v
        return v

    __call__ = eval

    def eval_float(self, g) -> float:
        try:
            return self._fmemo[g]
        except KeyError:
            pass
        v = float(self.eval(g))
        if len(self._fmemo) > _CACHE_LIMIT:
            self._fmemo.clear()
        self._fmemo[g] = v
        return v

    @property
    def bound_M(self) -> Fraction:
        """``max(sup w, 1/inf w)``, the constant of the translate bounds."""
        return max(self.declared_sup, 1 / self.declared_inf)

    def params(self) -> dict:
        return {}

    def to_json(self) -> dict:
        d = {'rule': self.rule}
        d.update(self.params())
        d['declared_sup'] = str(self.declared_sup)
        d['declared_inf'] = str(self.declared_inf)
        return d

    def __repr__(self):
        args = ', '.join(f'{k}={v!r}' for k, v in self.params().items())
        return f'{type(self).__name__}({args})'


class Constant(WeightSpec):
    rule = 'constant'

    def __init__(self, value: Number):
        self.value = as_fraction(value)
        if self.value <= 0:
            raise InvariantViolationError('weights must be positive')
        super().__init__(self.value, self.value)

    def _value(self, g):
        return self.value

    def params(self):
        return {'value': str(self.value)}


class TwoSided(WeightSpec):
    """``left`` for z < 0, ``right`` for z >= 0."""

    rule = 'two_sided'

    def __init__(self, left: Number, right: Number):
        self.left, self.right = as_fraction(left), as_fraction(right)
        if self.left <= 0 or self.right <= 0:
            raise InvariantViolationError('weights must be positive')
        super().__init__(max(self.left, self.right), min(self.left, self.right))

    def _value(self, g):
        return self.left if _z(g) < 0 else self.right

    def params(self):
        return {'left': str(self.left), 'right': str(self.right)}


class Periodic(WeightSpec):
    """``values[z mod len(values)]``."""

    rule = 'periodic'

    def __init__(self, values: Sequence[Number]):
        if not values:
            raise DomainError('periodic weight needs at least one value')
        self.values = tuple(as_fraction(v) for v in values)
        if min(self.values) <= 0:
            raise InvariantViolationError('weights must be positive')
        super().__init__(max(self.values), min(self.values))

    def _value(self, g):
        return self.values[_z(g) % len(self.values)]

    def params(self):
        return {'values': [str(v) for v in self.values]}


class Table(WeightSpec):
    """Explicit values on finitely many elements and a default elsewhere.

    Keys may be GroupElements or plain ints (integer coordinate only).
    """

    rule = 'table'

    def __init__(self, table: Mapping, default: Number):
        self.default = as_fraction(default)
        self.table = {k: as_fraction(v) for k, v in table.items()}
        vals = list(self.table.values()) + [self.default]
        if min(vals) <= 0:
            raise InvariantViolationError('weights must be positive')
        super().__init__(max(vals), min(vals))

    def _value(self, g):
        v = self.table.get(g)
        if v is None and isinstance(g, GroupElement) and g.m is None:
            v = self.table.get(g.z)
        elif v is None and isinstance(g, int):
            v = self.table.get(GroupElement(g))
        return self.default if v is None else v

    def params(self):
        items = sorted(self.table.items(), key=lambda kv: (_z(kv[0]), str(kv[0])))
        return {'default': str(self.default),
                'table': [[k.to_json() if isinstance(k, GroupElement) else k, str(v)]
                          for k, v in items]}


def _in_cubic_run(z: int) -> bool:
    if z < 1:
        return False
    n = round(z ** (1 / 3))
    # correct float cube-root rounding so that n is the largest n with n^3 <= z
    while n ** 3 > z:
        n -= 1
    while (n + 1) ** 3 <= z:
        n += 1
    return n >= 1 and z < n ** 3 + n


class CubicRuns(WeightSpec):
    """2 on the runs ``[n^3, n^3 + n)``, 1/2 on negatives, 1 elsewhere.

    The superlevel set ``{w > 1}`` contains an interval of every length,
    while the negative half-line makes every orbit of a finitely supported
    vector decay eventually.
    """

    rule = 'cubic_runs'

    HIGH = Fraction(2)
    LOW = Fraction(1, 2)

    def __init__(self):
        super().__init__(self.HIGH, self.LOW)

    def _value(self, g):
        z = _z(g)
        if z < 0:
            return self.LOW
        return self.HIGH if _in_cubic_run(z) else Fraction(1)

    @staticmethod
    def run(n: int) -> Tuple[int, int]:
        """Half-open run ``[n^3, n^3 + n)`` of length n."""
        return n ** 3, n ** 3 + n


class MirrorProduct(WeightSpec):
    """Weight on Z x Z_m: ``base(z)`` on the copy c = 0, ``1/base(z)`` elsewhere."""

    rule = 'mirror_product'

    def __init__(self, base: WeightSpec):
        self.base = base
        M = base.bound_M
        super().__init__(M, 1 / M)

    def _value(self, g):
        if not isinstance(g, GroupElement) or g.m is None:
            raise DomainError('mirror product weights live on Z x Z_m')
        v = self.base.eval(g.z)
        return v if g.c == 0 else 1 / v

    def params(self):
        return {'base': self.base.to_json()}


class ShiftedReciprocal(WeightSpec):
    """``v(x) = 1 / w(x a)``, the weight of the inverse weighted translation."""

    rule = 'shifted_reciprocal'

    def __init__(self, base: WeightSpec, a: GroupElement):
        self.base = base
        self.a = a
        super().__init__(1 / base.declared_inf, 1 / base.declared_sup)

    def _value(self, g):
        if not isinstance(g, GroupElement):
            g = GroupElement(int(g))
        return 1 / self.base.eval(compose(g, self.a))

    def params(self):
        return {'base': self.base.to_json(), 'a': self.a.to_json()}


def invertibility_check(w: WeightSpec) -> Tuple[bool, Fraction]:
    """Whether ``T_{a,w}`` is invertible, together with ``M = max(sup w, 1/inf w)``.

    Declared bounds are finite and ``declared_inf > 0`` by construction, so
    the flag is false only for an object that skipped the base initializer.
    """
    sup = getattr(w, 'declared_sup', None)
    inf = getattr(w, 'declared_inf', None)
    if sup is None or inf is None or inf <= 0:
        return False, Fraction(0)
    return True, w.bound_M


def inverse_weight(w: WeightSpec, a: GroupElement) -> WeightSpec:
    """Weight ``x -> 1/w(x a)`` of ``S_{a,w} = T_{a^{-1}, w^{-1} * delta_a^{-1}}``."""
    ok, _ = invertibility_check(w)
    if not ok:
        raise PreconditionError('weight is not invertible')
    if isinstance(w, Constant):
        return Constant(1 / w.value)
    if isinstance(w, ShiftedReciprocal) and compose(w.a, a).is_identity():
        return w.base
    return ShiftedReciprocal(w, a)


def superlevel_runs(w: WeightSpec, C: Number, lo: int, hi: int,
                    strict: bool = True) -> List[Tuple[int, int]]:
    """Maximal runs ``[start, stop)`` of ``{w > C}`` (or ``>=``) inside ``[lo, hi]``."""
    C = as_fraction(C)
    runs = []
    start = None
    for z in range(lo, hi + 1):
        v = w.eval(z)
        inside = v > C if strict else v >= C
        if inside and start is None:
            start = z
        elif not inside and start is not None:
            runs.append((start, z))
            start = None
    if start is not None:
        runs.append((start, hi + 1))
    return runs


def run_length_profile(w: WeightSpec, C: Number, window: Tuple[int, int],
                       strict: bool = True) -> List[int]:
    """Sorted maximal run lengths of ``{w > C}`` within the closed window.

    Runs touching the window edge are clipped to it.
    """
    lo, hi = window
    if hi < lo:
        raise DomainError(f'empty window {window}')
    return sorted(b - a for a, b in superlevel_runs(w, C, lo, hi, strict))


def read_table_csv(path) -> Table:
    """Load a :class:`Table` weight from CSV.

    Layout: header ``position,value``, a row ``default,<v>``, then one row
    per position.  Positions are ``z`` on Z or ``z:c`` on Z x Z_m; the
    latter need the modulus, so they are returned as ``(z, c)`` tuples and
    resolved by :func:`bind_table`.
    """
    table: Dict = {}
    default = None
    with open(path, newline='') as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ['position', 'value']:
            raise DomainError(f'{path}: expected header "position,value"')
        for row in reader:
            if not row or not ''.join(row).strip():
                continue
            if len(row) != 2:
                raise DomainError(f'{path}: malformed row {row!r}')
            pos, val = row[0].strip(), row[1].strip()
            if pos == 'default':
                default = val
            elif ':' in pos:
                z, c = pos.split(':')
                table[(int(z), int(c))] = val
            else:
                table[int(pos)] = val
    if default is None:
        raise DomainError(f'{path}: missing "default" row')
    return Table(table, default)


def bind_table(t: Table, modulus: Optional[int]) -> Table:
    """Resolve ``(z, c)`` tuple keys of a CSV-loaded table into group elements."""
    if modulus is None:
        if any(isinstance(k, tuple) for k in t.table):
            raise DomainError('table has z:c positions but the group is Z')
        return t
    table = {}
    for k, v in t.table.items():
        if isinstance(k, tuple):
            table[GroupElement(k[0], k[1] % modulus, modulus)] = v
        else:
            for c in range(modulus):
                table[GroupElement(k, c, modulus)] = v
    return Table(table, t.default)
