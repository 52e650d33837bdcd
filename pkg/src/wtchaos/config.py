"""Experiment configuration read from TOML.

A minimal document::

    group = "Z"
    weight = "cubic_runs"
    p = 2
    N = 20

``weight`` is either a rule name (``cubic_runs``) or a table such as
``{rule = "two_sided", left = 1, right = 2}``.  Supported rules and their
parameters are ``constant(value)``, ``two_sided(left, right)``,
``periodic(values)``, ``table(entries, default)`` or ``table_file``,
``cubic_runs`` and ``mirror_product(base)``.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .errors import ChaosError, ConfigError
from .group import GroupElement, GroupSpec
from .operator import LOG, RATIONAL, WeightedTranslation
from .vector import SparseVector
from .weights import (Constant, CubicRuns, MirrorProduct, Periodic, Table, TwoSided,
                      WeightSpec, as_fraction, bind_table, read_table_csv)

__all__ = ['ExperimentConfig', 'parse_config', 'config_from_mapping', 'load_config',
           'build_weight', 'config_hash']

KNOWN_KEYS = {
    'group', 'm', 'a', 'weight', 'p', 'N', 'orbit_horizon', 'window', 'theta', 'K',
    'delta_grid', 'tau_grid', 'epsilon', 'tau', 'delta_low', 'delta_high', 'lambda',
    'growth_threshold', 'vector', 'B', 'mode', 'out', 'mirror_samples',
}
REQUIRED = ('group', 'weight', 'p', 'N')
WEIGHT_KEYS = {
    'constant': {'value'},
    'two_sided': {'left', 'right'},
    'periodic': {'values'},
    'table': {'entries', 'default', 'table_file'},
    'cubic_runs': set(),
    'mirror_product': {'base'},
}


@dataclass
class ExperimentConfig:
    group: GroupSpec
    a: GroupElement
    weight: WeightSpec
    p: float
    N: int
    orbit_horizon: int
    window: Tuple[int, int]
    theta: float = 0.1
    K: Tuple = (0,)
    delta_grid: Tuple[float, ...] = (0.1,)
    tau_grid: Tuple[float, ...] = (0.1, 1000.0)
    epsilon: float = 0.1
    tau: float = 1000.0
    delta_low: float = 0.2
    delta_high: float = 0.2
    Lambda: float = 1000.0
    growth_threshold: float = 10.0
    vector: Any = 'synthesized'
    B: Optional[Tuple[int, ...]] = None
    mode: str = RATIONAL
    out: str = 'out'
    mirror_samples: Tuple[int, ...] = (0,)
    raw: Dict = field(default_factory=dict, repr=False)
    base_dir: str = field(default='.', repr=False)

    def with_overrides(self, N: Optional[int] = None, mode: Optional[str] = None) -> 'ExperimentConfig':
        """Re-validated copy with the horizon N and/or mode replaced."""
        raw = dict(self.raw)
        if N is not None:
            raw['N'] = N
        if mode is not None:
            raw['mode'] = mode
        return config_from_mapping(raw, self.base_dir)

    def operator(self) -> WeightedTranslation:
        return WeightedTranslation(self.group, self.a, self.weight, self.p)

    def element(self, g) -> GroupElement:
        return _element(self.group, g, 'K')

    def explicit_vector(self) -> Optional[SparseVector]:
        """The configured vector unless it is the ``synthesized`` preset."""
        v = self.vector
        if v == 'synthesized':
            return None
        if isinstance(v, str) and v.startswith('char:'):
            return SparseVector({_parse_point(self.group, v[5:]): 1})
        entries = {}
        for row in v:
            g = _element(self.group, row[0], 'vector')
            im = float(row[2]) if len(row) > 2 else 0.0
            entries[g] = complex(float(_exact(row[1])), im) if im else _exact(row[1])
        return SparseVector(entries)

    @property
    def content_hash(self) -> str:
        return config_hash(self.raw)

    def to_json(self) -> dict:
        return {'group': self.group.name, 'a': self.a.to_json(),
                'weight': self.weight.to_json(), 'p': self.p, 'N': self.N,
                'orbit_horizon': self.orbit_horizon, 'window': list(self.window),
                'theta': self.theta, 'K': [self.element(g).to_json() for g in self.K],
                'delta_grid': list(self.delta_grid), 'tau_grid': list(self.tau_grid),
                'epsilon': self.epsilon, 'tau': self.tau, 'delta_low': self.delta_low,
                'delta_high': self.delta_high, 'lambda': self.Lambda,
                'growth_threshold': self.growth_threshold,
                'vector': self.vector, 'B': None if self.B is None else list(self.B),
                'mode': self.mode, 'mirror_samples': list(self.mirror_samples)}


def config_hash(raw: dict) -> str:
    """SHA-256 of the canonical JSON form; stable under re-serialization."""
    blob = json.dumps(raw, sort_keys=True, separators=(',', ':'), default=str)
    return hashlib.sha256(blob.encode()).hexdigest()


def _exact(v):
    if isinstance(v, (int, str)):
        try:
            return as_fraction(v)
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f'bad number {v!r}', 'vector')
    return float(v)


def _parse_point(G: GroupSpec, text: str) -> GroupElement:
    text = text.strip()
    try:
        if ':' in text or ',' in text:
            z, c = text.replace(':', ',').split(',')
            return _element(G, [int(z), int(c)], 'vector')
        return _element(G, int(text), 'vector')
    except ValueError:
        raise ConfigError(f'cannot parse point {text!r}', 'vector')


def _element(G: GroupSpec, g, key: str) -> GroupElement:
    if isinstance(g, GroupElement):
        return g
    try:
        if isinstance(g, (list, tuple)):
            if G.modulus is None:
                raise ConfigError(f'{key}: pair {g!r} given on Z', key)
            return G.element(int(g[0]), int(g[1]) % G.modulus)
        return G.element(int(g), 0 if G.modulus else None)
    except ChaosError as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError(f'{key}: {e}', key)


def build_weight(spec, G: GroupSpec, base_dir: str = '.', key: str = 'weight') -> WeightSpec:
    if isinstance(spec, str):
        spec = {'rule': spec}
    if not isinstance(spec, dict) or 'rule' not in spec:
        raise ConfigError(f'{key} needs a rule', key)
    rule = spec['rule']
    if rule not in WEIGHT_KEYS:
        raise ConfigError(f'unknown weight rule {rule!r}', f'{key}.rule')
    for k in spec:
        if k != 'rule' and k not in WEIGHT_KEYS[rule]:
            raise ConfigError(f'unknown key {key}.{k} for rule {rule}', f'{key}.{k}')

    def need(k):
        if k not in spec:
            raise ConfigError(f'missing required key {key}.{k}', f'{key}.{k}')
        return spec[k]

    try:
        if rule == 'constant':
            return Constant(need('value'))
        if rule == 'two_sided':
            return TwoSided(need('left'), need('right'))
        if rule == 'periodic':
            return Periodic(need('values'))
        if rule == 'cubic_runs':
            return CubicRuns()
        if rule == 'mirror_product':
            if G.modulus is None:
                raise ConfigError('mirror_product needs group = "ZxZm"', key)
            return MirrorProduct(build_weight(need('base'), GroupSpec.integers(), base_dir,
                                              f'{key}.base'))
        if 'table_file' in spec:
            path = os.path.join(base_dir, spec['table_file'])
            return bind_table(read_table_csv(path), G.modulus)
        table = {_element(G, pos, f'{key}.entries'): val for pos, val in need('entries')}
        return Table(table, need('default'))
    except ConfigError:
        raise
    except (ChaosError, ValueError, TypeError, ZeroDivisionError, OSError) as e:
        raise ConfigError(f'{key}: {e}', key)


def _num(raw, key, default=None, kind=float):
    if key not in raw:
        if default is None:
            raise ConfigError(f'missing required key {key}', key)
        return default
    v = raw[key]
    try:
        if kind is int:
            if isinstance(v, bool) or int(v) != v:
                raise ValueError
            return int(v)
        return float(v)
    except (TypeError, ValueError):
        raise ConfigError(f'{key} must be a {kind.__name__}, got {v!r}', key)


def parse_config(text: str, base_dir: str = '.') -> ExperimentConfig:
    """Parse and validate a TOML document."""
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f'invalid TOML: {e}')
    return config_from_mapping(raw, base_dir)


def config_from_mapping(raw: dict, base_dir: str = '.') -> ExperimentConfig:
    """Validate an already-decoded document."""
    for k in raw:
        if k not in KNOWN_KEYS:
            raise ConfigError(f'unknown key {k!r}', k)
    for k in REQUIRED:
        if k not in raw:
            raise ConfigError(f'missing required key {k}', k)

    gname = raw['group']
    if gname == 'Z':
        if 'm' in raw:
            raise ConfigError('m only applies to group = "ZxZm"', 'm')
        G = GroupSpec.integers()
        a = _element(G, raw.get('a', -1), 'a')
    elif gname == 'ZxZm':
        m = _num(raw, 'm', kind=int)
        if m < 2:
            raise ConfigError('m must be >= 2', 'm')
        G = GroupSpec.product(m)
        a = _element(G, raw.get('a', [-1, 0]), 'a')
    else:
        raise ConfigError(f'group must be "Z" or "ZxZm", got {gname!r}', 'group')
    if a.is_identity():
        raise ConfigError('a must not be the identity', 'a')

    p_raw = raw['p']
    p = _num(raw, 'p')
    if not p >= 1 or math.isinf(p):
        raise ConfigError('p must be ≥ 1', 'p')
    if isinstance(p_raw, int):
        p = p_raw
    N = _num(raw, 'N', kind=int)
    if N < 2:
        raise ConfigError('N must be >= 2', 'N')
    horizon = _num(raw, 'orbit_horizon', N, int)
    if horizon < 2:
        raise ConfigError('orbit_horizon must be >= 2', 'orbit_horizon')

    window = raw.get('window', [0, max(1000, N ** 3 + N)])
    if (not isinstance(window, list) or len(window) != 2
            or not all(isinstance(x, int) for x in window) or window[0] > window[1]):
        raise ConfigError('window must be [lo, hi] with integers lo <= hi', 'window')

    theta = _num(raw, 'theta', 0.1)
    if not 0 < theta < 1:
        raise ConfigError('theta must lie in (0, 1)', 'theta')

    def positive_list(key, default):
        v = raw.get(key, default)
        if not isinstance(v, list) or not v:
            raise ConfigError(f'{key} must be a nonempty list', key)
        try:
            out = tuple(float(x) for x in v)
        except (TypeError, ValueError):
            raise ConfigError(f'{key} must hold numbers', key)
        if min(out) <= 0:
            raise ConfigError(f'{key} entries must be positive', key)
        return out

    deltas = positive_list('delta_grid', [0.1])
    eps = _num(raw, 'epsilon', 0.1)
    tau = _num(raw, 'tau', 1000.0)
    taus = tuple(sorted(set(positive_list('tau_grid', [eps, tau]) + (eps, tau))))
    dl, dh = _num(raw, 'delta_low', 0.2), _num(raw, 'delta_high', 0.2)
    for k, v in (('epsilon', eps), ('tau', tau)):
        if v <= 0:
            raise ConfigError(f'{k} must be positive', k)
    for k, v in (('delta_low', dl), ('delta_high', dh)):
        if not 0 <= v <= 1:
            raise ConfigError(f'{k} must lie in [0, 1]', k)
    Lam = _num(raw, 'lambda', 1000.0)
    if Lam <= 0:
        raise ConfigError('lambda must be positive', 'lambda')
    growth = _num(raw, 'growth_threshold', 10.0)

    K = raw.get('K', [0])
    if not isinstance(K, list) or not K:
        raise ConfigError('K must be a nonempty list of points', 'K')
    for g in K:
        _element(G, g, 'K')

    B = raw.get('B')
    if B is not None:
        if not isinstance(B, list) or not all(isinstance(n, int) and 1 <= n <= N for n in B):
            raise ConfigError('B must be a list of integers in [1, N]', 'B')
        B = tuple(sorted(set(B)))

    mode = raw.get('mode', RATIONAL)
    if mode not in (RATIONAL, LOG):
        raise ConfigError('mode must be "rational" or "log"', 'mode')

    vector = raw.get('vector', 'synthesized')
    if isinstance(vector, str):
        if vector != 'synthesized' and not vector.startswith('char:'):
            raise ConfigError('vector must be "synthesized", "char:<g>" or a list of '
                              '[position, re, im] triples', 'vector')
    elif not isinstance(vector, list) or not vector or not all(
            isinstance(r, list) and len(r) in (2, 3) for r in vector):
        raise ConfigError('vector triples must be [position, re, im]', 'vector')

    samples = raw.get('mirror_samples', [0])
    if not isinstance(samples, list) or not all(isinstance(g, int) for g in samples):
        raise ConfigError('mirror_samples must be a list of integers', 'mirror_samples')

    weight = build_weight(raw['weight'], G, base_dir)
    cfg = ExperimentConfig(G, a, weight, p, N, horizon, (window[0], window[1]), theta,
                           tuple(K), deltas, taus, eps, tau, dl, dh, Lam, growth,
                           vector, B, mode, str(raw.get('out', 'out')), tuple(samples), raw,
                           base_dir)
    cfg.explicit_vector()
    return cfg


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path, 'rb') as fh:
            text = fh.read().decode('utf-8')
    except OSError as e:
        raise ConfigError(f'cannot read config: {e}', 'config')
    return parse_config(text, os.path.dirname(os.path.abspath(path)))
