"""Finite-horizon density estimates and distributional functions.

Upper and lower densities are limits and cannot be computed.  The
estimators here take the extrema of the running density
``d_n = card(A & [1, n]) / n`` over the tail window ``n >= ceil(theta N)``;
they are one-sided evidence and every report says so.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from .errors import DomainError
from .numerics import LogValue
from .vector import SparseVector

__all__ = ['IndexSet', 'DensityEstimate', 'DistributionalProfile',
           'density_estimate', 'running_density', 'distributional_function',
           'pair_distances', 'pair_profile', 'profile_from_distances',
           'scrambled_pair_verdict', 'tail_start', 'EVIDENCE_CHAOTIC_PAIR',
           'INCONCLUSIVE']

EVIDENCE_CHAOTIC_PAIR = 'evidence_chaotic_pair'
INCONCLUSIVE = 'inconclusive'
TIE_TOL = 1e-12
ESTIMATE_NOTE = ('finite-horizon estimate: extrema of the running density over '
                 'the tail window, not a limit')


def tail_start(N: int, theta: float) -> int:
    return max(1, math.ceil(theta * N))


@dataclass(frozen=True)
class IndexSet:
    """A subset of ``[1, N]``."""

    horizon: int
    members: tuple = ()

    def __post_init__(self):
        if self.horizon < 1:
            raise DomainError('IndexSet horizon must be positive')
        m = tuple(sorted(set(int(x) for x in self.members)))
        if m and (m[0] < 1 or m[-1] > self.horizon):
            raise DomainError(f'members must lie in [1, {self.horizon}]')
        object.__setattr__(self, 'members', m)

    @classmethod
    def full(cls, N: int) -> 'IndexSet':
        return cls(N, tuple(range(1, N + 1)))

    @classmethod
    def from_predicate(cls, N: int, pred) -> 'IndexSet':
        return cls(N, tuple(n for n in range(1, N + 1) if pred(n)))

    @classmethod
    def from_mask(cls, mask: Sequence[bool]) -> 'IndexSet':
        """Mask entry ``i`` says whether ``i + 1`` is a member."""
        return cls(len(mask), tuple(i + 1 for i, b in enumerate(mask) if b))

    def __contains__(self, n):
        i = np.searchsorted(self.members, n)
        return i < len(self.members) and self.members[i] == n

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def mask(self) -> np.ndarray:
        m = np.zeros(self.horizon, dtype=bool)
        if self.members:
            m[np.asarray(self.members) - 1] = True
        return m

    def complement(self) -> 'IndexSet':
        return IndexSet.from_mask(~self.mask())

    def union(self, other: 'IndexSet') -> 'IndexSet':
        return IndexSet(max(self.horizon, other.horizon), self.members + other.members)

    def issubset(self, other: 'IndexSet') -> bool:
        return set(self.members) <= set(other.members)

    def to_json(self):
        return {'horizon': self.horizon, 'members': _compress(self.members)}


def _compress(members) -> List[List[int]]:
    """Runs ``[start, stop]`` (inclusive) of consecutive members."""
    runs = []
    for x in members:
        if runs and runs[-1][1] == x - 1:
            runs[-1][1] = x
        else:
            runs.append([x, x])
    return runs


@dataclass(frozen=True)
class DensityEstimate:
    running: np.ndarray = field(repr=False)
    upper_est: float
    lower_est: float
    tail_fraction: float
    tail_from: int

    def to_json(self, with_series: bool = False):
        d = {'upper_est': self.upper_est, 'lower_est': self.lower_est,
             'tail_fraction': self.tail_fraction, 'tail_from': self.tail_from,
             'final_running_density': float(self.running[-1]),
             'note': ESTIMATE_NOTE}
        if with_series:
            d['running'] = [float(x) for x in self.running]
        return d


def running_density(A: IndexSet) -> np.ndarray:
    """``d_n`` for ``n = 1..N`` (index ``n-1``)."""
    counts = np.cumsum(A.mask())
    return counts / np.arange(1, A.horizon + 1)


def density_estimate(A: IndexSet, theta: float = 0.1) -> DensityEstimate:
    if not 0 < theta < 1:
        raise DomainError(f'theta must lie in (0, 1), got {theta}')
    if A.horizon < 1:
        raise DomainError('empty horizon')
    d = running_density(A)
    k = tail_start(A.horizon, theta)
    tail = d[k - 1:]
    return DensityEstimate(d, float(tail.max()), float(tail.min()), theta, k)


def distributional_function(dist: Sequence[float], n: int, tau: float) -> float:
    """``(1/n) card{1 <= j <= n-1 : dist_j < tau}``; ``dist[0]`` is ``dist_1``."""
    if n < 2:
        raise DomainError('distributional function needs n >= 2')
    if len(dist) < n - 1:
        raise DomainError(f'need {n - 1} distances, got {len(dist)}')
    return sum(1 for d in dist[:n - 1] if d < tau) / n


@dataclass
class DistributionalProfile:
    """``F^n(tau)`` for ``n = 2..N`` on a tau grid, plus tail extrema.

    ``F[i, k]`` is ``F^{i+2}(taus[k])``.
    """

    taus: tuple
    F: np.ndarray = field(repr=False)
    F_star_est: Dict[float, float]
    F_lower_est: Dict[float, float]
    horizon: int
    theta: float
    distances: List[LogValue] = field(default_factory=list, repr=False)

    def value(self, n: int, tau: float) -> float:
        return float(self.F[n - 2, self.taus.index(tau)])

    def to_json(self):
        return {'horizon': self.horizon, 'theta': self.theta,
                'taus': list(self.taus),
                'F_star_est': {repr(t): v for t, v in self.F_star_est.items()},
                'F_lower_est': {repr(t): v for t, v in self.F_lower_est.items()},
                'note': ESTIMATE_NOTE}


def _log_distances(dist) -> np.ndarray:
    out = np.empty(len(dist))
    for i, d in enumerate(dist):
        if isinstance(d, LogValue):
            out[i] = -np.inf if d.zero_flag else d.log_magnitude
        else:
            out[i] = -np.inf if d == 0 else math.log(d)
    return out


def profile_from_distances(dist: Sequence, taus: Iterable[float],
                           theta: float = 0.1) -> DistributionalProfile:
    """Profile from ``dist_1..dist_N`` (floats or LogValues); the horizon is N."""
    N = len(dist)
    if N < 2:
        raise DomainError('pair profile needs N >= 2')
    taus = tuple(sorted(set(float(t) for t in taus)))
    if not taus or taus[0] <= 0:
        raise DomainError('tau grid must be nonempty and positive')
    logd = _log_distances(dist)
    n = np.arange(2, N + 1)
    F = np.empty((N - 1, len(taus)))
    for k, t in enumerate(taus):
        # strict inequality in the log domain; values within TIE_TOL of tau
        # count as ties and are excluded
        lt = math.log(t)
        below = np.concatenate([[0], np.cumsum(logd < lt - TIE_TOL * max(1.0, abs(lt)))])
        F[:, k] = below[n - 1] / n
    k0 = max(2, tail_start(N, theta))
    tail = F[k0 - 2:]
    star = {t: float(tail[:, k].max()) for k, t in enumerate(taus)}
    low = {t: float(tail[:, k].min()) for k, t in enumerate(taus)}
    lv = [d if isinstance(d, LogValue) else LogValue.from_value(d) for d in dist]
    return DistributionalProfile(taus, F, star, low, N, theta, lv)


def pair_distances(T, x: SparseVector, y: SparseVector, N: int) -> List[LogValue]:
    """``||T^j x - T^j y||_p = ||T^j (x - y)||_p`` for j = 1..N."""
    diff = x - y
    if diff.is_zero():
        return [LogValue.zero()] * N
    return T.orbit_norm_series(diff, N)


def pair_profile(T, x: SparseVector, y: SparseVector, N: int,
                 taus: Iterable[float], theta: float = 0.1) -> DistributionalProfile:
    if N < 2:
        raise DomainError('pair profile needs N >= 2')
    return profile_from_distances(pair_distances(T, x, y, N), taus, theta)


def scrambled_pair_verdict(profile: DistributionalProfile, eps: float, tau: float,
                           delta_low: float, delta_high: float) -> dict:
    """Pair verdict from a profile; never more than evidence."""
    for t in (eps, tau):
        if float(t) not in profile.taus:
            raise DomainError(f'{t} is not on the profile tau grid')
    f_low = profile.F_lower_est[float(eps)]
    f_star = profile.F_star_est[float(tau)]
    separated = f_low <= delta_low
    proximal = f_star >= 1 - delta_high
    return {'verdict': EVIDENCE_CHAOTIC_PAIR if separated and proximal else INCONCLUSIVE,
            'eps': eps, 'tau': tau, 'delta_low': delta_low, 'delta_high': delta_high,
            'F_lower_est_eps': f_low, 'F_star_est_tau': f_star,
            'separation_evidence': separated, 'proximality_evidence': proximal,
            'horizon': profile.horizon, 'note': ESTIMATE_NOTE}
