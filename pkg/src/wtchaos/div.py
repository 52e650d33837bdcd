"""Finite-horizon checks for the structure of distributionally irregular vectors.

Membership in ``DIV_{A,B}`` is a limit statement.  Each function here
checks a finite consequence instead: an orbit-norm identity, a sandwich
inequality, or density estimates of the near-zero and large-norm index sets
up to a horizon N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .density import DensityEstimate, IndexSet, density_estimate
from .errors import DomainError, PreconditionError
from .group import GroupElement, GroupSpec, compose, power
from .numerics import LogValue
from .operator import WeightedTranslation
from .vector import SparseVector, chi, is_exact_scalar
from .weights import MirrorProduct, WeightSpec, as_fraction, invertibility_check

__all__ = ['IrregularityEvidence', 'EquivalenceWitness', 'irregularity_evidence',
           'modulus_check', 'cone_combine', 'cone_dominance', 'equivalence_member',
           'split_vector', 'restrict_to_orbit', 'translate_containment',
           'mirror_operator', 'mirror_two_component_check']

SURROGATE_NOTE = ('finite-horizon surrogate: density estimates of {n <= N : ||T^n y|| < delta} '
                  'and {n <= N : ||T^n y|| > Lambda}; no limit is claimed')


@dataclass
class IrregularityEvidence:
    vector: SparseVector
    series: List[LogValue]
    near_zero: IndexSet
    unbounded: IndexSet
    A_est: DensityEstimate
    B_est: DensityEstimate
    delta: float
    Lambda: float

    @property
    def max_norm(self) -> LogValue:
        return max(self.series, key=lambda v: v.log_magnitude)

    def to_json(self):
        return {'delta': self.delta, 'Lambda': self.Lambda, 'horizon': len(self.series),
                'near_zero': self.near_zero.to_json(), 'unbounded': self.unbounded.to_json(),
                'near_zero_density': self.A_est.to_json(),
                'unbounded_density': self.B_est.to_json(),
                'max_norm': self.max_norm.to_json(), 'note': SURROGATE_NOTE}


def irregularity_evidence(T: WeightedTranslation, y: SparseVector, N: int,
                          delta: float, Lambda: float, theta: float = 0.1) -> IrregularityEvidence:
    if y.is_zero():
        raise DomainError('irregularity evidence needs a nonzero vector')
    s = T.orbit_norm_series(y, N)
    ld, lL = math.log(delta), math.log(Lambda)
    A = IndexSet.from_predicate(N, lambda n: s[n - 1].log_magnitude < ld)
    B = IndexSet.from_predicate(N, lambda n: s[n - 1].log_magnitude > lL)
    return IrregularityEvidence(y, s, A, B, density_estimate(A, theta),
                                density_estimate(B, theta), delta, Lambda)


def modulus_check(T: WeightedTranslation, y: SparseVector, N: int, rtol: float = 1e-12) -> bool:
    """Whether ``y`` and ``|y|`` have the same orbit norms for n = 1..N."""
    if y.is_zero():
        raise DomainError('modulus check needs a nonzero vector')
    ay = abs(y)
    p = as_fraction(T.p)
    if y.exact and p.denominator == 1:
        return T.orbit_norm_series_exact(y, N) == T.orbit_norm_series_exact(ay, N)
    s, t = T.orbit_norm_series(y, N), T.orbit_norm_series(ay, N)
    return all(u.rel_diff(v) <= rtol for u, v in zip(s, t))


def cone_combine(vectors: Sequence[SparseVector], coefficients: Sequence) -> SparseVector:
    """``sum_j c_j |y_j|`` with every ``c_j > 0``."""
    if len(vectors) != len(coefficients):
        raise DomainError('one coefficient per vector')
    if not vectors:
        raise DomainError('empty combination')
    out = SparseVector()
    for y, c in zip(vectors, coefficients):
        if not c > 0:
            raise DomainError(f'cone coefficients must be positive, got {c}')
        out = out + abs(y) * c
    return out


def cone_dominance(T: WeightedTranslation, vectors: Sequence[SparseVector],
                   coefficients: Sequence, N: int, rtol: float = 1e-12) -> Dict[int, bool]:
    """For each j: ``||T^n sum c_i |y_i| || >= c_j ||T^n |y_j| ||`` for all n <= N."""
    z = cone_combine(vectors, coefficients)
    sz = T.orbit_norm_series(z, N)
    out = {}
    for j, (y, c) in enumerate(zip(vectors, coefficients)):
        sy = T.orbit_norm_series(abs(y), N)
        lc = math.log(float(c))
        out[j] = all(a.log_magnitude >= b.log_magnitude + lc - rtol for a, b in zip(sz, sy))
    return out


@dataclass(frozen=True)
class EquivalenceWitness:
    """``c1 |z| <= |y| <= c2 |z|`` on the common support."""

    c1: object
    c2: object

    def inverted(self) -> 'EquivalenceWitness':
        return EquivalenceWitness(1 / self.c2, 1 / self.c1)


def _ratio(a, b):
    if is_exact_scalar(a) and is_exact_scalar(b):
        return Fraction(abs(a)) / Fraction(abs(b))
    return abs(a) / abs(b)


def equivalence_member(y: SparseVector, z: SparseVector) -> Optional[EquivalenceWitness]:
    """Witness that ``y`` lies in the class of ``z``, or None when the supports differ."""
    if y.support != z.support or y.is_zero():
        return None
    ratios = [_ratio(y[g], z[g]) for g in y]
    return EquivalenceWitness(min(ratios), max(ratios))


def split_vector(y: SparseVector, K: Iterable) -> Tuple[SparseVector, SparseVector]:
    """``y1 = y (2 - chi_K) / 3`` and ``y2 = y (1 + chi_K) / 3``.

    Needs ``y >= 0`` entrywise and K a nonempty proper subset of the support.
    """
    K = {g if isinstance(g, GroupElement) else GroupElement(int(g)) for g in K}
    supp = y.support
    for v in y._entries.values():
        if isinstance(v, complex) or v < 0:
            raise PreconditionError('split_vector needs a nonnegative vector')
    if not K or not K <= supp or K == supp:
        raise PreconditionError('K must be a nonempty proper subset of the support')
    third = Fraction(1, 3) if y.exact else 1 / 3
    y1 = y.map_values(lambda g, v: v * third * (1 if g in K else 2))
    y2 = y.map_values(lambda g, v: v * third * (2 if g in K else 1))
    return y1, y2


def restrict_to_orbit(y: SparseVector, g: GroupElement, a: GroupElement) -> SparseVector:
    """Restriction of ``y`` to the orbit ``{g a^i : i in Z}``.

    On Z with ``a = +-1`` the orbit is all of Z; on Z x Z_m with ``a = (k, 0)``
    it is one residue class of the integer coordinate within one copy.
    """
    if a.is_identity():
        return y.restrict([g])
    step = abs(a.z)

    def on_orbit(h: GroupElement) -> bool:
        if h.m != g.m:
            return False
        dz = h.z - g.z
        if step == 0:
            return h.z == g.z and _cyclic_reachable(g, h, a)
        if dz % step:
            return False
        i = dz // a.z
        return compose(g, power(a, i)) == h

    return y.restrict([h for h in y if on_orbit(h)])


def _cyclic_reachable(g, h, a) -> bool:
    for i in range(g.m):
        if compose(g, power(a, i)) == h:
            return True
    return False


def translate_containment(T: WeightedTranslation, y: SparseVector, m: int, N: int,
                          Lambda: float) -> bool:
    """``{n : ||T^n T_{a^m} y|| > Lambda M^{2|m|}}`` lies inside ``{n : ||T^n y|| > Lambda}``.

    Checked for ``|m| < n <= N``.
    """
    ok, M = invertibility_check(T.w)
    if not ok:
        raise PreconditionError('translate bounds need an invertible operator')
    ys = T.translate(y, m)
    s, t = T.orbit_norm_series(y, N), T.orbit_norm_series(ys, N)
    scaled = math.log(Lambda) + 2 * abs(m) * math.log(float(M))
    lL = math.log(Lambda)
    return all(s[n - 1].log_magnitude > lL
               for n in range(abs(m) + 1, N + 1) if t[n - 1].log_magnitude > scaled)


def mirror_operator(base: WeightSpec, p: float = 2) -> WeightedTranslation:
    """``T_{a,w}`` on Z x Z_2 with ``a = (-1, 0)`` and the mirror weight of ``base``."""
    G = GroupSpec.product(2)
    return WeightedTranslation(G, G.element(-1, 0), MirrorProduct(base), p)


def mirror_two_component_check(base: WeightSpec, N: int, gs: Iterable[int] = (0,),
                               p: float = 2, delta: float = 0.1, Lambda: float = 1e3,
                               theta: float = 0.1, tol: float = 1e-10) -> dict:
    """Orbit norms on the two copies of Z are reciprocal for every sampled g and n <= N."""
    ok, _ = invertibility_check(base)
    if not ok:
        raise PreconditionError('mirror example needs an invertible base weight')
    T = mirror_operator(base, p)
    G = T.group
    rows, worst = [], 0.0
    for g in gs:
        s0 = T.orbit_norm_series(chi(G.element(g, 0)), N)
        s1 = T.orbit_norm_series(chi(G.element(g, 1)), N)
        err = max(abs(math.expm1(u.log_magnitude + v.log_magnitude)) for u, v in zip(s0, s1))
        worst = max(worst, err)
        rows.append({'g': g, 'max_abs_product_error': err})
    g0 = next(iter(gs), 0)
    x0, x1 = chi(G.element(g0, 0)), chi(G.element(g0, 1))
    mixed = T.orbit_norm_series(x0 + x1, N)
    s0, s1 = T.orbit_norm_series(x0, N), T.orbit_norm_series(x1, N)
    mixed_ok = all(m.log_magnitude >= max(a.log_magnitude, b.log_magnitude) - 1e-12
                   for m, a, b in zip(mixed, s0, s1))
    ev0 = irregularity_evidence(T, x0, N, delta, Lambda, theta)
    ev1 = irregularity_evidence(T, x1, N, delta, Lambda, theta)
    return {'N': N, 'p': p, 'tolerance': tol, 'samples': rows, 'max_error': worst,
            'reciprocal': worst <= tol, 'mixed_dominates_components': mixed_ok,
            'component_0': ev0.to_json(), 'component_1': ev1.to_json()}
