import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import running_density_bruteforce
from wtchaos.density import (EVIDENCE_CHAOTIC_PAIR, INCONCLUSIVE, IndexSet, density_estimate,
                             distributional_function, pair_distances, pair_profile,
                             profile_from_distances, running_density, scrambled_pair_verdict)
from wtchaos.errors import DomainError
from wtchaos.operator import bilateral_shift
from wtchaos.vector import SparseVector, chi
from wtchaos.weights import Constant


def block_set(N):
    members, k = [], 0
    while 4 ** k <= N:
        members.extend(range(4 ** k, min(2 * 4 ** k, N + 1)))
        k += 1
    return IndexSet(N, members)


def test_index_set_validation():
    with pytest.raises(DomainError):
        IndexSet(5, [0])
    with pytest.raises(DomainError):
        IndexSet(5, [6])
    with pytest.raises(DomainError):
        IndexSet(0)
    A = IndexSet(10, [3, 1, 3, 2])
    assert A.members == (1, 2, 3) and 2 in A and 4 not in A
    assert A.to_json() == {'horizon': 10, 'members': [[1, 3]]}
    assert A.complement().members == tuple(range(4, 11))


def test_evens():
    est = density_estimate(IndexSet.from_predicate(10_000, lambda n: n % 2 == 0), 0.1)
    assert abs(est.upper_est - 0.5) <= 1e-3 and abs(est.lower_est - 0.5) <= 1e-3


def test_full_set_exact():
    est = density_estimate(IndexSet.full(500), 0.1)
    assert est.upper_est == 1.0 and est.lower_est == 1.0


def test_block_set():
    A = block_set(65536)
    est = density_estimate(A, 0.01)
    assert abs(est.upper_est - 2 / 3) <= 0.02
    assert abs(est.lower_est - 1 / 3) <= 0.02


def test_running_density_matches_bruteforce():
    A = block_set(5000)
    assert np.allclose(running_density(A), running_density_bruteforce(A.members, 5000),
                       rtol=0, atol=0)


def test_theta_validation():
    with pytest.raises(DomainError):
        density_estimate(IndexSet.full(10), 0.0)
    with pytest.raises(DomainError):
        density_estimate(IndexSet.full(10), 1.0)


def test_distributional_function_examples():
    assert distributional_function([0.0] * 20, 10, 1.0) == 9 / 10
    assert distributional_function(list(range(1, 10)), 5, 3) == 2 / 5
    dist = [2.0 ** j for j in range(1, 10)]
    assert distributional_function(dist, 6, 10) == 3 / 6
    with pytest.raises(DomainError):
        distributional_function(dist, 1, 1.0)
    with pytest.raises(DomainError):
        distributional_function([1.0], 5, 1.0)


def test_constant_two_pair_distances():
    T = bilateral_shift(Constant(2))
    d = pair_distances(T, chi(0), SparseVector(), 6)
    assert [v.value for v in d] == [2.0 ** j for j in range(1, 7)]


def test_pair_profile_identical():
    T = bilateral_shift(Constant(2))
    prof = pair_profile(T, chi(0), chi(0), 50, [0.1, 1.0, 10.0])
    for t in prof.taus:
        assert prof.F_star_est[t] == 49 / 50
    v = scrambled_pair_verdict(prof, 0.1, 10.0, 0.2, 0.2)
    assert v['verdict'] == INCONCLUSIVE


def test_pair_profile_isometry():
    T = bilateral_shift(Constant(1))
    prof = pair_profile(T, chi(0), chi(0) * 2, 30, [0.5, 1.0, 1.5])
    for n in range(2, 31):
        assert prof.value(n, 0.5) == 0 and prof.value(n, 1.0) == 0
        assert prof.value(n, 1.5) == (n - 1) / n


def test_constant_two_pair_inconclusive():
    T = bilateral_shift(Constant(2))
    prof = pair_profile(T, chi(0), SparseVector(), 200, [0.1, 1000.0])
    assert prof.F_lower_est[0.1] == 0.0
    v = scrambled_pair_verdict(prof, 0.1, 1000.0, 0.2, 0.2)
    assert v['verdict'] == INCONCLUSIVE and v['separation_evidence']
    assert not v['proximality_evidence']


def test_verdict_needs_grid_values():
    prof = profile_from_distances([1.0, 2.0, 3.0], [1.0])
    with pytest.raises(DomainError):
        scrambled_pair_verdict(prof, 0.5, 1.0, 0.2, 0.2)


def test_profile_synthetic_chaotic():
    dist = [1e-6 if (n // 50) % 2 else 1e6 for n in range(1, 401)]
    prof = profile_from_distances(dist, [0.1, 10.0], theta=0.1)
    v = scrambled_pair_verdict(prof, 0.1, 10.0, 0.5, 0.5)
    assert v['verdict'] == EVIDENCE_CHAOTIC_PAIR


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(0, 100), min_size=3, max_size=60),
       st.lists(st.floats(0.01, 120), min_size=1, max_size=5))
def test_profile_monotone_and_bounded(dist, taus):
    prof = profile_from_distances(dist, taus)
    F = prof.F
    n = np.arange(2, len(dist) + 1)
    assert np.all(F <= ((n - 1) / n)[:, None] + 1e-15)
    assert np.all(np.diff(F, axis=1) >= 0)
    for k, t in enumerate(prof.taus):
        for i in (0, len(n) - 1):
            ref = sum(1 for d in dist[:n[i] - 1] if d < t) / n[i]
            if not any(abs(math.log(d) - math.log(t)) < 1e-9 for d in dist[:n[i] - 1] if d > 0):
                assert F[i, k] == ref


@settings(max_examples=50, deadline=None)
@given(st.sets(st.integers(1, 300)), st.floats(0.05, 0.9))
def test_complement_duality(members, theta):
    A = IndexSet(300, members)
    up = density_estimate(A, theta).upper_est
    upc = density_estimate(A.complement(), theta).upper_est
    k = math.ceil(theta * 300)
    assert upc >= 1 - up - 2 / k


@settings(max_examples=50, deadline=None)
@given(st.sets(st.integers(1, 200)), st.sets(st.integers(1, 200)))
def test_disjoint_union_additive(a, b):
    b = b - a
    A, Bs = IndexSet(200, a), IndexSet(200, b)
    assert np.allclose(running_density(A.union(Bs)), running_density(A) + running_density(Bs))


@settings(max_examples=30, deadline=None)
@given(st.sets(st.integers(1, 400)), st.floats(0.05, 0.9))
def test_estimates_ordered(members, theta):
    est = density_estimate(IndexSet(400, members), theta)
    assert 0 <= est.lower_est <= est.upper_est <= 1
    ref = running_density_bruteforce(members, 400)[est.tail_from - 1:]
    assert est.upper_est == pytest.approx(max(ref)) and est.lower_est == pytest.approx(min(ref))


def test_random_periodic_sets():
    rng = random.Random(3)
    for _ in range(5):
        period = rng.randint(2, 9)
        residues = set(rng.sample(range(period), rng.randint(1, period)))
        A = IndexSet.from_predicate(20_000, lambda n: n % period in residues)
        est = density_estimate(A, 0.1)
        target = len(residues) / period
        assert abs(est.upper_est - target) <= 1e-3 and abs(est.lower_est - target) <= 1e-3
