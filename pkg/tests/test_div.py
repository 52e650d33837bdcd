import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wtchaos.dccw import build_synthesis_plan, condition_ii_diagnostic, synthesize_vector
from wtchaos.density import IndexSet
from wtchaos.div import (cone_combine, cone_dominance, equivalence_member, irregularity_evidence,
                         mirror_operator, mirror_two_component_check, modulus_check,
                         restrict_to_orbit, split_vector, translate_containment)
from wtchaos.errors import DomainError, PreconditionError
from wtchaos.group import GroupElement, GroupSpec
from wtchaos.operator import bilateral_shift
from wtchaos.vector import SparseVector, chi
from wtchaos.weights import Constant, CubicRuns


def cubic_vector(N=20, B=None):
    T = bilateral_shift(CubicRuns())
    B = B or IndexSet.full(N)
    rep = condition_ii_diagnostic(T, N, (0, 9000), B)
    return T, synthesize_vector(build_synthesis_plan(T, B, rep.g_map(), N)).y


def test_irregularity_constant_one():
    T = bilateral_shift(Constant(1))
    ev = irregularity_evidence(T, chi(0, 1), 50, 0.1, 10.0)
    assert len(ev.near_zero) == 0 and len(ev.unbounded) == 0


def test_irregularity_constant_two():
    T = bilateral_shift(Constant(2))
    ev = irregularity_evidence(T, chi(0), 100, 0.1, 1e3)
    assert len(ev.near_zero) == 0
    assert ev.unbounded.members == tuple(range(10, 101))
    assert ev.B_est.upper_est >= 0.9


def test_irregularity_cubic_synthesized():
    T, y = cubic_vector()
    ev = irregularity_evidence(T, y, 200, 1e3, 1e3)
    assert ev.max_norm.log_magnitude >= 9.5 * math.log(2)
    assert ev.A_est.upper_est >= 0.8
    assert set(ev.near_zero.members).isdisjoint(ev.unbounded.members)
    with pytest.raises(DomainError):
        irregularity_evidence(T, SparseVector(), 10, 0.1, 1.0)


def test_modulus_check_examples():
    T = bilateral_shift(CubicRuns())
    rng = random.Random(2)
    y = SparseVector({rng.randint(-20, 100): cmath.exp(1j * rng.uniform(0, 6.3))
                      for _ in range(10)})
    assert modulus_check(T, y, 60)
    assert modulus_check(T, chi(0) - chi(1), 30)
    with pytest.raises(DomainError):
        modulus_check(T, SparseVector(), 5)


def test_cone_combine_examples():
    y = SparseVector({0: -2, 3: 1j})
    assert cone_combine([y], [1]) == abs(y)
    assert cone_combine([chi(0), chi(1)], [1, 2]) == chi(0) + chi(1) * 2
    with pytest.raises(DomainError):
        cone_combine([chi(0)], [0])
    with pytest.raises(DomainError):
        cone_combine([chi(0)], [-1])


def test_cone_two_synthesized_vectors():
    T, y1 = cubic_vector()
    _, y2 = cubic_vector(B=IndexSet(20, range(2, 21, 2)))
    dom = cone_dominance(T, [y1, y2], [1.0, 0.5], 200)
    assert dom == {0: True, 1: True}


def test_equivalence_examples():
    w = equivalence_member(chi(0) + chi(1), chi(0) * 2 + chi(1) * Fraction(1, 2))
    assert (w.c1, w.c2) == (Fraction(1, 2), 2)
    assert equivalence_member(chi(0), chi(1)) is None
    y = SparseVector({0: 1.5, 4: -2.0})
    z = SparseVector({g: v * cmath.exp(0.7j) for g, v in y.items()})
    w = equivalence_member(y, z)
    assert w.c1 == pytest.approx(1) and w.c2 == pytest.approx(1)


@given(st.dictionaries(st.integers(-10, 10), st.fractions(min_value=Fraction(1, 9), max_value=9),
                       min_size=1, max_size=6),
       st.lists(st.fractions(min_value=Fraction(1, 9), max_value=9), min_size=6, max_size=6))
def test_equivalence_symmetry(entries, scales):
    y = SparseVector(entries)
    z = SparseVector({g: v * s for (g, v), s in zip(y.items(), scales)})
    w, wr = equivalence_member(y, z), equivalence_member(z, y)
    assert wr == w.inverted()
    for g in y:
        assert w.c1 * abs(z[g]) <= abs(y[g]) <= w.c2 * abs(z[g])


def test_split_examples():
    y1, y2 = split_vector(chi(0) + chi(1), [0])
    assert y1 == chi(0) * Fraction(1, 3) + chi(1) * Fraction(2, 3)
    assert y2 == chi(0) * Fraction(2, 3) + chi(1) * Fraction(1, 3)
    y = chi(0, 1) * 3
    y1, y2 = split_vector(y, [1])
    assert y1 == chi(0) * 2 + chi(1) and y2 == chi(0) + chi(1) * 2 and y1 + y2 == y
    with pytest.raises(PreconditionError):
        split_vector(y, [0, 1])
    with pytest.raises(PreconditionError):
        split_vector(y, [])
    with pytest.raises(PreconditionError):
        split_vector(chi(0) - chi(1), [0])


@settings(max_examples=50)
@given(st.dictionaries(st.integers(-20, 20), st.fractions(min_value=Fraction(1, 50), max_value=50),
                       min_size=2, max_size=8),
       st.data())
def test_split_sandwich(entries, data):
    y = SparseVector(entries)
    pts = sorted(y.support)
    K = data.draw(st.sets(st.sampled_from(pts), min_size=1, max_size=len(pts) - 1))
    y1, y2 = split_vector(y, K)
    assert y1 + y2 == y
    for g in pts:
        assert y[g] / 3 <= y1[g] <= y[g] and y[g] / 3 <= y2[g] <= y[g]
    # linear independence: the ratio y1/y2 is not constant on the support
    assert len({y1[g] / y2[g] for g in pts}) == 2


def test_split_outputs_inherit_evidence():
    T, y = cubic_vector()
    y = abs(y)
    pts = sorted(y.support)
    y1, y2 = split_vector(y, pts[:5])
    ev = irregularity_evidence(T, y, 200, 1e3, 50.0)
    for yi in (y1, y2):
        ei = irregularity_evidence(T, yi, 200, 1e3, 50.0 / 3)
        assert ev.unbounded.issubset(ei.unbounded)
        assert ev.near_zero.issubset(ei.near_zero)


def test_restrict_to_orbit():
    G = GroupSpec.product(2)
    y = chi((0, 0), (3, 0), (1, 1), group_modulus=2)
    r = restrict_to_orbit(y, G.element(0, 0), G.element(-1, 0))
    assert r == chi((0, 0), (3, 0), group_modulus=2)
    r = restrict_to_orbit(chi(0, 1, 2, 3), GroupElement(0), GroupElement(2))
    assert r == chi(0, 2)


def test_translate_containment():
    rng = random.Random(5)
    T = bilateral_shift(CubicRuns())
    for _ in range(10):
        y = SparseVector({rng.randint(0, 400): rng.uniform(0.1, 2) for _ in range(4)})
        for m in range(-5, 6):
            assert translate_containment(T, y, m, 50, 1.5)


def test_mirror_examples():
    T = mirror_operator(CubicRuns())
    G = T.group
    n3 = [T.orbit_norm(chi(G.element(0, c)), 3).value for c in (0, 1)]
    assert n3[0] == pytest.approx(1 / 8) and n3[1] == pytest.approx(8)
    T = mirror_operator(Constant(2))
    n5 = [T.orbit_norm(chi(G.element(0, c)), 5).value for c in (0, 1)]
    assert n5 == [32.0, 1 / 32]
    rep = mirror_two_component_check(CubicRuns(), 60, range(-10, 40, 5))
    assert rep['reciprocal'] and rep['mixed_dominates_components']
    assert 'component_0' in rep and 'component_1' in rep


def test_mirror_rejects_non_invertible(monkeypatch):
    # every constructible weight is invertible, so force the check to fail
    import wtchaos.div as div
    monkeypatch.setattr(div, 'invertibility_check', lambda w: (False, None))
    with pytest.raises(PreconditionError):
        mirror_two_component_check(Constant(2), 5)
