import pytest
from hypothesis import given, strategies as st

from wtchaos.errors import GroupMismatchError, NumericRangeError
from wtchaos.group import (INT64_MAX, GroupElement, GroupSpec, compose, inverse, measure,
                           power, translate_set)

Z = GroupSpec.integers()
Z2 = GroupSpec.product(2)


def test_compose_on_integers():
    assert compose(Z.element(3), Z.element(-5)) == Z.element(-2)
    assert compose(Z.element(0), Z.element(0)) == Z.identity()


def test_compose_mod_two():
    assert compose(Z2.element(1, 1), Z2.element(2, 1)) == Z2.element(3, 0)


def test_compose_mismatch():
    with pytest.raises(GroupMismatchError):
        compose(Z.element(1), Z2.element(1, 0))


def test_compose_overflow():
    with pytest.raises(NumericRangeError):
        compose(Z.element(INT64_MAX), Z.element(1))


def test_power():
    assert power(Z.element(-1), 3) == Z.element(-3)
    assert power(Z2.element(-1, 0), 4) == Z2.element(-4, 0)
    assert power(Z.element(-1), 0) == Z.identity()
    assert power(Z2.element(1, 1), -3) == Z2.element(-3, 1)


def test_power_overflow():
    with pytest.raises(NumericRangeError):
        power(Z.element(2), 2 ** 62)


def test_inverse_and_measure():
    assert inverse(Z2.element(5, 1)) == Z2.element(-5, 1)
    assert measure([Z.element(0), Z.element(1), Z.element(2)]) == 3
    assert measure([]) == 0
    assert measure([Z.element(1), Z.element(1)]) == 1


def test_translate_set():
    S = translate_set([Z.element(0), Z.element(4)], Z.element(-1))
    assert S == {Z.element(-1), Z.element(3)}


def test_element_validation():
    with pytest.raises(ValueError):
        GroupElement(1, 2, 2)
    with pytest.raises(ValueError):
        GroupElement(1, 0)
    with pytest.raises(ValueError):
        GroupSpec.product(1)
    with pytest.raises(GroupMismatchError):
        Z.element(1, 0)
    assert Z2.element(3, 5) == Z2.element(3, 1)


def test_to_json():
    assert Z.element(4).to_json() == 4
    assert Z2.element(4, 1).to_json() == [4, 1]
    assert Z2.name == 'ZxZ2' and Z.name == 'Z'


coords = st.integers(-10 ** 6, 10 ** 6)


@given(coords, st.integers(0, 2), coords, st.integers(0, 2), coords, st.integers(0, 2))
def test_group_axioms(z1, c1, z2, c2, z3, c3):
    G = GroupSpec.product(3)
    g, h, k = G.element(z1, c1), G.element(z2, c2), G.element(z3, c3)
    assert compose(compose(g, h), k) == compose(g, compose(h, k))
    assert compose(g, inverse(g)) == G.identity()
    assert compose(g, h) == compose(h, g)


@given(coords, st.integers(-50, 50), st.integers(-50, 50))
def test_power_is_a_homomorphism(z, m, n):
    a = Z.element(z)
    assert compose(power(a, m), power(a, n)) == power(a, m + n)
