"""Tests for src/field.py."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import DivisionByZero, FieldMismatch, InputError, NotPrime, Reducible, ZeroElement
from src.field import (
    discrete_log,
    ff_add,
    ff_inv,
    ff_mul,
    ff_neg,
    ff_pow,
    field_create,
    field_for_order,
    field_from_json,
    field_to_json,
    frobenius_fixed,
    values_from_json,
    values_to_json,
)

FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 3), (3, 2), (5, 2)]


@pytest.fixture(params=FIELDS, ids=lambda pm: f"GF({pm[0]}^{pm[1]})")
def spec(request):
    return field_create(*request.param)


def elements(spec):
    return st.integers(0, spec.order - 1).map(spec.element)


@st.composite
def field_and_triple(draw):
    p, m = draw(st.sampled_from(FIELDS))
    spec = field_create(p, m)
    a, b, c = (draw(elements(spec)) for _ in range(3))
    return spec, a, b, c


@settings(max_examples=300, derandomize=True, deadline=None)
@given(field_and_triple())
def test_field_axioms(data):
    spec, a, b, c = data
    zero, one = spec.element(0), spec.element(1)
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + zero == a
    assert a * one == a
    assert a + (-a) == zero
    if not a.is_zero:
        assert a * ff_inv(a) == one


def test_prime_field_arithmetic():
    gf5 = field_create(5)
    assert ff_add(gf5.element(3), gf5.element(4)).value == 2
    assert ff_mul(gf5.element(3), gf5.element(4)).value == 2
    assert ff_neg(gf5.element(2)).value == 3
    assert ff_inv(gf5.element(2)).value == 3
    assert ff_pow(gf5.element(2), 4).value == 1


def test_extension_uses_given_modulus():
    gf = field_create(5, 3, modulus=[1, 0, 1, 1])
    assert gf.modulus == (1, 0, 1, 1)
    assert gf.order == 125
    x = gf.from_coeffs([0, 1, 0])
    # x^3 = -x^2 - 1 = 4x^2 + 4
    assert (x**3).coeffs == (4, 0, 4)


def test_default_modulus_is_smallest_irreducible():
    gf = field_create(2, 3)
    assert gf.modulus == (1, 1, 0, 1)  # x^3 + x + 1


def test_primitive_element_has_full_order(spec):
    alpha = spec.primitive_element
    powers = {ff_pow(alpha, e).value for e in range(spec.order - 1)}
    assert len(powers) == spec.order - 1
    assert 0 not in powers


def test_discrete_log_inverts_power(spec):
    alpha = spec.primitive_element
    for e in range(spec.order - 1):
        assert discrete_log(ff_pow(alpha, e), alpha) == e


def test_frobenius_fixed_is_prime_subfield(spec):
    fixed = frobenius_fixed(spec)
    assert len(fixed) == spec.p
    assert {el.value for el in fixed} == set(range(spec.p))


def test_not_prime():
    with pytest.raises(NotPrime):
        field_create(6)
    with pytest.raises(NotPrime):
        field_for_order(12)


def test_reducible_modulus():
    with pytest.raises(Reducible):
        field_create(2, 2, modulus=[1, 0, 1])  # x^2 + 1 = (x + 1)^2


def test_non_monic_modulus():
    with pytest.raises(InputError):
        field_create(3, 2, modulus=[1, 0, 2])


def test_non_primitive_override():
    with pytest.raises(InputError):
        field_create(5, primitive=4)  # order 2


def test_zero_has_no_inverse_or_log():
    gf7 = field_create(7)
    with pytest.raises(DivisionByZero):
        ff_inv(gf7.element(0))
    with pytest.raises(ZeroDivisionError):
        gf7.element(1) / gf7.element(0)
    with pytest.raises(ZeroElement):
        discrete_log(gf7.element(0), gf7.primitive_element)


def test_mixed_fields():
    with pytest.raises(FieldMismatch):
        ff_add(field_create(3).element(1), field_create(5).element(1))


def test_element_out_of_range():
    with pytest.raises(InputError):
        field_create(3).element(3)
    with pytest.raises(InputError):
        field_create(3, 2).from_coeffs([1, 3])


def test_field_for_order():
    spec = field_for_order(9)
    assert (spec.p, spec.m) == (3, 2)


def test_field_descriptor_restores_same_field():
    spec = field_create(5, 3, modulus=[1, 0, 1, 1])
    data = field_to_json(spec)
    assert data["modulus"] == [1, 0, 1, 1]
    assert field_from_json(data) == spec


def test_extension_values_serialise_as_coefficients():
    spec = field_create(3, 2)
    encoded = values_to_json(spec, [[1, 3, 8]])
    assert encoded == [[[1, 0], [0, 1], [2, 2]]]
    assert values_from_json(spec, encoded).tolist() == [[1, 3, 8]]
