import itertools

import pytest

from unicrit.errors import FieldMismatchError, LimitExceededError, ParseError
from unicrit.field import (
    FieldSpec,
    default_modulus,
    elem_from_json,
    elem_to_json,
    enumerate_field,
    format_elem,
    format_field_spec,
    frobenius,
    inverse_frobenius,
    parse_field_spec,
)


def naive_mul(spec, x, y):
    """Schoolbook product of coefficient vectors reduced by the monic modulus."""
    p, k, mod = spec.p, spec.k, spec.modulus
    prod = [0] * (2 * k - 1)
    for i, a in enumerate(x):
        for j, b in enumerate(y):
            prod[i + j] = (prod[i + j] + a * b) % p
    for i in range(len(prod) - 1, k - 1, -1):
        c = prod[i]
        if c:
            for j in range(k + 1):
                prod[i - k + j] = (prod[i - k + j] - c * mod[j]) % p
    return tuple(prod[:k])


def test_prime_field_examples(F2, F3):
    assert F2(1) + F2(1) == F2(0)
    assert F3(2) * F3(2) == F3(1)


def test_f4_generator_squared(F4):
    u = F4.gen
    assert u * u == u + 1
    assert frobenius(u, 1) == u + 1


def test_default_moduli():
    assert default_modulus(2, 2) == (1, 1, 1)
    assert default_modulus(3, 2) == (1, 0, 1)
    assert default_modulus(2, 3) == (1, 1, 0, 1)


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        FieldSpec(2, 2, (1, 0, 1))  # (u+1)^2
    with pytest.raises(ValueError):
        FieldSpec(4)


@pytest.mark.parametrize("p,k", [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2), (5, 1), (2, 6)])
def test_arithmetic_against_schoolbook(p, k):
    spec = FieldSpec(p, k)
    elems = enumerate_field(spec)
    for x, y in itertools.product(elems, repeat=2):
        assert (x * y).coeffs == naive_mul(spec, x.coeffs, y.coeffs)
        assert (x + y).coeffs == tuple((a + b) % p for a, b in zip(x.coeffs, y.coeffs))
        assert x - y + y == x


@pytest.mark.parametrize("p,k", [(2, 1), (2, 2), (2, 3), (3, 2), (2, 6), (7, 1)])
def test_inverses_exhaustive(p, k):
    spec = FieldSpec(p, k)
    for x in enumerate_field(spec)[1:]:
        assert x * x.inverse() == spec.one
        assert spec.one / x == x.inverse()


def test_division_by_zero(F4):
    with pytest.raises(ZeroDivisionError):
        F4.one / F4.zero


def test_mismatched_fields(F2, F3):
    with pytest.raises(FieldMismatchError):
        F2(1) + F3(1)


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (3, 2)])
def test_frobenius_is_ring_endomorphism(p, k):
    spec = FieldSpec(p, k)
    elems = enumerate_field(spec)
    for x, y in itertools.product(elems, repeat=2):
        assert frobenius(x + y) == frobenius(x) + frobenius(y)
        assert frobenius(x * y) == frobenius(x) * frobenius(y)


def test_frobenius_fixes_one_and_inverts_on_f8():
    spec = FieldSpec(2, 3)
    for s in range(5):
        assert frobenius(spec.one, s) == spec.one
    for x in enumerate_field(spec):
        for s in range(4):
            assert frobenius(inverse_frobenius(x, s), s) == x
            assert inverse_frobenius(frobenius(x, s), s) == x


def test_enumeration(F2, F3, F4):
    assert [x.code for x in enumerate_field(F2)] == [0, 1]
    assert [x.code for x in enumerate_field(F3)] == [0, 1, 2]
    e4 = enumerate_field(F4)
    assert len(e4) == 4 and not e4[0] and len(set(e4)) == 4
    e = enumerate_field(FieldSpec(3, 3))
    assert len(set(e)) == 27


def test_enumeration_limit(F9, monkeypatch):
    with pytest.raises(LimitExceededError):
        enumerate_field(F9, limit=8)
    monkeypatch.setenv("UNICRIT_LIMIT", "4")
    with pytest.raises(LimitExceededError):
        enumerate_field(F9)


def test_field_spec_text_round_trip():
    spec = parse_field_spec("p=2,k=2,mod=1,1,1")
    assert spec == FieldSpec(2, 2)
    assert parse_field_spec(format_field_spec(spec)) == spec
    assert parse_field_spec("p=3") == FieldSpec(3)
    for bad in ["q=2", "p=2,k=x", "p=4", "p=2,k=2,mod=1,0,1"]:
        with pytest.raises(ParseError):
            parse_field_spec(bad)


def test_element_json_and_text(F4, F3):
    u = F4.gen
    assert elem_to_json(u + 1) == [1, 1]
    assert elem_from_json(F4, [1, 1]) == u + 1
    assert format_elem(u + 1) == "u + 1"
    assert format_elem(F3(2)) == "2"
    assert F3(-1) == F3(2)
