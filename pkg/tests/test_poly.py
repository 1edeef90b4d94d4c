import itertools

import pytest

from conftest import P
from unicrit.errors import ParseError
from unicrit.field import FieldSpec, enumerate_field
from unicrit.poly import (
    NEG_INF,
    Poly,
    derivative,
    gcd,
    inflate,
    insep_decompose,
    parse_poly,
    poly_divmod,
    poly_from_json,
    poly_to_json,
    resultant_dd,
)


def all_polys(spec, max_deg):
    for n in range(max_deg + 2):
        for codes in itertools.product(range(spec.q), repeat=n):
            if n == 0 or codes[-1]:
                yield Poly.from_codes(spec, codes)


def test_zero_degree_is_neg_inf(F2):
    z = Poly(F2, [])
    assert z.degree is NEG_INF
    assert z.degree < 0 and z.degree < -(10**9)
    assert Poly(F2, [0, 0]).is_zero()


def test_divmod_examples(F2):
    q, r = poly_divmod(P(F2, "z^3+z+1"), P(F2, "z^2+1"))
    assert q == P(F2, "z") and r == P(F2, "1")
    a = P(F2, "z^3+z")
    assert poly_divmod(a, a) == (P(F2, "1"), Poly(F2, []))
    assert poly_divmod(P(F2, "z"), a) == (Poly(F2, []), P(F2, "z"))
    with pytest.raises(ZeroDivisionError):
        poly_divmod(a, Poly(F2, []))


def test_divmod_round_trip_exhaustive(F2):
    polys = list(all_polys(F2, 4))
    for a in polys:
        for b in polys:
            if b.is_zero():
                continue
            q, r = poly_divmod(a, b)
            assert b * q + r == a
            assert r.degree < b.degree


def test_gcd_examples(F2, F3):
    assert gcd(P(F2, "z^2+z"), P(F2, "z")) == P(F2, "z")
    assert gcd(P(F3, "2*z+1"), Poly(F3, [])) == P(F3, "z+2")
    assert gcd(P(F2, "z^2+1"), P(F2, "z+1")) == P(F2, "z+1")
    with pytest.raises(ValueError):
        gcd(Poly(F2, []), Poly(F2, []))


def test_derivative_examples(F2, F3):
    assert derivative(P(F2, "z^2")).is_zero()
    assert derivative(P(F3, "z^3")).is_zero()
    assert derivative(P(F2, "z^3")) == P(F2, "z^2")
    assert derivative(P(F2, "z^4+z^2")).is_zero()


def test_insep_decompose_examples(F2, F3):
    a1, a2 = insep_decompose(P(F2, "z^3+z^2+1"))
    assert a1 == parse_poly("w+1", F2, "w") and a2 == P(F2, "z^3")
    a1, a2 = insep_decompose(P(F3, "z^3"))
    assert a1 == P(F3, "z") and a2.is_zero()
    a = P(F3, "z^4+2*z^2+z")
    a1, a2 = insep_decompose(a)
    assert a1.is_zero() and a2 == a


def test_inflate_examples(F2, F3):
    assert inflate(P(F2, "z+1"), 1) == P(F2, "z^2+1")
    a = P(F3, "z^2+z")
    assert inflate(a, 0) == a
    assert inflate(P(F3, "z^2"), 1) == P(F3, "z^6")
    assert inflate(P(F2, "z+1"), 2) == P(F2, "z^4+1")


@pytest.mark.parametrize("spec", [FieldSpec(2), FieldSpec(3)])
def test_kernel_of_derivative_exhaustive(spec):
    for a in all_polys(spec, 4):
        a1, a2 = insep_decompose(a)
        assert derivative(a).is_zero() == a2.is_zero()
        assert inflate(a1, 1) + a2 == a


def test_resultant_examples(F2):
    f = P(F2, "z^2+z+1")
    assert not resultant_dd(f, f, 2)
    assert resultant_dd(P(F2, "z^2"), P(F2, "1"), 2) == F2.one
    assert not resultant_dd(P(F2, "z"), P(F2, "1"), 2)
    with pytest.raises(ValueError):
        resultant_dd(P(F2, "z^3"), P(F2, "1"), 2)


@pytest.mark.parametrize("spec,d", [(FieldSpec(2), 1), (FieldSpec(2), 2), (FieldSpec(3), 1), (FieldSpec(3), 2), (FieldSpec(2, 2), 1)])
def test_resultant_vanishing_criterion(spec, d):
    polys = list(all_polys(spec, d))
    for f in polys:
        for g in polys:
            if f.is_zero() and g.is_zero():
                continue
            common = gcd(f, g).degree > 0 or (f.degree < d and g.degree < d)
            assert (not resultant_dd(f, g, d)) == common


def test_evaluation(F2, F4):
    assert not P(F2, "z^2+1")(F2.one)
    assert not Poly(F4, [])(F4.gen)
    u = F4.gen
    f = Poly(F4, [1, 1, 0, 1])
    assert f(u) == u


def test_parse_and_json(F3, F4):
    a = parse_poly("2*z^3 - z + 1", F3)
    assert a.codes == (1, 2, 0, 2)
    assert poly_from_json(F3, poly_to_json(a)) == a
    assert parse_poly("z*z + z^0", F3) == P(F3, "z^2+1")
    b = Poly(F4, [F4.gen, 0, 1])
    assert poly_from_json(F4, poly_to_json(b)) == b
    for bad in ["", "z^", "2*y", "z^-1", "3z"]:
        with pytest.raises(ParseError):
            parse_poly(bad, F3)
    with pytest.raises(ParseError):
        parse_poly("z", F4)


def test_field_elements_listed_in_code_order(F9):
    codes = [x.code for x in enumerate_field(F9)]
    assert codes == list(range(9))
