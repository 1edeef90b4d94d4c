import random

import pytest

from conftest import P, R, rat_d, same_point
from unicrit.field import FieldSpec, enumerate_field
from unicrit.poly import Poly, resultant_dd
from unicrit.ratfunc import (
    INFINITY,
    MobiusMap,
    conjugate,
    enumerate_pgl2,
    identity_map,
    inflate_map,
    is_inseparable,
    make_ratfunc,
    mobius_post,
    mobius_pre,
    proj_coords,
    ratfunc_from_json,
    ratfunc_to_json,
    wronskian,
)


def codes(seq):
    return tuple(x.code for x in seq)


def test_make_ratfunc_examples(F2):
    phi = R(F2, "z^2+z", "z+1")
    assert phi.num == P(F2, "z") and phi.den == P(F2, "1") and phi.d == 1
    assert R(F2, "z") == identity_map(F2)
    phi = R(F2, "z^2+1", "z")
    assert phi.d == 2 and phi.num == P(F2, "z^2+1")
    with pytest.raises(ValueError):
        make_ratfunc(Poly(F2, []), Poly(F2, []))


def test_canonical_scaling(F3):
    phi = make_ratfunc(P(F3, "2*z^2"), P(F3, "2*z+2"))
    assert phi.den.leading == F3.one
    const_inf = make_ratfunc(P(F3, "2"), Poly(F3, []))
    assert const_inf.num == P(F3, "1") and const_inf.d == 0


def test_proj_coords_examples(F2):
    assert codes(proj_coords(R(F2, "z^2"))) == (1, 0, 0, 0, 0, 1)
    assert codes(proj_coords(R(F2, "z^2+1", "z"))) == (1, 0, 1, 0, 1, 0)
    assert codes(proj_coords(identity_map(F2))) == (1, 0, 0, 1)


def test_wronskian_examples(F2, F3):
    for spec in (F2, F3, FieldSpec(5)):
        phi = make_ratfunc(Poly.monomial(spec, spec.p) - Poly.z(spec), Poly.constant(spec, 1))
        assert wronskian(phi) == Poly.constant(spec, -1)
    assert wronskian(R(F2, "z^2")).is_zero()
    assert wronskian(R(F2, "z^2+1", "z")) == P(F2, "z^2+1")


def test_is_inseparable_examples(F2):
    ok, psi = is_inseparable(R(F2, "z^2"))
    assert ok and psi == R(F2, "z")
    assert is_inseparable(R(F2, "z^2+z")) == (False, None)
    ok, psi = is_inseparable(R(F2, "z^4+1", "z^2"))
    assert ok and psi == R(F2, "z^2+1", "z")
    assert inflate_map(psi) == R(F2, "z^4+1", "z^2")


@pytest.mark.parametrize("d", [1, 2, 3])
def test_wronskian_vanishes_iff_inseparable(F2, d):
    for phi in rat_d(F2, d):
        assert wronskian(phi).is_zero() == is_inseparable(phi)[0]


@pytest.mark.parametrize("spec", [FieldSpec(2), FieldSpec(3)])
@pytest.mark.parametrize("d", [1, 2])
def test_reciprocal_has_same_finite_critical_points(spec, d):
    elems = enumerate_field(spec)
    for phi in rat_d(spec, d):
        f, g = phi.num, phi.den
        assert g.derivative() * f - g * f.derivative() == -wronskian(phi)
        inv = make_ratfunc(g, f)
        w, w_inv = wronskian(phi), wronskian(inv)
        assert {x for x in elems if not w(x)} == {x for x in elems if not w_inv(x)}


def test_mobius_examples(F2):
    phi = R(F2, "z^2+1", "z")
    assert conjugate(MobiusMap.identity(F2), phi) == phi
    shift = MobiusMap.from_ints(F2, 1, 1, 0, 1)
    assert mobius_pre(R(F2, "z^2"), shift) == R(F2, "z^2+1")
    assert mobius_pre(mobius_pre(phi, shift), shift.inverse()) == phi


def test_through_points(F4):
    elems = enumerate_field(F4)
    pts = [INFINITY] + elems
    for a in pts:
        for b in pts:
            for c in pts:
                if len({str(x) for x in (a, b, c)}) < 3:
                    continue
                sigma = MobiusMap.through_points(a, b, c, F4)
                assert same_point(sigma(INFINITY), a)
                assert same_point(sigma(F4.zero), b)
                assert same_point(sigma(F4.one), c)


def test_pgl2_order(F2, F3):
    assert len(enumerate_pgl2(F2)) == 6
    assert len(enumerate_pgl2(F3)) == 24
    assert len(enumerate_pgl2(FieldSpec(2, 2))) == 60


@pytest.mark.parametrize("spec", [FieldSpec(2), FieldSpec(3), FieldSpec(2, 2), FieldSpec(5)])
def test_conjugation_preserves_degree(spec):
    rng = random.Random(7)
    group = enumerate_pgl2(spec)
    for _ in range(50):
        d = rng.randint(1, 4)
        while True:
            f = Poly.from_codes(spec, [rng.randrange(spec.q) for _ in range(d + 1)])
            g = Poly.from_codes(spec, [rng.randrange(spec.q) for _ in range(d + 1)])
            if resultant_dd(f, g, d):
                break
        phi = make_ratfunc(f, g)
        sigma = rng.choice(group)
        assert mobius_pre(phi, sigma).d == d
        assert mobius_post(sigma, phi).d == d
        psi = conjugate(sigma, phi)
        assert psi.d == d
        assert conjugate(sigma.inverse(), psi) == phi


@pytest.mark.parametrize("d", [1, 2, 3])
def test_constructed_maps_have_nonzero_resultant(F3, d):
    for phi in rat_d(F3, d):
        assert resultant_dd(phi.num, phi.den, d)


def test_evaluation_examples(F2):
    phi = R(F2, "z^2+1", "z")
    assert phi(INFINITY) is INFINITY
    assert phi(F2.zero) is INFINITY
    assert phi(F2.one) == F2.zero
    assert R(F2, "1", "z")(INFINITY) == F2.zero
    assert R(F2, "z+1", "z")(INFINITY) == F2.one


def test_json_round_trip(F4):
    u = F4.gen
    phi = make_ratfunc(Poly(F4, [u, 0, 1]), Poly(F4, [1, u]))
    assert ratfunc_from_json(F4, ratfunc_to_json(phi)) == phi
