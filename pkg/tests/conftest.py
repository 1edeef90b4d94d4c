from __future__ import annotations

import pytest

from unicrit.field import FieldSpec
from unicrit.moduli import projective_points
from unicrit.poly import Poly, resultant_dd
from unicrit.ratfunc import make_ratfunc


@pytest.fixture
def F2():
    return FieldSpec(2)


@pytest.fixture
def F3():
    return FieldSpec(3)


@pytest.fixture
def F4():
    return FieldSpec(2, 2)


@pytest.fixture
def F9():
    return FieldSpec(3, 2)


def raw_pairs(spec, d):
    """Every point of P^(2d+1)(F_q) as a raw (f, g) pair, first nonzero coordinate 1."""
    for pt in projective_points(spec, 2 * d + 2):
        f = Poly.from_codes(spec, pt[: d + 1][::-1])
        g = Poly.from_codes(spec, pt[d + 1 :][::-1])
        yield f, g


def rat_d(spec, d):
    """All maps of exact degree d: points of P^(2d+1) off the resultant locus."""
    for f, g in raw_pairs(spec, d):
        if resultant_dd(f, g, d):
            phi = make_ratfunc(f, g)
            assert phi.d == d
            yield phi


def P(spec, text):
    from unicrit.poly import parse_poly

    return parse_poly(text, spec)


def R(spec, num, den="1"):
    return make_ratfunc(P(spec, num), P(spec, den))


def same_point(x, y):
    """Equality on P^1 and None, without comparing field elements to markers."""
    from unicrit.ratfunc import INFINITY

    if x is None or y is None or x is INFINITY or y is INFINITY:
        return x is y
    return x == y
