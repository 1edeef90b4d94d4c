"""Normalized rational functions f/g, Moebius maps, and the Wronskian."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import FieldMismatchError, ParseError
from .field import FieldElem, FieldSpec, elem_from_json, elem_to_json, enumerate_field
from .poly import Poly, deg_plus, gcd, inflate, is_p_power_shape, poly_from_json, poly_to_json


class _Infinity:
    """The point at infinity of P^1."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __str__(self) -> str:
        return "infinity"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


def point_to_json(x):
    return "infinity" if x is INFINITY else elem_to_json(x)


def point_from_json(spec: FieldSpec, data):
    if data == "infinity" or data == "inf":
        return INFINITY
    return elem_from_json(spec, data)


def homogeneous(x, spec: FieldSpec) -> tuple[FieldElem, FieldElem]:
    """Homogeneous coordinates (s, t) with x = s/t."""
    if x is INFINITY:
        return spec.one, spec.zero
    return spec(x), spec.one


@dataclass(frozen=True)
class RatFunc:
    """A rational function num/den in lowest terms, scaled so den (or else num) is monic."""

    num: Poly
    den: Poly
    d: int

    @property
    def spec(self) -> FieldSpec:
        return self.num.spec

    def __call__(self, x):
        return ratfunc_eval(self, x)

    def __str__(self) -> str:
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"


def make_ratfunc(f: Poly, g: Poly) -> RatFunc:
    """Cancel common factors and apply the canonical scaling."""
    f._check(g)
    if f.is_zero() and g.is_zero():
        raise ValueError("0/0 is not a rational function")
    h = gcd(f, g)
    if h.degree > 0:
        f, g = f // h, g // h
    lead = g.leading if g else f.leading
    if lead != f.spec.one:
        inv = lead.inverse()
        f, g = f.scale(inv), g.scale(inv)
    return RatFunc(f, g, max(deg_plus(f.degree), deg_plus(g.degree)))


def identity_map(spec: FieldSpec) -> RatFunc:
    return RatFunc(Poly.z(spec), Poly.constant(spec, 1), 1)


def proj_coords(phi: RatFunc, d: int | None = None) -> tuple[FieldElem, ...]:
    """(a_d, ..., a_0, b_d, ..., b_0) under the canonical scaling."""
    d = phi.d if d is None else d
    return tuple(phi.num.coeff(i) for i in range(d, -1, -1)) + tuple(
        phi.den.coeff(i) for i in range(d, -1, -1)
    )


def pair_from_coords(spec: FieldSpec, coords) -> tuple[Poly, Poly]:
    """Split a length-(2d+2) coordinate sequence into the raw pair (f, g)."""
    coords = list(coords)
    if len(coords) % 2:
        raise ValueError("coordinate sequence must have even length")
    half = len(coords) // 2
    return Poly(spec, coords[:half][::-1]), Poly(spec, coords[half:][::-1])


def from_proj_coords(spec: FieldSpec, coords) -> RatFunc:
    return make_ratfunc(*pair_from_coords(spec, coords))


def wronskian(phi: RatFunc) -> Poly:
    """f'g - fg' of the coprime pair; its roots are the finite critical points."""
    f, g = phi.num, phi.den
    return f.derivative() * g - f * g.derivative()


def is_inseparable(phi: RatFunc) -> tuple[bool, RatFunc | None]:
    """Return (True, psi) with phi(z) = psi(z^p) when phi is inseparable, else (False, None)."""
    f, g = phi.num, phi.den
    if not (is_p_power_shape(f) and is_p_power_shape(g)):
        return False, None
    p = phi.spec.p
    f1 = Poly.from_codes(phi.spec, f.codes[::p])
    g1 = Poly.from_codes(phi.spec, g.codes[::p])
    return True, make_ratfunc(f1, g1)


def inflate_map(psi: RatFunc, s: int = 1) -> RatFunc:
    """psi(z^(p^s))."""
    return make_ratfunc(inflate(psi.num, s), inflate(psi.den, s))


@dataclass(frozen=True)
class MobiusMap:
    """z -> (alpha z + beta) / (gamma z + delta)."""

    alpha: FieldElem
    beta: FieldElem
    gamma: FieldElem
    delta: FieldElem

    def __post_init__(self):
        specs = {x.spec for x in (self.alpha, self.beta, self.gamma, self.delta)}
        if len(specs) != 1:
            raise FieldMismatchError("Moebius coefficients from different fields")
        if not self.det:
            raise ValueError("Moebius map must have nonzero determinant")

    @classmethod
    def from_ints(cls, spec: FieldSpec, alpha, beta, gamma, delta) -> MobiusMap:
        return cls(spec(alpha), spec(beta), spec(gamma), spec(delta))

    @classmethod
    def identity(cls, spec: FieldSpec) -> MobiusMap:
        return cls.from_ints(spec, 1, 0, 0, 1)

    @classmethod
    def translation(cls, c: FieldElem) -> MobiusMap:
        return cls(c.spec.one, c, c.spec.zero, c.spec.one)

    @classmethod
    def reciprocal(cls, spec: FieldSpec) -> MobiusMap:
        return cls.from_ints(spec, 0, 1, 1, 0)

    @classmethod
    def through_points(cls, x_inf, x_zero, x_one, spec: FieldSpec) -> MobiusMap:
        """The unique map sending (infinity, 0, 1) to (x_inf, x_zero, x_one)."""
        s1, t1 = homogeneous(x_inf, spec)
        s2, t2 = homogeneous(x_zero, spec)
        s3, t3 = homogeneous(x_one, spec)
        # solve lam*(s1,t1) + mu*(s2,t2) = (s3,t3)
        det = s1 * t2 - s2 * t1
        if not det:
            raise ValueError("points are not distinct")
        lam = (s3 * t2 - s2 * t3) / det
        mu = (s1 * t3 - s3 * t1) / det
        if not lam or not mu:
            raise ValueError("points are not distinct")
        return cls(lam * s1, mu * s2, lam * t1, mu * t2)

    @property
    def spec(self) -> FieldSpec:
        return self.alpha.spec

    @property
    def det(self) -> FieldElem:
        return self.alpha * self.delta - self.beta * self.gamma

    def inverse(self) -> MobiusMap:
        return MobiusMap(self.delta, -self.beta, -self.gamma, self.alpha)

    def compose(self, other: MobiusMap) -> MobiusMap:
        """self o other."""
        a, b, c, d = self.alpha, self.beta, self.gamma, self.delta
        e, f, g, h = other.alpha, other.beta, other.gamma, other.delta
        return MobiusMap(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def normalized(self) -> MobiusMap:
        """Representative in PGL_2 with first nonzero entry 1."""
        for x in (self.alpha, self.beta, self.gamma, self.delta):
            if x:
                inv = x.inverse()
                return MobiusMap(self.alpha * inv, self.beta * inv, self.gamma * inv, self.delta * inv)
        raise AssertionError("unreachable")  # pragma: no cover

    def __call__(self, x):
        spec = self.spec
        s, t = homogeneous(x, spec)
        num = self.alpha * s + self.beta * t
        den = self.gamma * s + self.delta * t
        return INFINITY if not den else num / den

    def as_ratfunc(self) -> RatFunc:
        spec = self.spec
        return make_ratfunc(Poly(spec, [self.beta, self.alpha]), Poly(spec, [self.delta, self.gamma]))


def enumerate_pgl2(spec: FieldSpec, limit: int | None = None) -> list[MobiusMap]:
    """All elements of PGL_2(F_q), each once (first nonzero entry scaled to 1)."""
    elems = enumerate_field(spec, limit)
    out = []
    for quad in itertools.product(elems, repeat=4):
        first = next((x for x in quad if x), None)
        if first is None or first != spec.one:
            continue
        a, b, c, d = quad
        if a * d - b * c:
            out.append(MobiusMap(a, b, c, d))
    return out


def mobius_pre(phi: RatFunc, sigma: MobiusMap) -> RatFunc:
    """phi o sigma."""
    spec = phi.spec
    d = phi.d
    P = Poly(spec, [sigma.beta, sigma.alpha])
    Q = Poly(spec, [sigma.delta, sigma.gamma])
    p_pows = [Poly.constant(spec, 1)]
    q_pows = [Poly.constant(spec, 1)]
    for _ in range(d):
        p_pows.append(p_pows[-1] * P)
        q_pows.append(q_pows[-1] * Q)
    num = Poly(spec, [])
    den = Poly(spec, [])
    for i in range(d + 1):
        term = p_pows[i] * q_pows[d - i]
        a_i, b_i = phi.num.coeff(i), phi.den.coeff(i)
        if a_i:
            num = num + term.scale(a_i)
        if b_i:
            den = den + term.scale(b_i)
    return make_ratfunc(num, den)


def mobius_post(sigma: MobiusMap, phi: RatFunc) -> RatFunc:
    """sigma o phi."""
    f, g = phi.num, phi.den
    return make_ratfunc(f.scale(sigma.alpha) + g.scale(sigma.beta), f.scale(sigma.gamma) + g.scale(sigma.delta))


def conjugate(sigma: MobiusMap, phi: RatFunc) -> RatFunc:
    """sigma^-1 o phi o sigma."""
    return mobius_post(sigma.inverse(), mobius_pre(phi, sigma))


def ratfunc_eval(phi: RatFunc, x):
    """Evaluate on P^1; poles and the point at infinity are handled projectively."""
    f, g = phi.num, phi.den
    if x is INFINITY:
        df, dg = f.degree, g.degree
        if g.is_zero() or df > dg:
            return INFINITY
        if df < dg:
            return phi.spec.zero
        return f.leading / g.leading
    x = phi.spec(x)
    gx = g(x)
    if not gx:
        return INFINITY
    return f(x) / gx


def ratfunc_to_json(phi: RatFunc) -> dict:
    return {"num": poly_to_json(phi.num), "den": poly_to_json(phi.den)}


def ratfunc_from_json(spec: FieldSpec, data) -> RatFunc:
    if not isinstance(data, dict) or "num" not in data:
        raise ParseError(f"bad rational function JSON {data!r}")
    num = poly_from_json(spec, data["num"])
    den = poly_from_json(spec, data.get("den", {"coeffs": [elem_to_json(spec.one)]}))
    return make_ratfunc(num, den)
