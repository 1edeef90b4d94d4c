"""Critical points, the Wronskian coefficient map omega, the curve map theta,
and factorization-free unicriticality certification."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import LimitExceededError
from .field import FieldElem, FieldSpec, enumerate_field, enumeration_limit, inverse_frobenius
from .poly import Poly, poly_divmod
from .ratfunc import INFINITY, MobiusMap, RatFunc, mobius_post, mobius_pre, point_to_json, ratfunc_eval, wronskian


@dataclass(frozen=True)
class CritReport:
    separable: bool
    finite_crit: tuple = field(default=())
    infinity_critical: bool = False
    unicritical_at: object = None
    wronskian: Poly | None = None

    def to_json(self) -> dict:
        return {
            "separable": self.separable,
            "finite_crit": [[point_to_json(c), m] for c, m in self.finite_crit],
            "infinity_critical": self.infinity_critical,
            "unicritical_at": None if self.unicritical_at is None else point_to_json(self.unicritical_at),
        }


def _projective_scale(seq: list[FieldElem]) -> tuple[FieldElem, ...]:
    first = next((x for x in seq if x), None)
    if first is None:
        raise ValueError("zero vector has no projective class")
    inv = first.inverse()
    return tuple(x * inv for x in seq)


def omega(phi: RatFunc) -> tuple[FieldElem, ...]:
    """(c_{2d-2} : ... : c_0) for W = sum c_i z^i, scaled so the first nonzero entry is 1."""
    w = wronskian(phi)
    if w.is_zero():
        raise ValueError("omega is undefined on inseparable maps")
    n = 2 * phi.d - 2
    return _projective_scale([w.coeff(i) for i in range(n, -1, -1)])


def theta(c, d: int, spec: FieldSpec | None = None) -> tuple[FieldElem, ...]:
    """Coefficients (highest first) of (t z - s)^(2d-2) for c = (s : t)."""
    if d < 2:
        raise ValueError("theta needs d >= 2")
    if c is INFINITY:
        if spec is None:
            raise ValueError("a field is required for the point at infinity")
        return tuple([spec.zero] * (2 * d - 2) + [spec.one])
    spec = c.spec
    lin = Poly(spec, [-c, 1])
    power = lin ** (2 * d - 2)
    return _projective_scale([power.coeff(i) for i in range(2 * d - 2, -1, -1)])


def _p_adic_split(n: int, p: int) -> tuple[int, int]:
    s = 0
    while n % p == 0:
        n //= p
        s += 1
    return s, n


def unique_root_candidate(w: Poly, n: int):
    """Return c with w = a (z - c)^n exactly, or None.

    Writes n = p^s u with p not dividing u; then w must be V(z^(p^s)) with
    V = a (w - gamma)^u, so gamma is read off the subleading coefficient of V
    and c is the p^s-th root of gamma.
    """
    spec = w.spec
    if w.degree != n:
        return None
    p = spec.p
    s, u = _p_adic_split(n, p)
    step = p**s
    codes = w.codes
    if any(c for i, c in enumerate(codes) if i % step):
        return None
    v = Poly.from_codes(spec, codes[::step])
    a = v.leading
    gamma = -v.coeff(u - 1) / (spec(u) * a)
    c = inverse_frobenius(gamma, s) if s else gamma
    if Poly(spec, [-c, 1]) ** n * a != w:
        return None
    return c


def unicritical_point(phi: RatFunc, w: Poly | None = None):
    """The unique critical point of phi (a field element or INFINITY), or None."""
    d = phi.d
    if d < 2:
        return None
    if w is None:
        w = wronskian(phi)
    if w.is_zero():
        return None
    if w.degree == 0:
        return INFINITY
    return unique_root_candidate(w, 2 * d - 2)


def is_unicritical(phi: RatFunc, scan_roots: bool = True) -> CritReport:
    """Certify unicriticality from the Wronskian without factoring it."""
    w = wronskian(phi)
    if w.is_zero():
        return CritReport(separable=False, infinity_critical=True, wronskian=w)
    d = phi.d
    roots = tuple(finite_crit_in_field(phi, phi.spec)) if scan_roots else ()
    inf_crit = d >= 2 and w.degree < 2 * d - 2
    return CritReport(
        separable=True,
        finite_crit=roots,
        infinity_critical=inf_crit,
        unicritical_at=unicritical_point(phi, w),
        wronskian=w,
    )


def root_multiplicity(a: Poly, c: FieldElem) -> int:
    lin = Poly(a.spec, [-c, 1])
    m = 0
    while a and not a(c):
        a = poly_divmod(a, lin)[0]
        m += 1
    return m


def finite_crit_in_field(phi: RatFunc, spec: FieldSpec | None = None, limit: int | None = None):
    """Roots of W lying in the coefficient field, with multiplicities in W."""
    spec = spec or phi.spec
    if spec != phi.spec:
        raise ValueError("extension-field root scans require coefficients embedded in that field")
    if spec.q > enumeration_limit(limit):
        raise LimitExceededError(f"field of size {spec.q} exceeds limit")
    w = wronskian(phi)
    if w.is_zero():
        raise ValueError("every point is critical for an inseparable map")
    return [(x, root_multiplicity(w, x)) for x in enumerate_field(spec, limit) if not w(x)]


def ram_index(phi: RatFunc, c) -> int:
    """Order of vanishing of phi - phi(c) at c, after moving c and phi(c) off infinity."""
    if phi.d == 0:
        raise ValueError("constant maps have no ramification index")
    spec = phi.spec
    recip = MobiusMap.reciprocal(spec)
    if c is INFINITY:
        phi = mobius_pre(phi, recip)
        c = spec.zero
    if ratfunc_eval(phi, c) is INFINITY:
        phi = mobius_post(recip, phi)
    v = ratfunc_eval(phi, c)
    return root_multiplicity(phi.num - phi.den.scale(v), c)
