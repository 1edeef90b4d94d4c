"""Rational maps over F_q((t)) with truncated Laurent-series coefficients, their
normalized models, reduction modulo t, and the critical-point congruence check."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .critlocus import is_unicritical
from .errors import ParseError, PrecisionError, UnicritError
from .field import FieldSpec, elem_from_json, elem_to_json, format_elem
from .poly import Poly, parse_terms, resultant_dd
from .ratfunc import (
    INFINITY,
    MobiusMap,
    RatFunc,
    conjugate,
    is_inseparable,
    make_ratfunc,
    point_to_json,
    ratfunc_to_json,
    wronskian,
)

DEFAULT_PRECISION = 16


class LaurentScalar:
    """t^val * (c_0 + c_1 t + ... + c_{prec-1} t^{prec-1}) + O(t^{val+prec}).

    A zero known only modulo t^a has no stored coefficients and ``val == a``;
    the exact zero has ``val == math.inf``.
    """

    __slots__ = ("spec", "val", "codes")

    def __init__(self, spec: FieldSpec, val, codes=()):
        codes = list(codes)
        if codes:
            lead = next((i for i, c in enumerate(codes) if c), None)
            if lead is None:
                val, codes = val + len(codes), []
            else:
                val, codes = val + lead, codes[lead:]
        self.spec = spec
        self.val = val
        self.codes = tuple(codes)

    # -- constructors --------------------------------------------------------------

    @classmethod
    def exact_zero(cls, spec: FieldSpec) -> LaurentScalar:
        return cls(spec, math.inf)

    @classmethod
    def from_terms(cls, spec: FieldSpec, terms: dict, prec: int = DEFAULT_PRECISION) -> LaurentScalar:
        """Sum of c t^e over ``terms`` (ints or FieldElems), tracked to ``prec`` relative terms."""
        clean = {e: spec(c).code for e, c in terms.items() if spec(c)}
        if not clean:
            return cls.exact_zero(spec)
        v = min(clean)
        if max(clean) - v >= prec:
            raise PrecisionError(f"terms span more than {prec} powers of t")
        return cls(spec, v, [clean.get(v + i, 0) for i in range(prec)])

    @classmethod
    def constant(cls, spec: FieldSpec, c, prec: int = DEFAULT_PRECISION) -> LaurentScalar:
        return cls.from_terms(spec, {0: c}, prec)

    @classmethod
    def t_power(cls, spec: FieldSpec, n: int, prec: int = DEFAULT_PRECISION) -> LaurentScalar:
        return cls.from_terms(spec, {n: 1}, prec)

    # -- properties ----------------------------------------------------------------

    @property
    def prec(self) -> int:
        return len(self.codes)

    @property
    def coeffs(self):
        return tuple(self.spec.elem(c) for c in self.codes)

    @property
    def absprec(self):
        return self.val + len(self.codes) if self.codes else self.val

    def is_exact_zero(self) -> bool:
        return self.val == math.inf

    def is_zero(self) -> bool:
        """Zero to the tracked precision (exactly or modulo a power of t)."""
        return not self.codes

    @property
    def valuation(self):
        if self.codes or self.val == math.inf:
            return self.val
        raise PrecisionError(f"valuation of O(t^{self.val}) is unknown")

    def residue(self):
        """Image in the residue field; requires valuation >= 0."""
        spec = self.spec
        if not self.codes:
            if self.val > 0:
                return spec.zero
            raise PrecisionError(f"cannot reduce O(t^{self.val})")
        if self.val < 0:
            raise ValueError("element is not integral")
        return spec.elem(self.codes[0]) if self.val == 0 else spec.zero

    # -- arithmetic ------------------------------------------------------------------

    def _check(self, other: LaurentScalar) -> None:
        if other.spec != self.spec:
            raise UnicritError("Laurent scalars over different residue fields")

    def __add__(self, other: LaurentScalar) -> LaurentScalar:
        self._check(other)
        if self.is_exact_zero():
            return other
        if other.is_exact_zero():
            return self
        a = min(self.absprec, other.absprec)
        starts = [x.val for x in (self, other) if x.codes]
        if not starts:
            return LaurentScalar(self.spec, a)
        lo = min(starts)
        if lo >= a:
            return LaurentScalar(self.spec, a)
        add = self.spec.add
        out = [0] * (a - lo)
        for x in (self, other):
            for i, c in enumerate(x.codes):
                e = x.val + i - lo
                if e < len(out):
                    out[e] = add(out[e], c)
        return LaurentScalar(self.spec, lo, out)

    def __neg__(self) -> LaurentScalar:
        neg = self.spec.neg
        return LaurentScalar(self.spec, self.val, [neg(c) for c in self.codes])

    def __sub__(self, other: LaurentScalar) -> LaurentScalar:
        return self + (-other)

    def __mul__(self, other: LaurentScalar) -> LaurentScalar:
        self._check(other)
        if self.is_exact_zero() or other.is_exact_zero():
            return LaurentScalar.exact_zero(self.spec)
        if not self.codes or not other.codes:
            return LaurentScalar(self.spec, self.val + other.val)
        n = min(len(self.codes), len(other.codes))
        add, mul = self.spec.add, self.spec.mul
        out = [0] * n
        for i in range(n):
            x = self.codes[i]
            if x:
                for j in range(n - i):
                    y = other.codes[j]
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
        return LaurentScalar(self.spec, self.val + other.val, out)

    def scale(self, c) -> LaurentScalar:
        c = self.spec(c)
        if not c:
            return LaurentScalar.exact_zero(self.spec)
        mul = self.spec.mul
        return LaurentScalar(self.spec, self.val, [mul(x, c.code) for x in self.codes])

    def shift(self, n: int) -> LaurentScalar:
        """Multiply by t^n (exact)."""
        return LaurentScalar(self.spec, self.val + n, self.codes)

    def inverse(self) -> LaurentScalar:
        if self.is_exact_zero():
            raise ZeroDivisionError("division by exact zero")
        if not self.codes:
            raise PrecisionError(f"division by O(t^{self.val}): indistinguishable from zero")
        spec = self.spec
        add, mul, neg = spec.add, spec.mul, spec.neg
        u = self.codes
        n = len(u)
        inv0 = spec.inv(u[0])
        out = [inv0] + [0] * (n - 1)
        for k in range(1, n):
            acc = 0
            for i in range(1, k + 1):
                if u[i]:
                    acc = add(acc, mul(u[i], out[k - i]))
            out[k] = mul(neg(acc), inv0)
        return LaurentScalar(spec, -self.val, out)

    def __truediv__(self, other: LaurentScalar) -> LaurentScalar:
        return self * other.inverse()

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self.spec == other.spec and self.val == other.val and self.codes == other.codes

    def __hash__(self) -> int:
        return hash((self.val, self.codes))

    def __repr__(self) -> str:
        return f"LaurentScalar({format_laurent(self)!r})"

    def __str__(self) -> str:
        return format_laurent(self)

    def to_json(self) -> dict:
        val = None if self.val == math.inf else self.val
        return {"val": val, "coeffs": [elem_to_json(c) for c in self.coeffs], "prec": self.prec}


def laurent_from_json(spec: FieldSpec, data) -> LaurentScalar:
    if isinstance(data, (int, str)):
        return parse_laurent(str(data), spec)
    try:
        coeffs = [elem_from_json(spec, c).code for c in data.get("coeffs", [])]
        val = data.get("val")
        prec = int(data.get("prec", len(coeffs)))
    except (AttributeError, TypeError, ValueError) as exc:
        raise ParseError(f"bad Laurent scalar JSON {data!r}: {exc}") from None
    if val is None:
        return LaurentScalar.exact_zero(spec)
    coeffs = (coeffs + [0] * prec)[:prec]
    return LaurentScalar(spec, int(val), coeffs)


def format_laurent(x: LaurentScalar) -> str:
    if x.is_exact_zero():
        return "0"
    if not x.codes:
        return f"O(t^{x.val})"
    terms = []
    for i, c in enumerate(x.codes):
        if not c:
            continue
        s = format_elem(x.spec.elem(c))
        if x.spec.k > 1 and "+" in s:
            s = f"({s})"
        if i == 0:
            terms.append(s)
        else:
            mono = "t" if i == 1 else f"t^{i}"
            terms.append(mono if c == 1 else f"{s}*{mono}")
    return f"t^{x.val}*(" + " + ".join(terms) + ")"


def parse_laurent(text: str, spec: FieldSpec, prec: int = DEFAULT_PRECISION) -> LaurentScalar:
    """Parse sums like ``"t^-1 + 2*t^3"`` or ``"t^2*(1 + t)"`` over a prime field."""
    if spec.k != 1:
        raise ParseError("inline Laurent text is only supported over prime fields; use JSON")
    src = text.replace(" ", "")
    shift = 0
    if "*(" in src and src.endswith(")"):
        head, body = src.split("*(", 1)
        head_terms = parse_terms(head, "xt")
        if len(head_terms) != 1 or list(head_terms.values()) != [1] or next(iter(head_terms))[0]:
            raise ParseError(f"prefix {head!r} must be a bare power of t")
        shift = next(iter(head_terms))[1]
        src = body[:-1]
    terms = parse_terms(src, "xt")
    if any(e[0] for e in terms):
        raise ParseError(f"unexpected variable in {text!r}")
    return LaurentScalar.from_terms(spec, {e[1] + shift: c for e, c in terms.items()}, prec)


# -- Laurent polynomials in z ---------------------------------------------------------

def _lpoly_degree(coeffs) -> int:
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c.is_exact_zero():
            continue
        if not c.codes:
            raise PrecisionError(f"coefficient of z^{i} is indistinguishable from zero")
        return i
    return -1


def laurent_det(spec: FieldSpec, matrix) -> LaurentScalar:
    """Determinant by elimination with minimal-valuation pivoting."""
    m = [list(r) for r in matrix]
    n = len(m)
    width = max((x.prec for r in m for x in r), default=1) or 1
    det = LaurentScalar(spec, 0, [1] + [0] * (width - 1))
    sign = 1
    for k in range(n):
        best = None
        for i in range(k, n):
            x = m[i][k]
            if x.codes and (best is None or x.val < m[best][k].val):
                best = i
        if best is None:
            if all(m[i][k].is_exact_zero() for i in range(k, n)):
                return LaurentScalar.exact_zero(spec)
            bound = det.val + sum(
                min(m[i][j].val for i in range(k, n)) for j in range(k, n)
            )
            return LaurentScalar(spec, bound)
        if best != k:
            m[k], m[best] = m[best], m[k]
            sign = -sign
        pivot = m[k][k]
        inv = pivot.inverse()
        for i in range(k + 1, n):
            if m[i][k].is_exact_zero():
                continue
            factor = m[i][k] * inv
            for j in range(k + 1, n):
                m[i][j] = m[i][j] - factor * m[k][j]
        det = det * pivot
    return -det if sign < 0 else det


def laurent_resultant(f, g, d: int) -> LaurentScalar:
    """Degree-(d, d) resultant of two coefficient sequences (constant first)."""
    spec = f[0].spec if f else g[0].spec
    zero = LaurentScalar.exact_zero(spec)
    if d == 0:
        return LaurentScalar.constant(spec, 1)
    fc = [f[i] if i < len(f) else zero for i in range(d, -1, -1)]
    gc = [g[i] if i < len(g) else zero for i in range(d, -1, -1)]
    rows = [[zero] * i + fc + [zero] * (d - 1 - i) for i in range(d)]
    rows += [[zero] * i + gc + [zero] * (d - 1 - i) for i in range(d)]
    return laurent_det(spec, rows)


@dataclass(frozen=True)
class LocalRatFunc:
    """f/g with coefficients in F_q((t)), normalized so every coefficient is integral
    and at least one is a unit."""

    num: tuple
    den: tuple
    d: int

    @property
    def spec(self) -> FieldSpec:
        return (self.num or self.den)[0].spec

    def __str__(self) -> str:
        return f"({format_lpoly(self.num)})/({format_lpoly(self.den)})"

    def to_json(self) -> dict:
        return {"num": [c.to_json() for c in self.num], "den": [c.to_json() for c in self.den], "d": self.d}


def format_lpoly(coeffs) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c.is_exact_zero():
            continue
        mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
        terms.append(f"({c})" + (f"*{mono}" if mono else ""))
    return " + ".join(terms) if terms else "0"


def _clean(coeffs) -> tuple:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1].is_exact_zero():
        coeffs.pop()
    return tuple(coeffs)


def normalize_model(f, g) -> LocalRatFunc:
    """Scale (f, g) by a power of t so the minimum coefficient valuation is exactly 0."""
    f, g = _clean(f), _clean(g)
    if not f and not g:
        raise ValueError("0/0 is not a rational function")
    coeffs = [c for c in f + g if not c.is_exact_zero()]
    known = [c.val for c in coeffs if c.codes]
    if not known:
        raise PrecisionError("every coefficient is indistinguishable from zero")
    m = min(known)
    if any(not c.codes and c.val <= m for c in coeffs):
        raise PrecisionError("minimum coefficient valuation is not determined at working precision")
    f = tuple(c.shift(-m) for c in f)
    g = tuple(c.shift(-m) for c in g)
    d = max(_lpoly_degree(f), _lpoly_degree(g), 0)
    res = laurent_resultant(f, g, d)
    if res.is_exact_zero():
        raise ValueError("numerator and denominator share a common factor")
    if not res.codes:
        raise PrecisionError("cannot certify coprimality at working precision")
    return LocalRatFunc(f, g, d)


def local_from_ratfunc(phi: RatFunc, prec: int = DEFAULT_PRECISION) -> LocalRatFunc:
    """Constant lift of a map over the residue field."""
    spec = phi.spec
    lift = lambda p: [LaurentScalar.from_terms(spec, {0: c}, prec) for c in p.coeffs]  # noqa: E731
    return normalize_model(lift(phi.num), lift(phi.den))


def parse_local_poly(text: str, spec: FieldSpec, prec: int = DEFAULT_PRECISION) -> tuple:
    """Inline grammar in z and t over a prime field, e.g. ``"t*z^2 + t^-1*z + 1"``."""
    if spec.k != 1:
        raise ParseError("inline polynomial text is only supported over prime fields; use JSON")
    terms = parse_terms(text, "zt")
    n = max((e[0] for e in terms), default=-1)
    by_power = [dict() for _ in range(n + 1)]
    for (i, j), c in terms.items():
        by_power[i][j] = by_power[i].get(j, 0) + c
    return tuple(LaurentScalar.from_terms(spec, coeff, prec) for coeff in by_power)


def local_from_json(spec: FieldSpec, data) -> tuple:
    if isinstance(data, str):
        return parse_local_poly(data, spec)
    if not isinstance(data, list):
        raise ParseError(f"bad Laurent polynomial JSON {data!r}")
    return tuple(laurent_from_json(spec, c) for c in data)


# -- reduction ---------------------------------------------------------------------

def reduce_pair(phi: LocalRatFunc) -> tuple[Poly, Poly]:
    spec = phi.spec
    return Poly(spec, [c.residue() for c in phi.num]), Poly(spec, [c.residue() for c in phi.den])


def reduce_map(phi: LocalRatFunc):
    """The reduced map f~/g~ (common factors cancelled), or INFINITY when g~ = 0."""
    f, g = reduce_pair(phi)
    if g.is_zero():
        return INFINITY
    return make_ratfunc(f, g)


def reduced_degree(red) -> int:
    return 0 if red is INFINITY else red.d


def has_good_reduction(phi: LocalRatFunc) -> bool:
    """deg(reduction) == deg(phi); cross-checked against the valuation of the resultant."""
    good = reduced_degree(reduce_map(phi)) == phi.d
    f, g = reduce_pair(phi)
    res_red = resultant_dd(f, g, phi.d)
    res = laurent_resultant(phi.num, phi.den, phi.d)
    if res.residue() != res_red:
        raise AssertionError("reduced resultant disagrees with the residue of the resultant")
    if good != bool(res_red):
        raise AssertionError("degree test and resultant test disagree on good reduction")
    return good


@dataclass(frozen=True)
class CongruenceReport:
    applies: bool
    case: str
    congruence_ok: bool
    degree: int
    p: int
    reduced: RatFunc
    critical_reduction: object = None
    normalized_wronskian_ok: bool | None = None

    def to_json(self) -> dict:
        return {
            "applies": self.applies,
            "case": self.case,
            "congruence_ok": self.congruence_ok,
            "degree": self.degree,
            "p": self.p,
            "reduced": "infinity" if self.reduced is INFINITY else ratfunc_to_json(self.reduced),
            "critical_reduction": None if self.critical_reduction is None else point_to_json(self.critical_reduction),
            "normalized_wronskian_ok": self.normalized_wronskian_ok,
        }


def verify_congruence(phi: LocalRatFunc) -> CongruenceReport:
    """Classify the reduction and check deg(phi) = 0 or 1 mod p when the reduction is inseparable or unicritical."""
    if not has_good_reduction(phi):
        raise UnicritError("map has bad reduction")
    red = reduce_map(phi)
    d, p = phi.d, phi.spec.p
    if red is INFINITY:
        return CongruenceReport(False, "not-applicable", True, d, p, red)
    insep, _ = is_inseparable(red)
    if insep:
        return CongruenceReport(True, "inseparable", d % p == 0, d, p, red)
    c = is_unicritical(red, scan_roots=False).unicritical_at
    if c is None:
        return CongruenceReport(False, "not-applicable", True, d, p, red)
    sigma = MobiusMap.reciprocal(red.spec) if c is INFINITY else MobiusMap.translation(c)
    w = wronskian(conjugate(sigma, red))
    monomial = w.degree == 2 * d - 2 and all(x == 0 for x in w.codes[:-1])
    return CongruenceReport(True, "unicritical", d % p in (0, 1), d, p, red, c, monomial)


# -- corpus ------------------------------------------------------------------------

def lift(phi_coords, spec: FieldSpec, rng: random.Random, support: int = 2, prec: int = 8, twist: int = 0):
    """Random lift of a residue coordinate tuple: each coefficient gains t-multiples up to t^support,
    and the whole pair is multiplied by t^twist."""
    d = len(phi_coords) // 2 - 1
    elems = list(range(spec.q))

    def one(c):
        terms = {0: spec.elem(c.code if hasattr(c, "code") else c)}
        for j in range(1, support + 1):
            terms[j] = spec.elem(rng.choice(elems))
        terms = {e + twist: x for e, x in terms.items()}
        return LaurentScalar.from_terms(spec, terms, prec)

    a = [one(c) for c in phi_coords[: d + 1]][::-1]
    b = [one(c) for c in phi_coords[d + 1 :]][::-1]
    return a, b


def lift_corpus(spec: FieldSpec, d: int, count: int | None = None, seed: int = 0, lifts_per_map: int = 1, prec: int = 8):
    """Good-reduction lifts of raw coordinate tuples of P^(2d+1)(F_q).

    Tuples are taken exhaustively (or a seeded sample of ``count``); each gets
    ``lifts_per_map`` random lifts, and only normalized models with good
    reduction are kept.
    """
    from .moduli import projective_points

    rng = random.Random(seed)
    points = list(projective_points(spec, 2 * d + 2))
    if count is not None and count < len(points):
        points = rng.sample(points, count)
    out = []
    for pt in points:
        for _ in range(lifts_per_map):
            a, b = lift(pt, spec, rng, prec=prec, twist=rng.choice([-1, 0, 1]))
            try:
                phi = normalize_model(a, b)
            except (ValueError, PrecisionError):
                continue
            if phi.d == d and has_good_reduction(phi):
                out.append(phi)
    return out
