"""Univariate polynomials over a FieldSpec.

Coefficients are stored constant-first as integer codes with no trailing
zeros; the zero polynomial is the empty tuple and has degree ``NEG_INF``.
"""

from __future__ import annotations

import enum
import re

from .errors import FieldMismatchError, ParseError
from .field import FieldElem, FieldSpec, elem_from_json, elem_to_json, format_elem


class Degree(enum.Enum):
    """Degree of the zero polynomial; compares below every integer."""

    NEG_INF = "-inf"

    def __lt__(self, other):
        return other is not Degree.NEG_INF

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is Degree.NEG_INF

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self) -> str:
        return "NEG_INF"

    def __str__(self) -> str:
        return "-inf"


NEG_INF = Degree.NEG_INF


def deg_plus(deg) -> int:
    """max(deg, 0)."""
    return 0 if deg is NEG_INF else max(deg, 0)


def _trim(c: list[int]) -> tuple[int, ...]:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


class Poly:
    """Immutable polynomial; ``codes`` are the coefficient codes, constant first."""

    __slots__ = ("spec", "codes", "_hash")

    def __init__(self, spec: FieldSpec, coeffs=()):
        self.spec = spec
        codes = []
        for c in coeffs:
            if isinstance(c, FieldElem):
                if c.spec is not spec and c.spec != spec:
                    raise FieldMismatchError(f"coefficient from {c.spec} in polynomial over {spec}")
                codes.append(c.code)
            else:
                codes.append(spec.from_int(c))
        self.codes = _trim(codes)
        self._hash = None

    @classmethod
    def from_codes(cls, spec: FieldSpec, codes) -> Poly:
        obj = cls.__new__(cls)
        obj.spec = spec
        obj.codes = _trim(list(codes))
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, spec: FieldSpec, c) -> Poly:
        return cls(spec, [c])

    @classmethod
    def monomial(cls, spec: FieldSpec, n: int, c=1) -> Poly:
        return cls(spec, [0] * n + [c])

    @classmethod
    def z(cls, spec: FieldSpec) -> Poly:
        return cls.from_codes(spec, (0, 1))

    # -- basic properties ----------------------------------------------------------

    @property
    def coeffs(self) -> tuple[FieldElem, ...]:
        return tuple(self.spec.elem(c) for c in self.codes)

    @property
    def degree(self):
        return len(self.codes) - 1 if self.codes else NEG_INF

    def is_zero(self) -> bool:
        return not self.codes

    def is_constant(self) -> bool:
        return len(self.codes) <= 1

    @property
    def leading(self) -> FieldElem:
        return self.spec.elem(self.codes[-1]) if self.codes else self.spec.zero

    def coeff(self, i: int) -> FieldElem:
        return self.spec.elem(self.codes[i]) if 0 <= i < len(self.codes) else self.spec.zero

    def __len__(self) -> int:
        return len(self.codes)

    def __bool__(self) -> bool:
        return bool(self.codes)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.codes == other.codes and (self.spec is other.spec or self.spec == other.spec)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.spec, self.codes))
        return self._hash

    def _check(self, other: Poly) -> None:
        if other.spec is not self.spec and other.spec != self.spec:
            raise FieldMismatchError(f"polynomials over {self.spec} and {other.spec}")

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (FieldElem, int)):
            return Poly(self.spec, [other])
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    # -- ring operations ----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        add = self.spec.add
        a, b = self.codes, other.codes
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = add(out[i], c)
        return Poly.from_codes(self.spec, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.spec.neg
        return Poly.from_codes(self.spec, [neg(c) for c in self.codes])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (FieldElem, int)):
            return self.scale(other)
        other = self._coerce(other)
        return Poly.from_codes(self.spec, mul_codes(self.spec, self.codes, other.codes))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = Poly.constant(self.spec, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c) -> Poly:
        c = self.spec(c).code
        mul = self.spec.mul
        return Poly.from_codes(self.spec, [mul(x, c) for x in self.codes])

    def monic(self) -> Poly:
        if not self.codes:
            return self
        return self.scale(self.leading.inverse())

    def shift(self, n: int) -> Poly:
        """Multiply by z^n."""
        if not self.codes:
            return self
        return Poly.from_codes(self.spec, (0,) * n + self.codes)

    def __divmod__(self, other):
        return poly_divmod(self, self._coerce(other))

    def __floordiv__(self, other):
        return poly_divmod(self, self._coerce(other))[0]

    def __mod__(self, other):
        return poly_divmod(self, self._coerce(other))[1]

    def __call__(self, x):
        return poly_eval(self, x)

    def derivative(self) -> Poly:
        return derivative(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r}, {self.spec})"

    def __str__(self) -> str:
        return format_poly(self)


def mul_codes(spec: FieldSpec, a, b) -> list[int]:
    if not a or not b:
        return []
    tables = spec.tables()
    out = [0] * (len(a) + len(b) - 1)
    if tables is not None:
        add_t, mul_t, _ = tables
        q = spec.q
        for i, x in enumerate(a):
            if x:
                row = x * q
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add_t[out[i + j] * q + mul_t[row + y]]
    else:
        add, mul = spec.add, spec.mul
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
    return out


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Division with remainder: a = b*q + r, deg r < deg b."""
    a._check(b)
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    spec = a.spec
    add, mul, neg = spec.add, spec.mul, spec.neg
    r = list(a.codes)
    db = len(b.codes) - 1
    inv_lc = spec.inv(b.codes[-1])
    if len(r) - 1 < db:
        return Poly.from_codes(spec, ()), a
    quot = [0] * (len(r) - db)
    bc = b.codes
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c == 0:
            continue
        c = mul(c, inv_lc)
        quot[i - db] = c
        nc = neg(c)
        for j in range(db + 1):
            if bc[j]:
                r[i - db + j] = add(r[i - db + j], mul(nc, bc[j]))
    return Poly.from_codes(spec, quot), Poly.from_codes(spec, r[:db])


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (Euclid)."""
    a._check(b)
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return a.monic()


def derivative(a: Poly) -> Poly:
    """Formal derivative; exponent factors are reduced mod p."""
    spec = a.spec
    mul = spec.mul
    return Poly.from_codes(spec, [mul(spec.from_int(i), c) for i, c in enumerate(a.codes) if i > 0])


def insep_decompose(a: Poly) -> tuple[Poly, Poly]:
    """Split a(z) = a1(z^p) + a2(z); a1 is returned in the deflated variable w = z^p."""
    p = a.spec.p
    a1 = a.codes[::p]
    a2 = [0 if i % p == 0 else c for i, c in enumerate(a.codes)]
    return Poly.from_codes(a.spec, a1), Poly.from_codes(a.spec, a2)


def inflate(a: Poly, s: int = 1) -> Poly:
    """Return a(z^(p^s))."""
    if s < 0:
        raise ValueError("inflation exponent must be nonnegative")
    step = a.spec.p**s
    if step == 1 or not a.codes:
        return a
    out = [0] * ((len(a.codes) - 1) * step + 1)
    out[::step] = a.codes
    return Poly.from_codes(a.spec, out)


def is_p_power_shape(a: Poly) -> bool:
    """True when every exponent of a is divisible by p (a lies in F[z^p])."""
    p = a.spec.p
    return all(c == 0 for i, c in enumerate(a.codes) if i % p)


def resultant_dd(f: Poly, g: Poly, d: int):
    """Degree-(d, d) resultant: determinant of the 2d x 2d Sylvester matrix."""
    f._check(g)
    if f.degree > d or g.degree > d:
        raise ValueError(f"formal degree {d} is below the actual degree")
    spec = f.spec
    if d == 0:
        return spec.one
    fc = [f.codes[i] if i < len(f.codes) else 0 for i in range(d, -1, -1)]
    gc = [g.codes[i] if i < len(g.codes) else 0 for i in range(d, -1, -1)]
    rows = []
    for i in range(d):
        rows.append([0] * i + fc + [0] * (d - 1 - i))
    for i in range(d):
        rows.append([0] * i + gc + [0] * (d - 1 - i))
    return spec.elem(bareiss_det(spec, rows))


def bareiss_det(spec: FieldSpec, rows: list[list[int]]) -> int:
    """Determinant of a square matrix of codes by fraction-free elimination."""
    add, mul, neg, inv = spec.add, spec.mul, spec.neg, spec.inv
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        prev_inv = inv(prev)
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                val = add(mul(row_i[j], pivot), neg(mul(mik, row_k[j])))
                row_i[j] = mul(val, prev_inv)
            row_i[k] = 0
        prev = pivot
    det = m[n - 1][n - 1]
    return neg(det) if sign < 0 else det


def poly_eval(a: Poly, x) -> FieldElem:
    """Horner evaluation."""
    spec = a.spec
    x = spec(x)
    add, mul = spec.add, spec.mul
    acc = 0
    xc = x.code
    for c in reversed(a.codes):
        acc = add(mul(acc, xc), c)
    return spec.elem(acc)


# -- text and JSON ------------------------------------------------------------------

def format_poly(a: Poly, var: str = "z") -> str:
    if not a.codes:
        return "0"
    terms = []
    for i in range(len(a.codes) - 1, -1, -1):
        c = a.codes[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        cs = format_elem(a.spec.elem(c))
        if a.spec.k > 1 and "+" in cs:
            cs = f"({cs})"
        if not mono:
            terms.append(cs)
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{cs}*{mono}")
    return " + ".join(terms)


def parse_terms(text: str, variables: str = "z") -> dict[tuple[int, ...], int]:
    """Parse a sum of integer-coefficient monomials, e.g. ``"2*z^3*t + z - 1"``.

    Returns a mapping from exponent tuples (one entry per variable) to integer
    coefficients. Negative exponents are only accepted for variables other
    than the first.
    """
    src = text.replace(" ", "")
    if not src:
        raise ParseError("empty polynomial")
    src = re.sub(r"(?<!\^)-", "+-", src)
    out: dict[tuple[int, ...], int] = {}
    for raw in src.split("+"):
        if raw == "":
            continue
        sign = 1
        while raw.startswith("-"):
            sign = -sign
            raw = raw[1:]
        coef = 1
        exps = [0] * len(variables)
        factors = [f for f in raw.split("*") if f != ""]
        if not factors:
            raise ParseError(f"malformed term in {text!r}")
        for fac in factors:
            if fac.isdigit():
                coef *= int(fac)
                continue
            m = re.fullmatch(r"([a-zA-Z])(?:\^(-?\d+))?", fac)
            if not m or m.group(1) not in variables:
                raise ParseError(f"malformed factor {fac!r} in {text!r}")
            idx = variables.index(m.group(1))
            e = int(m.group(2)) if m.group(2) else 1
            if e < 0 and idx == 0:
                raise ParseError(f"negative exponent on {variables[0]} in {text!r}")
            exps[idx] += e
        key = tuple(exps)
        out[key] = out.get(key, 0) + sign * coef
    return out


def parse_poly(text: str, spec: FieldSpec, var: str = "z") -> Poly:
    """Inline grammar for prime fields, e.g. ``"z^3 + 2*z + 1"``."""
    if spec.k != 1:
        raise ParseError("inline polynomial text is only supported over prime fields; use JSON")
    terms = parse_terms(text, var)
    if not terms:
        return Poly(spec, [])
    n = max(e[0] for e in terms)
    coeffs = [0] * (n + 1)
    for (e,), c in terms.items():
        coeffs[e] += c
    return Poly(spec, coeffs)


def poly_to_json(a: Poly) -> dict:
    return {"coeffs": [elem_to_json(c) for c in a.coeffs]}


def poly_from_json(spec: FieldSpec, data) -> Poly:
    if isinstance(data, str):
        return parse_poly(data, spec)
    if isinstance(data, dict):
        data = data.get("coeffs")
    if not isinstance(data, list):
        raise ParseError(f"bad polynomial JSON {data!r}")
    return Poly(spec, [elem_from_json(spec, c) for c in data])
