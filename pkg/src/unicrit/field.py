"""Exact arithmetic in finite fields F_{p^k}.

Elements are encoded as integers ``code = c_0 + c_1 p + ... + c_{k-1} p^{k-1}``
where ``(c_0, ..., c_{k-1})`` are the coordinates in the power basis of a
root ``u`` of the modulus.  Small fields get precomputed add/mul tables so
the polynomial layer can run hot loops directly on codes.
"""

from __future__ import annotations

import itertools
import os
import re
from functools import lru_cache

from .errors import FieldMismatchError, LimitExceededError, ParseError

TABLE_LIMIT = 256
DEFAULT_LIMIT = 2_000_000


def enumeration_limit(limit: int | None = None) -> int:
    """Resolve an enumeration size guard: explicit value, ``UNICRIT_LIMIT``, default."""
    if limit is not None:
        return int(limit)
    env = os.environ.get("UNICRIT_LIMIT")
    if env:
        return int(env)
    return DEFAULT_LIMIT


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# -- arithmetic on coefficient lists over F_p (constant first) -------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo the monic-or-not polynomial m over F_p."""
    a = _trim([x % p for x in a])
    m = _trim(list(m))
    inv_lc = pow(m[-1], p - 2, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lc % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    k = len(modulus) - 1
    if k == 1:
        return True
    for deg in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            cand = list(tail) + [1]
            if not _pmod(list(modulus), cand, p):
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """Smallest (by integer code of the lower coefficients) monic irreducible of degree k."""
    if k == 1:
        return (0, 1)
    for code in range(p**k):
        tail = [(code // p**i) % p for i in range(k)]
        mod = tuple(tail) + (1,)
        if tail[0] != 0 and _is_irreducible(mod, p):
            return mod
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FieldSpec:
    """The field F_p[u]/(modulus), with ``p`` prime and ``modulus`` monic irreducible of degree ``k``."""

    __slots__ = ("p", "k", "modulus", "q", "_elems", "_add", "_mul", "_neg", "_inv")

    def __init__(self, p: int, k: int = 1, modulus=None):
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be at least 1")
        if modulus is None:
            modulus = default_modulus(p, k)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {k}")
        if not _is_irreducible(modulus, p):
            raise ValueError(f"modulus {list(modulus)} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.modulus = modulus
        self.q = p**k
        self._elems = [FieldElem(self, c) for c in range(self.q)] if self.q <= 1 << 16 else None
        self._add = self._mul = self._neg = self._inv = None
        if self.q <= TABLE_LIMIT:
            self._build_tables()

    # -- code-level arithmetic ------------------------------------------------

    def digits(self, code: int) -> tuple[int, ...]:
        p = self.p
        return tuple((code // p**i) % p for i in range(self.k))

    def from_digits(self, digits) -> int:
        p = self.p
        digits = list(digits)
        if len(digits) > self.k:
            digits = _pmod(digits, list(self.modulus), p)
        return sum((int(c) % p) * p**i for i, c in enumerate(digits))

    def _slow_add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return self.from_digits(x + y for x, y in zip(self.digits(a), self.digits(b)))

    def _slow_neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        return self.from_digits(-x for x in self.digits(a))

    def _slow_mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return self.from_digits(_pmod(prod, list(self.modulus), self.p))

    def _slow_inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in finite field")
        return self._slow_pow(a, self.q - 2)

    def _slow_pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def _build_tables(self) -> None:
        q = self.q
        self._add = [self._slow_add(a, b) for a in range(q) for b in range(q)]
        self._mul = [self._slow_mul(a, b) for a in range(q) for b in range(q)]
        self._neg = [self._slow_neg(a) for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul[a * q + b] == 1:
                    inv[a] = b
                    break
        self._inv = inv

    def add(self, a: int, b: int) -> int:
        if self._add is not None:
            return self._add[a * self.q + b]
        return self._slow_add(a, b)

    def neg(self, a: int) -> int:
        if self._neg is not None:
            return self._neg[a]
        return self._slow_neg(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul is not None:
            return self._mul[a * self.q + b]
        return self._slow_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in finite field")
        if self._inv is not None:
            return self._inv[a]
        return self._slow_inv(a)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        return self._slow_pow(a, e % (self.q - 1) if e else 0)

    def from_int(self, n: int) -> int:
        return int(n) % self.p

    def tables(self):
        """Flat (add, mul, neg) tables, or None when the field is too large to tabulate."""
        if self._add is None:
            return None
        return self._add, self._mul, self._neg

    # -- element level ----------------------------------------------------------

    def elem(self, code: int) -> FieldElem:
        if self._elems is not None:
            return self._elems[code]
        return FieldElem(self, code)

    def __call__(self, value) -> FieldElem:
        """Coerce an int (via the prime subfield) or a FieldElem of this field."""
        if isinstance(value, FieldElem):
            if value.spec != self:
                raise FieldMismatchError(f"element of {value.spec} used in {self}")
            return value
        return self.elem(self.from_int(value))

    def from_coeffs(self, coeffs) -> FieldElem:
        coeffs = list(coeffs)
        if len(coeffs) != self.k or any(not 0 <= int(c) < self.p for c in coeffs):
            raise ValueError(f"expected {self.k} residues in [0, {self.p})")
        return self.elem(self.from_digits(coeffs))

    @property
    def zero(self) -> FieldElem:
        return self.elem(0)

    @property
    def one(self) -> FieldElem:
        return self.elem(1)

    @property
    def gen(self) -> FieldElem:
        """The class of ``u`` (equal to 0 when k = 1, where u is a root of z)."""
        return self.elem(self.from_digits([0, 1]))

    def _key(self):
        return (self.p, self.k, self.modulus)

    def __eq__(self, other) -> bool:
        return self is other or (isinstance(other, FieldSpec) and self._key() == other._key())

    def __hash__(self) -> int:
        return hash(self._key())

    def __reduce__(self):
        return (FieldSpec, (self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, k={self.k}, modulus={list(self.modulus)})"

    def __str__(self) -> str:
        return format_field_spec(self)


class FieldElem:
    """An element of a FieldSpec; immutable, interned for small fields."""

    __slots__ = ("spec", "code")

    def __init__(self, spec: FieldSpec, code: int):
        self.spec = spec
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.digits(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.spec is not self.spec and other.spec != self.spec:
                raise FieldMismatchError(f"cannot combine elements of {self.spec} and {other.spec}")
            return other.code
        if isinstance(other, int):
            return self.spec.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self.spec.elem(self.spec.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self.spec.elem(self.spec.sub(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self.spec.elem(self.spec.sub(b, self.code))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self.spec.elem(self.spec.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self.spec.elem(self.spec.mul(self.code, self.spec.inv(b)))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self.spec.elem(self.spec.mul(b, self.spec.inv(self.code)))

    def __neg__(self):
        return self.spec.elem(self.spec.neg(self.code))

    def __pow__(self, e: int):
        return self.spec.elem(self.spec.pow(self.code, e))

    def inverse(self) -> FieldElem:
        return self.spec.elem(self.spec.inv(self.code))

    def __bool__(self) -> bool:
        return self.code != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElem):
            return self.code == other.code and (self.spec is other.spec or self.spec == other.spec)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.spec.p, self.spec.k, self.code))

    def __repr__(self) -> str:
        return f"FieldElem({format_elem(self)!r}, p={self.spec.p}, k={self.spec.k})"

    def __str__(self) -> str:
        return format_elem(self)


def format_elem(x: FieldElem) -> str:
    """Human-readable form: an integer for prime fields, a polynomial in ``u`` otherwise."""
    if x.spec.k == 1:
        return str(x.code)
    terms = []
    for i, c in reversed(list(enumerate(x.coeffs))):
        if c == 0:
            continue
        mono = "" if i == 0 else ("u" if i == 1 else f"u^{i}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms) if terms else "0"


def frobenius(x: FieldElem, s: int = 1) -> FieldElem:
    """Return x^(p^s)."""
    if s < 0:
        raise ValueError("frobenius exponent must be nonnegative")
    return x ** (x.spec.p ** (s % x.spec.k)) if x.spec.k > 1 else x


def inverse_frobenius(x: FieldElem, s: int = 1) -> FieldElem:
    """The unique y with frobenius(y, s) == x."""
    k = x.spec.k
    return frobenius(x, k - (s % k))


def enumerate_field(spec: FieldSpec, limit: int | None = None) -> list[FieldElem]:
    """All p^k elements, ordered by integer code (c_{k-1} most significant)."""
    if spec.q > enumeration_limit(limit):
        raise LimitExceededError(f"field of size {spec.q} exceeds limit")
    return [spec.elem(c) for c in range(spec.q)]


_SPEC_RE = re.compile(r"^\s*p\s*=\s*(\d+)\s*(?:,\s*k\s*=\s*(\d+)\s*)?(?:,\s*mod\s*=\s*([\d,\s]+))?$")


def parse_field_spec(text: str) -> FieldSpec:
    """Parse ``"p=2,k=2,mod=1,1,1"`` (modulus constant-first; ``k`` and ``mod`` optional)."""
    m = _SPEC_RE.match(text)
    if not m:
        raise ParseError(f"malformed field spec {text!r}")
    p = int(m.group(1))
    k = int(m.group(2)) if m.group(2) else None
    mod = None
    if m.group(3):
        try:
            mod = [int(c) for c in m.group(3).split(",") if c.strip()]
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        if k is None:
            k = len(mod) - 1
    try:
        return FieldSpec(p, k or 1, mod)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_field_spec(spec: FieldSpec) -> str:
    return f"p={spec.p},k={spec.k},mod=" + ",".join(str(c) for c in spec.modulus)


def elem_to_json(x: FieldElem) -> list[int]:
    return list(x.coeffs)


def elem_from_json(spec: FieldSpec, data) -> FieldElem:
    if isinstance(data, int):
        return spec(data)
    try:
        return spec.from_coeffs(data)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad field element {data!r}: {exc}") from None
