"""Continued fractions [f_0, ..., f_n] of rational functions and the unicritical normal form."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError
from .field import FieldElem, FieldSpec, elem_from_json, elem_to_json
from .poly import Poly, deg_plus, inflate, insep_decompose, poly_divmod, poly_from_json, poly_to_json
from .ratfunc import RatFunc, make_ratfunc


@dataclass(frozen=True)
class ContFrac:
    quotients: tuple[Poly, ...]

    def __post_init__(self):
        if not self.quotients:
            raise ValueError("a continued fraction needs at least f_0")
        for i, f in enumerate(self.quotients[1:], start=1):
            if f.degree < 1:
                raise ValueError(f"partial quotient f_{i} = {f} must be nonconstant")

    @property
    def n(self) -> int:
        return len(self.quotients) - 1

    def __str__(self) -> str:
        return "[" + ", ".join(str(f) for f in self.quotients) + "]"


@dataclass(frozen=True)
class Signature:
    entries: tuple[int, ...]

    def __post_init__(self):
        if not self.entries or self.entries[0] < 0 or any(k < 1 for k in self.entries[1:]):
            raise ValueError(f"invalid signature {self.entries}")

    @property
    def degree(self) -> int:
        return sum(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.entries)) + ")"


@dataclass(frozen=True)
class UnicriticalForm:
    """Parameters (q_0, ..., q_n; a) of [q_0(z^p), ..., q_{n-1}(z^p), q_n(z^p) + a z].

    The q_i are polynomials in the deflated variable w = z^p.
    """

    q: tuple[Poly, ...]
    a: FieldElem

    def __post_init__(self):
        if not self.q:
            raise ValueError("q_list must be nonempty")
        if not self.a:
            raise ValueError("the linear coefficient a must be nonzero")
        for i, qi in enumerate(self.q[1:-1], start=1):
            if qi.degree < 1:
                raise ValueError(f"interior q_{i} must be nonconstant")

    @property
    def spec(self) -> FieldSpec:
        return self.a.spec


def expand(phi: RatFunc) -> ContFrac:
    """Euclid-style expansion f/g = f_0 + 1/(f_1 + 1/(...))."""
    a, b = phi.num, phi.den
    if b.is_zero():
        raise ValueError("the constant map infinity has no continued fraction")
    quotients = []
    while True:
        qt, r = poly_divmod(a, b)
        quotients.append(qt)
        if r.is_zero():
            break
        a, b = b, r
    return ContFrac(tuple(quotients))


def reconstruct_pair(quotients) -> tuple[Poly, Poly]:
    """Unreduced numerator/denominator of [f_0, ..., f_n] via the backward recursion."""
    quotients = list(quotients)
    spec = quotients[0].spec
    num, den = quotients[-1], Poly.constant(spec, 1)
    for f in reversed(quotients[:-1]):
        num, den = f * num + den, num
    return num, den


def reconstruct(c: ContFrac) -> RatFunc:
    return make_ratfunc(*reconstruct_pair(c.quotients))


def cfrac_degree(c: ContFrac) -> int:
    """max(deg f_0, 0) + sum of deg f_i for i >= 1."""
    return deg_plus(c.quotients[0].degree) + sum(f.degree for f in c.quotients[1:])


def signature_of(c: ContFrac) -> Signature:
    return Signature((deg_plus(c.quotients[0].degree),) + tuple(f.degree for f in c.quotients[1:]))


def signature(phi: RatFunc) -> Signature:
    return signature_of(expand(phi))


def detect_unicritical_form(phi: RatFunc) -> UnicriticalForm | None:
    """Witness (q_list, a) when phi = [q_0(z^p), ..., q_n(z^p) + a z], else None."""
    if phi.den.is_zero():
        return None
    quotients = expand(phi).quotients
    qs = []
    for f in quotients[:-1]:
        f1, f2 = insep_decompose(f)
        if f2:
            return None
        qs.append(f1)
    q_last, sep = insep_decompose(quotients[-1])
    if sep.degree != 1 or sep.codes[0] != 0:
        return None
    qs.append(q_last)
    return UnicriticalForm(tuple(qs), sep.leading)


def build_from_form(u: UnicriticalForm, p: int | None = None) -> RatFunc:
    """The map [q_0(z^p), ..., q_n(z^p) + a z]."""
    spec = u.spec
    if p is not None and p != spec.p:
        raise ValueError(f"characteristic {p} does not match the field {spec}")
    fs = [inflate(qi, 1) for qi in u.q]
    fs[-1] = fs[-1] + Poly(spec, [0, u.a])
    return reconstruct(ContFrac(tuple(fs)))


# -- JSON ---------------------------------------------------------------------------

def contfrac_to_json(c: ContFrac) -> dict:
    return {"quotients": [poly_to_json(f) for f in c.quotients]}


def contfrac_from_json(spec: FieldSpec, data) -> ContFrac:
    if isinstance(data, dict):
        data = data.get("quotients")
    if not isinstance(data, list) or not data:
        raise ParseError(f"bad continued fraction JSON {data!r}")
    return ContFrac(tuple(poly_from_json(spec, f) for f in data))


def form_to_json(u: UnicriticalForm) -> dict:
    return {"q": [poly_to_json(qi) for qi in u.q], "a": elem_to_json(u.a)}


def form_from_json(spec: FieldSpec, data) -> UnicriticalForm:
    if not isinstance(data, dict) or "q" not in data or "a" not in data:
        raise ParseError(f"bad unicritical form JSON {data!r}")
    return UnicriticalForm(tuple(poly_from_json(spec, qi) for qi in data["q"]), elem_from_json(spec, data["a"]))
