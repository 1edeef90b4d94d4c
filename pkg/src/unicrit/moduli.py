"""Strata of maps with no finite critical point: enumeration, exact point counts,
a brute-force oracle over P^(2d+1)(F_q), dimension checks, the conjugacy normal
form, the degree-p quadric model and the L_d decomposition."""

from __future__ import annotations

import csv
import io
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .cfrac import Signature, UnicriticalForm, build_from_form, detect_unicritical_form, signature
from .critlocus import unicritical_point, unique_root_candidate
from .errors import LimitExceededError, UnicritError
from .field import FieldElem, FieldSpec, enumerate_field, enumeration_limit
from .poly import Poly, mul_codes, resultant_dd
from .ratfunc import (
    INFINITY,
    MobiusMap,
    RatFunc,
    conjugate,
    enumerate_pgl2,
    make_ratfunc,
    proj_coords,
    ratfunc_to_json,
    wronskian,
)


class DegenerateOrbitError(UnicritError):
    """The critical point, critical value and its image are not pairwise distinct."""


# -- signatures and strata ------------------------------------------------------------

@dataclass(frozen=True)
class StratumSpec:
    d: int
    p: int
    kappa: Signature

    def __post_init__(self):
        if not isinstance(self.kappa, Signature):
            object.__setattr__(self, "kappa", Signature(tuple(self.kappa)))
        validate_signature(self.kappa, self.d, self.p)


def validate_signature(kappa: Signature, d: int, p: int) -> None:
    k = tuple(kappa)
    if sum(k) != d:
        raise ValueError(f"signature {k} does not sum to d = {d}")
    n = len(k) - 1
    for i, ki in enumerate(k):
        if i == n:
            ok = ki == 1 or (ki >= p and ki % p == 0)
        elif i == 0:
            ok = ki % p == 0
        else:
            ok = ki >= p and ki % p == 0
        if not ok:
            raise ValueError(f"signature {k} is not realizable with no finite critical point (p = {p})")


def valid_signatures(d: int, p: int) -> list[Signature]:
    """Signatures of degree-d maps with no finite critical point, shortest first."""
    if d < 1:
        raise ValueError("degree must be positive")
    if d % p not in (0, 1):
        return []
    out = []

    def tails(remaining):
        # compositions of `remaining` into interior p-multiples followed by a last entry (p-multiple or 1)
        if remaining == 1 or (remaining >= p and remaining % p == 0):
            yield (remaining,)
        for first in range(p, remaining, p):
            for rest in tails(remaining - first):
                yield (first,) + rest

    if d == 1 or d % p == 0:
        out.append((d,))
    for k0 in range(0, d, p):
        for rest in tails(d - k0):
            out.append((k0,) + rest)
    out.sort(key=lambda k: (len(k), tuple(-x for x in k)))
    return [Signature(k) for k in out]


def generic_signature(d: int, p: int) -> Signature:
    """kappa° = (0, p, ..., p) or (0, p, ..., p, 1)."""
    if d % p == 0:
        return Signature((0,) + (p,) * (d // p))
    if d % p == 1:
        return Signature((0,) + (p,) * ((d - 1) // p) + (1,))
    raise ValueError(f"no unicritical maps of degree {d} in characteristic {p}")


def _slots(kappa: Signature, p: int) -> list[tuple[str, int]]:
    """Parameter slot for each q_i: ('const', 0) ranges over F, ('exact', m) over degree-m polys."""
    k = tuple(kappa)
    n = len(k) - 1
    slots = []
    for i, ki in enumerate(k):
        if (i == 0 and n >= 1 and ki == 0) or (i == n and ki == 1):
            slots.append(("const", 0))
        else:
            slots.append(("exact", ki // p))
    return slots


def _int_poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _int_poly_add(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def int_poly_degree(a: list[int]) -> int:
    for i in range(len(a) - 1, -1, -1):
        if a[i]:
            return i
    return -1


def stratum_count_poly(s: StratumSpec) -> list[int]:
    """Integer coefficients (constant first) of the closed-form count as a polynomial in q."""
    out = [-1, 1]  # the slot for a
    for kind, m in _slots(s.kappa, s.p):
        factor = [0, 1] if kind == "const" else [0] * m + [-1, 1]
        out = _int_poly_mul(out, factor)
    return out


def eval_int_poly(a: list[int], q: int) -> int:
    return sum(c * q**i for i, c in enumerate(a))


def stratum_count(s: StratumSpec, q: int) -> int:
    """Number of F_q-points of the stratum: q per constant slot, (q-1)q^m per exact slot, (q-1) for a."""
    total = q - 1
    for kind, m in _slots(s.kappa, s.p):
        total *= q if kind == "const" else (q - 1) * q**m
    return total


def total_count_poly(d: int, p: int) -> list[int]:
    out = [0]
    for kappa in valid_signatures(d, p):
        out = _int_poly_add(out, stratum_count_poly(StratumSpec(d, p, kappa)))
    return out


def _polys_exact(spec: FieldSpec, m: int):
    elems = enumerate_field(spec)
    nonzero = elems[1:]
    for lead in nonzero:
        for tail in itertools.product(elems, repeat=m):
            yield Poly(spec, list(tail) + [lead])


def _slot_values(spec: FieldSpec, kind: str, m: int):
    if kind == "const":
        return [Poly(spec, [x]) for x in enumerate_field(spec)]
    return list(_polys_exact(spec, m))


def enumerate_forms(s: StratumSpec, spec: FieldSpec, limit: int | None = None):
    """All parameter tuples (q_0, ..., q_n, a) of the stratum."""
    if spec.p != s.p:
        raise ValueError(f"field characteristic {spec.p} does not match stratum p = {s.p}")
    if stratum_count(s, spec.q) > enumeration_limit(limit):
        raise LimitExceededError(f"stratum {s.kappa} over F_{spec.q} exceeds limit")
    pools = [_slot_values(spec, kind, m) for kind, m in _slots(s.kappa, s.p)]
    units = enumerate_field(spec)[1:]
    for qs in itertools.product(*pools):
        for a in units:
            yield UnicriticalForm(tuple(qs), a)


def random_form(s: StratumSpec, spec: FieldSpec, rng) -> UnicriticalForm:
    """A uniformly random parameter tuple of the stratum, drawn from ``rng`` (a random.Random)."""
    if spec.p != s.p:
        raise ValueError(f"field characteristic {spec.p} does not match stratum p = {s.p}")
    qs = []
    for kind, m in _slots(s.kappa, s.p):
        if kind == "const":
            qs.append(Poly.from_codes(spec, [rng.randrange(spec.q)]))
        else:
            qs.append(Poly.from_codes(spec, [rng.randrange(spec.q) for _ in range(m)] + [rng.randrange(1, spec.q)]))
    return UnicriticalForm(tuple(qs), spec.elem(rng.randrange(1, spec.q)))


def enumerate_stratum(s: StratumSpec, spec: FieldSpec, limit: int | None = None):
    """Stream every map of the stratum exactly once."""
    for u in enumerate_forms(s, spec, limit):
        yield build_from_form(u)


# -- brute-force oracle over P^(2d+1) --------------------------------------------------

def projective_points(spec: FieldSpec, length: int):
    """Code tuples of P^(length-1)(F_q), first nonzero coordinate equal to 1."""
    q = spec.q
    for j in range(length):
        prefix = (0,) * j + (1,)
        for tail in itertools.product(range(q), repeat=length - j - 1):
            yield prefix + tail


def projective_count(q: int, length: int) -> int:
    return (q**length - 1) // (q - 1)


def _split(point, d):
    # (a_d..a_0, b_d..b_0) -> constant-first code lists
    return list(point[d::-1]), list(point[2 * d + 1 : d : -1])


def _deriv_codes(spec: FieldSpec, c: list[int]) -> list[int]:
    mul = spec.mul
    return [mul(i % spec.p, c[i]) for i in range(1, len(c))]


def wronskian_codes(spec: FieldSpec, fc: list[int], gc: list[int]) -> list[int]:
    """Codes of f'g - fg' (not trimmed)."""
    a = mul_codes(spec, _deriv_codes(spec, fc), gc)
    b = mul_codes(spec, fc, _deriv_codes(spec, gc))
    n = max(len(a), len(b))
    add, neg = spec.add, spec.neg
    return [add(a[i] if i < len(a) else 0, neg(b[i]) if i < len(b) else 0) for i in range(n)]


def _trimmed_degree(c: list[int]) -> int:
    for i in range(len(c) - 1, -1, -1):
        if c[i]:
            return i
    return -1


def _partition_scan(args):
    d, spec, j, mode = args
    length = 2 * d + 2
    q = spec.q
    found = []
    prefix = (0,) * j + (1,)
    for tail in itertools.product(range(q), repeat=length - j - 1):
        point = prefix + tail
        fc, gc = _split(point, d)
        w = wronskian_codes(spec, fc, gc)
        dw = _trimmed_degree(w)
        if dw < 0:
            continue
        if dw > 0:
            if mode == "infinity" or d < 2:
                continue
            if unique_root_candidate(Poly.from_codes(spec, w), 2 * d - 2) is None:
                continue
        elif mode == "any" and d < 2:
            continue
        f, g = Poly.from_codes(spec, fc), Poly.from_codes(spec, gc)
        if not resultant_dd(f, g, d):
            continue
        found.append(point)
    return found


def _scan(d: int, spec: FieldSpec, mode: str, limit: int | None, workers: int) -> list[RatFunc]:
    length = 2 * d + 2
    if projective_count(spec.q, length) > enumeration_limit(limit):
        raise LimitExceededError(
            f"P^{length - 1}(F_{spec.q}) has {projective_count(spec.q, length)} points, above limit"
        )
    jobs = [(d, spec, j, mode) for j in range(length)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_partition_scan, jobs))
    else:
        parts = [_partition_scan(job) for job in jobs]
    maps = []
    for part in parts:
        for point in part:
            fc, gc = _split(point, d)
            maps.append(make_ratfunc(Poly.from_codes(spec, fc), Poly.from_codes(spec, gc)))
    maps.sort(key=map_sort_key)
    return maps


def map_sort_key(phi: RatFunc):
    return (phi.d, tuple(x.code for x in proj_coords(phi)))


def brute_force_unicritical_at_infinity(
    d: int, spec: FieldSpec, limit: int | None = None, workers: int = 1
) -> list[RatFunc]:
    """Every phi in Rat_d(F_q) whose Wronskian is a nonzero constant, found by scanning P^(2d+1)."""
    return _scan(d, spec, "infinity", limit, workers)


def brute_force_unicritical(d: int, spec: FieldSpec, limit: int | None = None, workers: int = 1) -> list[RatFunc]:
    """Every phi in Rat_d(F_q), d >= 2, with exactly one critical point (anywhere on P^1)."""
    return _scan(d, spec, "any", limit, workers)


# -- census ------------------------------------------------------------------------

@dataclass
class CountReport:
    q: int
    d: int
    p: int
    strata: list = field(default_factory=list)
    total: int = 0
    enumerated_total: int | None = None
    brute_total: int | None = None
    brute_set_match: bool | None = None

    @property
    def agreement(self) -> bool:
        if self.brute_set_match is False:
            return False
        checks = [self.total]
        if self.enumerated_total is not None:
            checks.append(self.enumerated_total)
        if self.brute_total is not None:
            checks.append(self.brute_total)
        per_stratum = all(s.get("enumerated", s["count"]) == s["count"] for s in self.strata)
        return per_stratum and len(set(checks)) == 1

    def to_json(self) -> dict:
        out = {
            "q": self.q,
            "d": self.d,
            "p": self.p,
            "strata": [dict(s, kappa=list(s["kappa"])) for s in self.strata],
            "total": self.total,
            "brute_total": self.brute_total,
        }
        if self.enumerated_total is not None:
            out["enumerated_total"] = self.enumerated_total
        out["agreement"] = self.agreement
        return out


def count_report(d: int, spec: FieldSpec) -> CountReport:
    """Closed-form counts only."""
    rep = CountReport(q=spec.q, d=d, p=spec.p)
    for kappa in valid_signatures(d, spec.p):
        c = stratum_count(StratumSpec(d, spec.p, kappa), spec.q)
        rep.strata.append({"kappa": tuple(kappa), "count": c})
        rep.total += c
    return rep


def census(d: int, spec: FieldSpec, limit: int | None = None, workers: int = 1, brute: bool = True) -> CountReport:
    """Closed-form counts, literal stratum enumeration, and the brute-force oracle, side by side.

    Raises AssertionError when an enumerated map is duplicated or lands in the wrong stratum.
    """
    rep = count_report(d, spec)
    seen: set[RatFunc] = set()
    for entry in rep.strata:
        s = StratumSpec(d, spec.p, Signature(entry["kappa"]))
        n = 0
        for phi in enumerate_stratum(s, spec, limit):
            if phi in seen:
                raise AssertionError(f"map {phi} enumerated twice")
            if phi.d != d or tuple(signature(phi)) != entry["kappa"]:
                raise AssertionError(f"map {phi} does not belong to stratum {entry['kappa']}")
            seen.add(phi)
            n += 1
        entry["enumerated"] = n
    rep.enumerated_total = len(seen)
    if brute:
        found = brute_force_unicritical_at_infinity(d, spec, limit, workers)
        rep.brute_total = len(found)
        rep.brute_set_match = set(found) == seen
    return rep


def count_table_csv(d: int, p: int, qs) -> str:
    """CSV of closed-form stratum counts against q."""
    sigs = valid_signatures(d, p)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["q"] + [str(k) for k in sigs] + ["total"])
    for q in qs:
        counts = [stratum_count(StratumSpec(d, p, k), q) for k in sigs]
        writer.writerow([q] + counts + [sum(counts)])
    return buf.getvalue()


# -- dimensions --------------------------------------------------------------------

def divided_difference_degree(xs, ys) -> int:
    """Degree of the polynomial interpolating (xs, ys), confirmed by a vanishing top difference."""
    xs = [Fraction(x) for x in xs]
    table = [Fraction(y) for y in ys]
    n = len(xs)
    orders = [table[0]]
    for k in range(1, n):
        table = [(table[i + 1] - table[i]) / (xs[i + k] - xs[i]) for i in range(len(table) - 1)]
        orders.append(table[0])
    nonzero = [k for k, v in enumerate(orders) if v != 0]
    deg = nonzero[-1] if nonzero else -1
    if deg >= n - 1:
        raise ValueError(f"{n} sample points cannot confirm a polynomial degree of at least {deg}")
    return deg


def count_polynomial_degree(d: int, p: int, qs) -> int:
    """Degree in q of N(q) = sum of stratum counts, from exact divided differences."""
    qs = list(qs)
    if len(set(qs)) != len(qs):
        raise ValueError("sample points must be distinct")
    sigs = valid_signatures(d, p)
    ys = [sum(stratum_count(StratumSpec(d, p, k), q) for k in sigs) for q in qs]
    return divided_difference_degree(qs, ys)


def dim_unicritical_at_infinity(d: int, p: int) -> int:
    if d % p == 0:
        return 2 + 2 * d // p
    if d % p == 1:
        return 3 + 2 * (d - 1) // p
    raise ValueError(f"no unicritical maps of degree {d} in characteristic {p}")


def dim_unicritical(d: int, p: int) -> int:
    """dim U_d: one more than the fiber over a point of the critical-point curve."""
    return dim_unicritical_at_infinity(d, p) + 1


def sample_qs(d: int, p: int) -> list[int]:
    """Enough prime powers of p to pin the count polynomial's degree."""
    need = dim_unicritical_at_infinity(d, p) + 2
    return [p**j for j in range(1, need + 1)]


# -- ramification classes ----------------------------------------------------------

def infinity_ram_index(kappa: Signature) -> int:
    """Ramification index at infinity of every map with this signature and no finite critical point."""
    k = tuple(kappa)
    if len(k) == 1 or k[0] > 0:
        return k[0]
    return k[1]


def _check_classes(d: int, e: int, p: int) -> None:
    if e <= 1 or d <= 1:
        raise ValueError("need d, e > 1")
    if e % p:
        raise ValueError(f"ramification index {e} is not divisible by p = {p}")
    if e > d:
        raise ValueError("ramification index exceeds the degree")
    if d % p not in (0, 1):
        raise ValueError(f"no unicritical maps of degree {d} in characteristic {p}")


def classes_dimension(d: int, e: int, p: int) -> int:
    """Dimension of postcomposition classes of degree-d maps ramified only at one point, with index e."""
    _check_classes(d, e, p)
    if d % p == 0:
        return (2 * d - e) // p
    return 1 + (2 * d - 2 - e) // p


def classes_signature(d: int, e: int, p: int) -> Signature:
    """The generic signature (0, e, p, ..., p[, 1]) of maps ramified at infinity with index e."""
    _check_classes(d, e, p)
    if d % p == 0:
        return Signature((0, e) + (p,) * ((d - e) // p))
    return Signature((0, e) + (p,) * ((d - 1 - e) // p) + (1,))


def classes_count_poly(d: int, e: int, p: int) -> list[int]:
    """Count polynomial of all unicritical-at-infinity maps with ramification index e at infinity."""
    _check_classes(d, e, p)
    out = [0]
    for kappa in valid_signatures(d, p):
        if infinity_ram_index(kappa) == e:
            out = _int_poly_add(out, stratum_count_poly(StratumSpec(d, p, kappa)))
    return out


# -- conjugacy normal form -----------------------------------------------------------

def _p1_inv(x, spec):
    if x is INFINITY:
        return spec.zero
    return INFINITY if not x else x.inverse()


def beta_value(constants, spec: FieldSpec):
    """1 - 1/[x_2, ..., x_n] evaluated on P^1 (an empty tail is infinity)."""
    val = INFINITY
    for x in reversed(list(constants)):
        inv = _p1_inv(val, spec)
        val = INFINITY if inv is INFINITY else x + inv
    inv = _p1_inv(val, spec)
    if inv is INFINITY:
        return INFINITY
    return spec.one - inv


def in_Y(psi: RatFunc) -> bool:
    """Unique critical point infinity, psi(infinity) = 0 and psi(0) = 1."""
    spec = psi.spec
    return (
        psi.d >= 2
        and unicritical_point(psi) is INFINITY
        and psi(INFINITY) == spec.zero
        and psi(spec.zero) == spec.one
    )


def beta_relation_holds(psi: RatFunc) -> bool:
    u = detect_unicritical_form(psi)
    if u is None or len(u.q) < 2 or not u.q[0].is_zero():
        return False
    spec = psi.spec
    tail = [qi.coeff(0) for qi in u.q[2:]]
    return u.q[1].coeff(0) == beta_value(tail, spec)


def normal_form_Y(phi: RatFunc) -> RatFunc:
    """Conjugate phi so its critical point, critical value and the next image sit at infinity, 0, 1."""
    spec = phi.spec
    c = unicritical_point(phi)
    if c is None:
        raise ValueError("map is not unicritical")
    v1 = phi(c)
    v2 = phi(v1)
    pts = [c, v1, v2]
    if len({("inf",) if x is INFINITY else (x.code,) for x in pts}) < 3:
        raise DegenerateOrbitError("critical orbit points are not distinct")
    sigma = MobiusMap.through_points(c, v1, v2, spec)
    psi = conjugate(sigma, phi)
    if not in_Y(psi) or not beta_relation_holds(psi):
        raise AssertionError(f"normal form {psi} fails the Y conditions")
    return psi


def y_forms(d: int, spec: FieldSpec, limit: int | None = None) -> list[RatFunc]:
    """All maps of degree d over F_q in Y, found by filtering the strata."""
    out = []
    for kappa in valid_signatures(d, spec.p):
        if kappa.entries[0] != 0:
            continue
        for phi in enumerate_stratum(StratumSpec(d, spec.p, kappa), spec, limit):
            if in_Y(phi):
                out.append(phi)
    out.sort(key=map_sort_key)
    return out


def find_conjugator(phi: RatFunc, psi: RatFunc, group=None) -> MobiusMap | None:
    """Some sigma in PGL_2(F_q) with sigma^-1 o phi o sigma = psi, or None."""
    group = group if group is not None else enumerate_pgl2(phi.spec)
    for sigma in group:
        if conjugate(sigma, phi) == psi:
            return sigma
    return None


def y_injectivity_violations(maps, spec: FieldSpec) -> list[tuple[RatFunc, RatFunc]]:
    """Pairs of distinct maps in ``maps`` that are conjugate over F_q."""
    group = enumerate_pgl2(spec)
    index = set(maps)
    bad = []
    for phi in maps:
        for sigma in group:
            psi = conjugate(sigma, phi)
            if psi != phi and psi in index:
                bad.append((phi, psi))
    return bad


# -- degree-p quadric model --------------------------------------------------------

def quadric_conditions(coords, spec: FieldSpec) -> bool:
    """(a_p, a_1, a_0, b_p, b_1, b_0): a_1 b_p = a_p b_1, Res_p != 0, a_1 b_0 != a_0 b_1."""
    p = spec.p
    ap, a1, a0, bp, b1, b0 = (spec(x) for x in coords)
    f = Poly(spec, [a0, a1] + [0] * (p - 2) + [ap])
    g = Poly(spec, [b0, b1] + [0] * (p - 2) + [bp])
    return a1 * bp == ap * b1 and bool(resultant_dd(f, g, p)) and a1 * b0 != a0 * b1


def lp_coords(phi: RatFunc) -> tuple[FieldElem, ...]:
    """(a_p, a_1, a_0, b_p, b_1, b_0) of a degree-p map supported on exponents 0, 1, p."""
    p = phi.spec.p
    if phi.d != p:
        raise ValueError(f"map has degree {phi.d}, expected {p}")
    for poly in (phi.num, phi.den):
        if any(c for i, c in enumerate(poly.codes) if i not in (0, 1, p)):
            raise ValueError("map is not supported on exponents 0, 1, p")
    f, g = phi.num, phi.den
    return (f.coeff(p), f.coeff(1), f.coeff(0), g.coeff(p), g.coeff(1), g.coeff(0))


def quadric_membership_p(phi: RatFunc) -> bool:
    return quadric_conditions(lp_coords(phi), phi.spec)


# -- the L_d decomposition -----------------------------------------------------------

@dataclass(frozen=True)
class LdPoint:
    """f = f1(z^p) + z f2(z^p), g = g1(z^p) + z g2(z^p)."""

    f1: Poly
    f2: Poly
    g1: Poly
    g2: Poly

    @property
    def invariant(self) -> Poly:
        """f2 g1 - f1 g2 (a nonzero constant for maps with no finite critical point)."""
        return self.f2 * self.g1 - self.f1 * self.g2

    def to_json(self) -> dict:
        from .poly import poly_to_json

        return {k: poly_to_json(getattr(self, k)) for k in ("f1", "f2", "g1", "g2")}


def _split_residues(a: Poly) -> tuple[Poly, Poly]:
    p = a.spec.p
    if any(c for i, c in enumerate(a.codes) if i % p not in (0, 1)):
        raise ValueError("coefficient at an exponent not congruent to 0 or 1 mod p")
    return Poly.from_codes(a.spec, a.codes[::p]), Poly.from_codes(a.spec, a.codes[1::p])


def ld_decompose(phi: RatFunc) -> LdPoint:
    w = wronskian(phi)
    if w.degree != 0:
        raise ValueError("map has a finite critical point (Wronskian is not a nonzero constant)")
    f1, f2 = _split_residues(phi.num)
    g1, g2 = _split_residues(phi.den)
    pt = LdPoint(f1, f2, g1, g2)
    inv = pt.invariant
    if inv.degree != 0:
        raise AssertionError("f2 g1 - f1 g2 is not a nonzero constant")
    return pt


def maps_to_json(maps) -> list:
    return [ratfunc_to_json(phi) for phi in maps]
