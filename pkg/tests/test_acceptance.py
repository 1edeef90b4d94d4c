"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py`` (lines are printed even without -s)
or directly with ``python3 tests/test_acceptance.py``.
"""

import random
import time

import pytest

from conftest import R, rat_d
from unicrit.cfrac import build_from_form, detect_unicritical_form
from unicrit.field import FieldSpec
from unicrit.moduli import (
    DegenerateOrbitError,
    StratumSpec,
    brute_force_unicritical,
    census,
    classes_count_poly,
    classes_dimension,
    count_polynomial_degree,
    int_poly_degree,
    normal_form_Y,
    projective_points,
    quadric_membership_p,
    random_form,
    sample_qs,
    total_count_poly,
    valid_signatures,
    y_forms,
    y_injectivity_violations,
)
from unicrit.poly import Poly, gcd, resultant_dd
from unicrit.ratfunc import conjugate, enumerate_pgl2, is_inseparable, make_ratfunc, wronskian
from unicrit.reduction import (
    has_good_reduction,
    lift_corpus,
    normalize_model,
    parse_local_poly,
    reduce_map,
    verify_congruence,
)

BIG = 10**7


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail

    return emit


def test_criterion_1_constant_wronskian_iff_form(report):
    start = time.perf_counter()
    checked = mismatches = 0
    for p, d, q in [(2, 2, 2), (2, 2, 4), (2, 3, 2), (3, 3, 3), (2, 4, 2)]:
        spec = FieldSpec(p, 1 if q == p else 2)
        for phi in rat_d(spec, d):
            w = wronskian(phi)
            const = not w.is_zero() and w.degree == 0
            form = detect_unicritical_form(phi) is not None
            checked += 1
            mismatches += const != form
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed <= 60
    report(1, ok, f"{checked} maps, {mismatches} mismatches, {elapsed:.1f}s")


def test_criterion_2_no_unicritical_maps_off_congruence(report):
    found = {}
    for p, d, q in [(3, 2, 3), (3, 2, 9), (3, 5, 3), (5, 2, 5), (5, 3, 5)]:
        assert d % p not in (0, 1)
        spec = FieldSpec(p, 1 if q == p else 2)
        found[(p, d, q)] = len(brute_force_unicritical(d, spec, limit=BIG))
    report(2, not any(found.values()), f"unicritical counts {found}")


def test_criterion_3_census_agreement(report):
    expected = {(2, 2, 2): 6, (2, 2, 4): 180, (2, 3, 2): 12, (3, 3, 3): 48}
    got = {}
    ok = True
    for (p, d, q), total in expected.items():
        rep = census(d, FieldSpec(p, 1 if q == p else 2), limit=BIG)
        got[(p, d, q)] = (rep.total, rep.enumerated_total, rep.brute_total)
        ok &= rep.agreement and rep.total == rep.enumerated_total == rep.brute_total == total
    report(3, ok, f"(closed, enumerated, brute) {got}")


def test_criterion_4_dimension_formulas(report):
    bad = []
    for p in (2, 3):
        for d in (p, 2 * p, p + 1, 2 * p + 1):
            want = 2 + 2 * d // p if d % p == 0 else 3 + 2 * (d - 1) // p
            symbolic = int_poly_degree(total_count_poly(d, p))
            sampled = count_polynomial_degree(d, p, sample_qs(d, p))
            if not symbolic == sampled == want:
                bad.append((p, d, want, symbolic, sampled))
    report(4, not bad, f"mismatches {bad}")


def lp_shaped(spec):
    """Every degree-p pair supported on exponents 0, 1, p, as points of P^5."""
    p = spec.p
    for pt in projective_points(spec, 6):
        ap, a1, a0, bp, b1, b0 = pt
        f = Poly.from_codes(spec, [a0, a1] + [0] * (p - 2) + [ap])
        g = Poly.from_codes(spec, [b0, b1] + [0] * (p - 2) + [bp])
        if resultant_dd(f, g, p):
            yield make_ratfunc(f, g)


def test_criterion_5_quadric_model(report):
    checked = mismatches = members = 0
    for spec in (FieldSpec(2), FieldSpec(2, 2), FieldSpec(3), FieldSpec(3, 2)):
        for phi in lp_shaped(spec):
            w = wronskian(phi)
            cert = not w.is_zero() and w.degree == 0
            member = quadric_membership_p(phi)
            checked += 1
            members += member
            mismatches += cert != member
    report(5, mismatches == 0, f"{checked} maps, {members} on the quadric, {mismatches} mismatches")


def random_unicritical(spec, rng, group):
    p = spec.p
    d = rng.choice([p, p + 1, 2 * p, 2 * p + 1])
    kappa = rng.choice(valid_signatures(d, p))
    phi = build_from_form(random_form(StratumSpec(d, p, kappa), spec, rng))
    return conjugate(rng.choice(group), phi)


def test_criterion_6_normal_form(report):
    rng = random.Random(2024)
    failures = []
    for spec in (FieldSpec(2, 2), FieldSpec(3, 2)):
        group = enumerate_pgl2(spec)
        done = 0
        while done < 100:
            phi = random_unicritical(spec, rng, group)
            try:
                psi = normal_form_Y(phi)
            except DegenerateOrbitError:
                continue
            for _ in range(10):
                tau = rng.choice(group)
                if normal_form_Y(conjugate(tau, phi)) != psi:
                    failures.append((spec.q, str(phi)))
            done += 1
    violations = {q: len(y_injectivity_violations(y_forms(2, FieldSpec(2, k)), FieldSpec(2, k))) for q, k in [(2, 1), (4, 2)]}
    ok = not failures and not any(violations.values())
    report(6, ok, f"{len(failures)} invariance failures over 200 maps; Y-injectivity violations {violations}")


def test_criterion_7_classes(report):
    got = {}
    ok = True
    for p, d, e in [(2, 4, 2), (2, 4, 4), (3, 3, 3)]:
        deg = int_poly_degree(classes_count_poly(d, e, p))
        got[(p, d, e)] = deg
        ok &= deg == 3 + (2 * d - e) // p
    dims = {p: classes_dimension(p, p, p) for p in (2, 3, 5)}
    ok &= all(v == 1 for v in dims.values())
    report(7, ok, f"count degrees {got}; class dimension at d = e = p {dims}")


def test_criterion_8_reduction(report):
    corpus = []
    corpus += lift_corpus(FieldSpec(2), 2, seed=1, lifts_per_map=4)
    corpus += lift_corpus(FieldSpec(2), 3, seed=2, lifts_per_map=2)
    corpus += lift_corpus(FieldSpec(3), 2, seed=3, lifts_per_map=1)
    corpus += lift_corpus(FieldSpec(3), 3, count=400, seed=4)
    applies = counterexamples = 0
    for phi in corpus:
        assert has_good_reduction(phi)
        rep = verify_congruence(phi)
        if rep.applies:
            applies += 1
            counterexamples += not rep.congruence_ok

    F2 = FieldSpec(2)

    def local(num, den="1"):
        return normalize_model(parse_local_poly(num, F2), parse_local_poly(den, F2))

    worked = []
    rep = verify_congruence(local("z^2+1", "t*z+1"))
    worked.append(reduce_map(local("z^2+1", "t*z+1")) == R(F2, "z^2+1")
                  and (rep.applies, rep.case, rep.congruence_ok) == (True, "inseparable", True))
    rep = verify_congruence(local("z^2+t*z"))
    worked.append(reduce_map(local("z^2+t*z")) == R(F2, "z^2")
                  and (rep.applies, rep.case, rep.congruence_ok) == (True, "inseparable", True))
    rep = verify_congruence(local("z^3"))
    worked.append((rep.applies, rep.case) == (False, "not-applicable"))

    ok = len(corpus) >= 500 and counterexamples == 0 and all(worked)
    report(8, ok, f"{len(corpus)} lifts, {applies} applicable, {counterexamples} counterexamples, worked examples {worked}")


def test_criterion_9_kernel_and_reciprocal(report):
    F2 = FieldSpec(2)
    checked = mismatches = 0
    for d in (1, 2, 3):
        for phi in rat_d(F2, d):
            checked += 1
            w = wronskian(phi)
            mismatches += w.is_zero() != is_inseparable(phi)[0]
            # derivative numerator of 1/phi is -W, so the finite critical points coincide
            w_inv = wronskian(make_ratfunc(phi.den, phi.num))
            mismatches += w_inv != -w
            if not w.is_zero():
                mismatches += gcd(w, w_inv).degree != w.degree
    report(9, mismatches == 0, f"{checked} maps, {mismatches} mismatches")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
