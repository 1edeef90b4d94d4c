"""Command-line interface: ``unicrit <command> --field p=2,k=1 ...``.

Exit status is 0 on success, 1 on malformed input and 2 on domain errors.
JSON goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .cfrac import (
    ContFrac,
    Signature,
    UnicriticalForm,
    build_from_form,
    contfrac_from_json,
    contfrac_to_json,
    detect_unicritical_form,
    expand,
    form_from_json,
    form_to_json,
    reconstruct,
    signature,
)
from .critlocus import is_unicritical, omega
from .errors import LimitExceededError, ParseError, PrecisionError, UnicritError
from .field import FieldSpec, elem_to_json, enumeration_limit, parse_field_spec
from .moduli import (
    StratumSpec,
    census,
    classes_count_poly,
    classes_dimension,
    classes_signature,
    count_polynomial_degree,
    count_report,
    dim_unicritical,
    dim_unicritical_at_infinity,
    enumerate_stratum,
    int_poly_degree,
    ld_decompose,
    lp_coords,
    map_sort_key,
    normal_form_Y,
    quadric_membership_p,
    random_form,
    sample_qs,
    total_count_poly,
    valid_signatures,
)
from .moduli import brute_force_unicritical, brute_force_unicritical_at_infinity
from .poly import format_poly, parse_poly, poly_to_json
from .ratfunc import RatFunc, make_ratfunc, ratfunc_from_json, ratfunc_to_json, wronskian
from .reduction import (
    DEFAULT_PRECISION,
    INFINITY,
    has_good_reduction,
    laurent_resultant,
    local_from_json,
    normalize_model,
    parse_local_poly,
    reduce_map,
    reduced_degree,
    verify_congruence,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ParseError(message)


# -- input helpers ---------------------------------------------------------------

def _load_json(text: str):
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None


def _split_quotient(text: str) -> tuple[str, str]:
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            return text[:i], text[i + 1 :]
    return text, "1"


def _strip_parens(text: str) -> str:
    text = text.strip()
    while text.startswith("(") and text.endswith(")"):
        text = text[1:-1].strip()
    return text


def _field(args) -> FieldSpec:
    return parse_field_spec(args.field)


def _map(args, spec: FieldSpec) -> RatFunc:
    if args.json is not None:
        return ratfunc_from_json(spec, _load_json(args.json))
    if args.map is not None:
        if args.num is not None:
            raise ParseError("give either a map or --num/--den, not both")
        num, den = _split_quotient(args.map)
    elif args.num is not None:
        num, den = args.num, args.den or "1"
    else:
        raise ParseError("no map given (positional text, --num/--den or --json)")
    return make_ratfunc(parse_poly(_strip_parens(num), spec), parse_poly(_strip_parens(den), spec))


def _local_map(args, spec: FieldSpec):
    if args.json is not None:
        data = _load_json(args.json)
        if not isinstance(data, dict) or "num" not in data:
            raise ParseError("local map JSON needs 'num' and 'den'")
        f = local_from_json(spec, data["num"])
        g = local_from_json(spec, data.get("den", "1"))
    else:
        if args.map is not None:
            num, den = _split_quotient(args.map)
        elif args.num is not None:
            num, den = args.num, args.den or "1"
        else:
            raise ParseError("no map given (positional text, --num/--den or --json)")
        f = parse_local_poly(_strip_parens(num), spec, args.prec)
        g = parse_local_poly(_strip_parens(den), spec, args.prec)
    return normalize_model(f, g)


def _signature_arg(text: str) -> Signature:
    try:
        return Signature(tuple(int(x) for x in text.replace("(", "").replace(")", "").split(",") if x.strip()))
    except ValueError as exc:
        raise ParseError(f"malformed signature {text!r}: {exc}") from None


def _map_json(phi: RatFunc) -> dict:
    return dict(ratfunc_to_json(phi), d=phi.d, text=str(phi))


def _char(args) -> int:
    if args.p is not None:
        return args.p
    if args.field is not None:
        return _field(args).p
    raise ParseError("give --p or --field")


# -- commands ----------------------------------------------------------------------

def cmd_cfrac(args):
    spec = _field(args)
    phi = _map(args, spec)
    c = expand(phi)
    return dict(contfrac_to_json(c), text=[str(f) for f in c.quotients], signature=list(signature(phi)))


def cmd_reconstruct(args):
    spec = _field(args)
    if args.json is not None:
        c = contfrac_from_json(spec, _load_json(args.json))
    elif args.quotient:
        c = ContFrac(tuple(parse_poly(t, spec) for t in args.quotient))
    else:
        raise ParseError("give --quotient (repeatable) or --json")
    return _map_json(reconstruct(c))


def cmd_signature(args):
    phi = _map(args, _field(args))
    return {"signature": list(signature(phi)), "degree": phi.d}


def cmd_wronskian(args):
    phi = _map(args, _field(args))
    w = wronskian(phi)
    out = {"wronskian": poly_to_json(w), "text": str(w), "degree": phi.d}
    if not w.is_zero() and phi.d >= 2:
        out["omega"] = [elem_to_json(x) for x in omega(phi)]
    return out


def cmd_is_unicritical(args):
    spec = _field(args)
    phi = _map(args, spec)
    scan = spec.q <= enumeration_limit(args.limit)
    out = is_unicritical(phi, scan_roots=scan).to_json()
    out["degree"] = phi.d
    return out


def cmd_detect_form(args):
    phi = _map(args, _field(args))
    u = detect_unicritical_form(phi)
    if u is None:
        return {"form": None}
    return {"form": form_to_json(u), "q_text": [format_poly(qi, "w") for qi in u.q], "a": elem_to_json(u.a)}


def cmd_build(args):
    spec = _field(args)
    if args.random:
        if args.degree is None:
            raise ParseError("--random needs --degree")
        rng = random.Random(args.seed)
        sigs = [args.signature] if args.signature else valid_signatures(args.degree, spec.p)
        if not sigs:
            raise UnicritError(f"no unicritical maps of degree {args.degree} in characteristic {spec.p}")
        kappa = rng.choice(sigs)
        u = random_form(StratumSpec(args.degree, spec.p, kappa), spec, rng)
    elif args.json is not None:
        u = form_from_json(spec, _load_json(args.json))
    elif args.q and args.a is not None:
        u = UnicriticalForm(tuple(parse_poly(t, spec, "w") for t in args.q), spec(args.a))
    else:
        raise ParseError("give --q (repeatable) with --a, --json, or --random")
    phi = build_from_form(u)
    return dict(_map_json(phi), form=form_to_json(u), signature=list(signature(phi)))


def cmd_signatures(args):
    p = _char(args)
    sigs = valid_signatures(args.degree, p)
    return {"d": args.degree, "p": p, "signatures": [list(k) for k in sigs]}


def cmd_enumerate(args):
    spec = _field(args)
    s = StratumSpec(args.degree, spec.p, args.signature)
    maps = list(enumerate_stratum(s, spec, args.limit))
    maps.sort(key=map_sort_key)
    total = len(maps)
    if args.sample is not None and args.sample < total:
        rng = random.Random(args.seed)
        maps = sorted(rng.sample(maps, args.sample), key=map_sort_key)
    return {"signature": list(s.kappa), "count": total, "maps": [_map_json(m) for m in maps]}


def cmd_count(args):
    spec = _field(args)
    out = count_report(args.degree, spec).to_json()
    for key in ("brute_total", "agreement"):
        out.pop(key, None)
    out["count_poly"] = total_count_poly(args.degree, spec.p)
    return out


def cmd_brute_count(args):
    spec = _field(args)
    scan = brute_force_unicritical if args.anywhere else brute_force_unicritical_at_infinity
    maps = scan(args.degree, spec, args.limit, args.workers)
    out = {"q": spec.q, "d": args.degree, "p": spec.p, "mode": "any" if args.anywhere else "infinity", "count": len(maps)}
    if args.list:
        out["maps"] = [_map_json(m) for m in maps]
    return out


def cmd_census(args):
    return census(args.degree, _field(args), args.limit, args.workers).to_json()


def cmd_dim(args):
    p, d = _char(args), args.degree
    poly = total_count_poly(d, p)
    qs = sample_qs(d, p)
    expected = dim_unicritical_at_infinity(d, p)
    sampled = count_polynomial_degree(d, p, qs)
    return {
        "d": d,
        "p": p,
        "dim_at_infinity": expected,
        "dim": dim_unicritical(d, p),
        "count_poly": poly,
        "count_degree": int_poly_degree(poly),
        "sampled_degree": sampled,
        "sample_qs": qs,
        "agreement": int_poly_degree(poly) == sampled == expected,
    }


def cmd_classes_dim(args):
    p, d, e = _char(args), args.degree, args.e
    poly = classes_count_poly(d, e, p)
    dim = classes_dimension(d, e, p)
    return {
        "d": d,
        "e": e,
        "p": p,
        "dimension": dim,
        "signature": list(classes_signature(d, e, p)),
        "count_poly": poly,
        "count_degree": int_poly_degree(poly),
        "agreement": int_poly_degree(poly) == dim + 3,
    }


def cmd_normal_form(args):
    phi = _map(args, _field(args))
    return _map_json(normal_form_Y(phi))


def cmd_quadric_p(args):
    phi = _map(args, _field(args))
    member = quadric_membership_p(phi)
    w = wronskian(phi)
    return {
        "coords": [elem_to_json(x) for x in lp_coords(phi)],
        "quadric": member,
        "certificate": w.degree == 0,
        "agreement": member == (w.degree == 0),
    }


def cmd_ld_decompose(args):
    pt = ld_decompose(_map(args, _field(args)))
    return dict(pt.to_json(), invariant=poly_to_json(pt.invariant))


def _reduced_json(red):
    return "infinity" if red is INFINITY else _map_json(red)


def cmd_reduce(args):
    phi = _local_map(args, _field(args))
    red = reduce_map(phi)
    return {"model": phi.to_json(), "model_text": str(phi), "degree": phi.d, "reduced": _reduced_json(red), "reduced_degree": reduced_degree(red)}


def cmd_good_reduction(args):
    phi = _local_map(args, _field(args))
    red = reduce_map(phi)
    return {
        "good": has_good_reduction(phi),
        "degree": phi.d,
        "reduced": _reduced_json(red),
        "reduced_degree": reduced_degree(red),
        "resultant": laurent_resultant(phi.num, phi.den, phi.d).to_json(),
    }


def cmd_verify_congruence(args):
    return verify_congruence(_local_map(args, _field(args))).to_json()


def dumps(out, indent: int = 0) -> str:
    """Indented JSON where lists without nested objects stay on one line."""
    pad = "  " * indent
    if isinstance(out, dict):
        if not out:
            return "{}"
        items = [f'{pad}  {json.dumps(k)}: {dumps(v, indent + 1)}' for k, v in out.items()]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(out, list) and any(isinstance(x, dict) for x in out):
        items = [f"{pad}  {dumps(v, indent + 1)}" for v in out]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    return json.dumps(out, separators=(", ", ": "))


# -- table rendering ---------------------------------------------------------------

def _render_table(out) -> str:
    if not isinstance(out, dict):
        return json.dumps(out)
    width = max((len(k) for k in out), default=0)
    lines = []
    for key, val in out.items():
        text = val if isinstance(val, str) else json.dumps(val, separators=(",", ":"))
        lines.append(f"{key.ljust(width)}  {text}")
    return "\n".join(lines)


# -- parser ------------------------------------------------------------------------

def _add_map_args(sp, local: bool = False):
    sp.add_argument("map", nargs="?", help="inline map text, e.g. '(z^2+1)/(z)'")
    sp.add_argument("--num", help="numerator text")
    sp.add_argument("--den", help="denominator text (default 1)")
    sp.add_argument("--json", help="map as JSON, or @file")
    if local:
        sp.add_argument("--prec", type=int, default=DEFAULT_PRECISION, help="relative t-adic precision")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="unicrit", description="Unicritical rational maps over finite fields.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="p=2", help="field spec, e.g. p=2,k=2 or p=2,k=2,mod=1,1,1")
    common.add_argument("--format", choices=["json", "table"], default="json")
    common.add_argument("--limit", type=int, default=None, help="enumeration size guard (env UNICRIT_LIMIT)")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def add(name, func, help_text, local=False, map_args=True):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        if map_args:
            _add_map_args(sp, local)
        sp.set_defaults(func=func)
        return sp

    add("cfrac", cmd_cfrac, "continued fraction expansion")
    sp = add("reconstruct", cmd_reconstruct, "map from partial quotients", map_args=False)
    sp.add_argument("--quotient", action="append", help="partial quotient text (repeat, f_0 first)")
    sp.add_argument("--json", help="continued fraction JSON, or @file")
    add("signature", cmd_signature, "signature of a map")
    add("wronskian", cmd_wronskian, "Wronskian f'g - fg'")
    add("is-unicritical", cmd_is_unicritical, "critical-point report")
    add("detect-form", cmd_detect_form, "witness for having no finite critical point")
    sp = add("build", cmd_build, "map from (q_0, ..., q_n; a)", map_args=False)
    sp.add_argument("--q", action="append", help="q_i as a polynomial in w (repeat, q_0 first)")
    sp.add_argument("--a", type=int, help="the linear coefficient a")
    sp.add_argument("--json", help="form JSON {'q': [...], 'a': ...}, or @file")
    sp.add_argument("--random", action="store_true", help="draw a random form")
    sp.add_argument("--degree", type=int)
    sp.add_argument("--signature", type=_signature_arg)
    sp.add_argument("--seed", type=int, default=0)
    sp = add("signatures", cmd_signatures, "valid signatures for (d, p)", map_args=False)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--p", type=int)
    sp = add("enumerate", cmd_enumerate, "all maps of one stratum", map_args=False)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--signature", type=_signature_arg, required=True)
    sp.add_argument("--sample", type=int, help="report a seeded random subset of this size")
    sp.add_argument("--seed", type=int, default=0)
    sp = add("count", cmd_count, "closed-form stratum counts", map_args=False)
    sp.add_argument("--degree", type=int, required=True)
    for name, func, text in (
        ("brute-count", cmd_brute_count, "brute-force scan of P^(2d+1)"),
        ("census", cmd_census, "closed form, enumeration and brute force side by side"),
    ):
        sp = add(name, func, text, map_args=False)
        sp.add_argument("--degree", type=int, required=True)
        sp.add_argument("--workers", type=int, default=1)
        if name == "brute-count":
            sp.add_argument("--anywhere", action="store_true", help="critical point anywhere, not just infinity")
            sp.add_argument("--list", action="store_true", help="include the maps")
    sp = add("dim", cmd_dim, "dimension formula and count-polynomial degree", map_args=False)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--p", type=int)
    sp = add("classes-dim", cmd_classes_dim, "postcomposition classes with ramification e at infinity", map_args=False)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--e", type=int, required=True)
    sp.add_argument("--p", type=int)
    add("normal-form", cmd_normal_form, "conjugacy normal form")
    add("quadric-p", cmd_quadric_p, "degree-p quadric membership")
    add("ld-decompose", cmd_ld_decompose, "f = f1(z^p) + z f2(z^p) decomposition")
    add("reduce", cmd_reduce, "normalized model and reduction mod t", local=True)
    add("good-reduction", cmd_good_reduction, "good reduction test", local=True)
    add("verify-congruence", cmd_verify_congruence, "degree congruence for the reduction", local=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        out = args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (UnicritError, LimitExceededError, PrecisionError, ValueError, ZeroDivisionError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "table":
        print(_render_table(out))
    else:
        print(dumps(out))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
