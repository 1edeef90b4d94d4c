"""Exact tools for unicritical rational functions in positive characteristic."""

from .cfrac import (
    ContFrac,
    Signature,
    UnicriticalForm,
    build_from_form,
    detect_unicritical_form,
    expand,
    reconstruct,
    signature,
)
from .critlocus import CritReport, finite_crit_in_field, is_unicritical, omega, ram_index, theta
from .errors import FieldMismatchError, LimitExceededError, ParseError, PrecisionError, UnicritError
from .field import FieldElem, FieldSpec, enumerate_field, frobenius, inverse_frobenius, parse_field_spec
from .poly import NEG_INF, Poly, derivative, gcd, inflate, insep_decompose, poly_divmod, resultant_dd
from .ratfunc import (
    INFINITY,
    MobiusMap,
    RatFunc,
    conjugate,
    is_inseparable,
    make_ratfunc,
    mobius_post,
    mobius_pre,
    proj_coords,
    wronskian,
)

from .moduli import (
    StratumSpec,
    brute_force_unicritical,
    brute_force_unicritical_at_infinity,
    census,
    enumerate_stratum,
    normal_form_Y,
    stratum_count,
    valid_signatures,
)
from .reduction import LaurentScalar, LocalRatFunc, has_good_reduction, normalize_model, reduce_map, verify_congruence

__version__ = "0.1.0"

__all__ = [
    "brute_force_unicritical",
    "brute_force_unicritical_at_infinity",
    "build_from_form",
    "census",
    "conjugate",
    "ContFrac",
    "CritReport",
    "derivative",
    "detect_unicritical_form",
    "enumerate_field",
    "enumerate_stratum",
    "expand",
    "FieldElem",
    "FieldMismatchError",
    "FieldSpec",
    "finite_crit_in_field",
    "frobenius",
    "gcd",
    "has_good_reduction",
    "INFINITY",
    "inflate",
    "insep_decompose",
    "inverse_frobenius",
    "is_inseparable",
    "is_unicritical",
    "LaurentScalar",
    "LimitExceededError",
    "LocalRatFunc",
    "make_ratfunc",
    "mobius_post",
    "mobius_pre",
    "MobiusMap",
    "NEG_INF",
    "normal_form_Y",
    "normalize_model",
    "omega",
    "parse_field_spec",
    "ParseError",
    "Poly",
    "poly_divmod",
    "PrecisionError",
    "proj_coords",
    "ram_index",
    "RatFunc",
    "reconstruct",
    "reduce_map",
    "resultant_dd",
    "Signature",
    "signature",
    "stratum_count",
    "StratumSpec",
    "theta",
    "UnicritError",
    "UnicriticalForm",
    "valid_signatures",
    "verify_congruence",
    "wronskian",
]
