"""Exact arithmetic kernel: prime fields, sparse polynomials, Laurent
polynomials in L, truncated series and rational functions in t, and the
text grammar for all of them."""

from .classpoly import ClassPoly, InterpolationError, interpolate_class_poly
from .fp import FpElem, ModulusMismatch, first_primes, is_prime, poly_eval
from .grammar import ParseError, parse_lt_expr, parse_poly
from .mpoly import MPoly, clear_denominators, grlex_key, integer_content
from .series import (
    NonLaurentCoefficient,
    NotExpandable,
    RationalFn,
    ZetaTruncation,
    divide_binomial,
    pade_reconstruct,
    series_of_rational,
    subseries_extract,
)

__all__ = [
    "ClassPoly",
    "FpElem",
    "InterpolationError",
    "ModulusMismatch",
    "MPoly",
    "NonLaurentCoefficient",
    "NotExpandable",
    "ParseError",
    "RationalFn",
    "ZetaTruncation",
    "clear_denominators",
    "divide_binomial",
    "first_primes",
    "grlex_key",
    "integer_content",
    "interpolate_class_poly",
    "is_prime",
    "pade_reconstruct",
    "parse_lt_expr",
    "parse_poly",
    "poly_eval",
    "series_of_rational",
    "subseries_extract",
]
