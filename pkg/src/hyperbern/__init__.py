"""Exact-rational hypergeometric Bernoulli numbers, polynomials, and identity certification."""

from .algebra import (
    BiPoly,
    PowerSeries,
    Rational,
    UniPoly,
    format_rational,
    parse_rational,
    rat,
)
from .core import (
    APolyTable,
    HBNumberTable,
    HBPolyTable,
    a_poly,
    a_poly_at_zero,
    hb_higher_polys_recurrence,
    hb_higher_polys_series,
    hb_numbers,
    hb_order_step,
    hb_polys,
    mult_operator_apply,
    normalized_denominator,
)
from .identities import ALL_SUITES, SuiteConfig, VerifyReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Rational",
    "UniPoly",
    "BiPoly",
    "PowerSeries",
    "rat",
    "format_rational",
    "parse_rational",
    "HBNumberTable",
    "HBPolyTable",
    "APolyTable",
    "normalized_denominator",
    "hb_numbers",
    "hb_polys",
    "hb_higher_polys_series",
    "hb_higher_polys_recurrence",
    "hb_order_step",
    "a_poly",
    "a_poly_at_zero",
    "mult_operator_apply",
    "VerifyReport",
    "SuiteConfig",
    "ALL_SUITES",
    "run_suite",
]
