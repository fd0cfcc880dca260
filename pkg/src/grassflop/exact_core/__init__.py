"""Exact arithmetic substrate.

Big rationals are ``fractions.Fraction`` (always reduced, positive
denominator).  On top of that this subpackage provides sparse multivariate
polynomials with a graded-lex term order, rational functions canonicalized
by content normalization, factored products of linear forms (the shape all
I-function denominators take), and truncated multi-graded formal series
with Laurent-in-z coefficients.
"""

from .poly import PolyRing, Poly, RatFn
from .linfactor import Factored, canon_linear, fold_terms
from .series import ZLaurent, VarSpec, MultiSeries, series_arith, exp_linear, series_derivative

__all__ = [
    "PolyRing",
    "Poly",
    "RatFn",
    "Factored",
    "canon_linear",
    "fold_terms",
    "ZLaurent",
    "VarSpec",
    "MultiSeries",
    "series_arith",
    "exp_linear",
    "series_derivative",
]
