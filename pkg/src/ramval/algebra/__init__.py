"""Coefficient fields, sparse bivariate polynomials, local-ring pairs, series."""

from .field import Fq, NotInField, is_prime
from .local import LocalElem
from .parse import ParseError, parse_poly
from .poly import DivisibleByX, IndeterminateOrder, NotMonic, Poly2
from .series import NotAUnit, PrecisionTooLow, XSeries, invert_unit

__all__ = [
    "Fq",
    "NotInField",
    "is_prime",
    "LocalElem",
    "ParseError",
    "parse_poly",
    "DivisibleByX",
    "IndeterminateOrder",
    "NotMonic",
    "Poly2",
    "NotAUnit",
    "PrecisionTooLow",
    "XSeries",
    "invert_unit",
]
