"""Periodic friezes, their growth coefficients and the recursion those coefficients obey."""

from .exact import Quadratic, format_number, parse_number, quadratic
from .frieze import FriezeLattice, classify, parse_quiddity, verify_window
from .growth import growth_coefficient, growth_sequence
from .surfaces import FanTriangulation, PolygonTriangulation, cut, glue

__all__ = [
    "Quadratic",
    "quadratic",
    "format_number",
    "parse_number",
    "FriezeLattice",
    "classify",
    "parse_quiddity",
    "verify_window",
    "growth_coefficient",
    "growth_sequence",
    "FanTriangulation",
    "PolygonTriangulation",
    "glue",
    "cut",
]

__version__ = "0.1.0"
