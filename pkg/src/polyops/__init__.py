"""Exact-arithmetic toolkit for two degree-raising differential operators
on (0,1), the hyperbolic polynomial sequences they generate from linear
initial data, and the limiting distribution of their zeros."""

from .diffop import DiffOp, Family, compose_AB, make_A, make_B, make_D
from .families import ALL_ONES, PAPER_DEFAULT, FamilySpec, aux_family, iterate_P
from .ratpoly import RatNum, RatPoly
from .rootlab import RootSet, confined, interlace, is_hyperbolic, isolate, proper_position

__all__ = [
    "ALL_ONES",
    "DiffOp",
    "Family",
    "FamilySpec",
    "PAPER_DEFAULT",
    "RatNum",
    "RatPoly",
    "RootSet",
    "aux_family",
    "compose_AB",
    "confined",
    "interlace",
    "is_hyperbolic",
    "isolate",
    "iterate_P",
    "make_A",
    "make_B",
    "make_D",
    "proper_position",
]

__version__ = "0.1.0"
