"""Exact arithmetic in real quadratic function fields and the Diophantine
approximation experiment with prime elements."""

from .fqpoly import Poly, factorize, is_irreducible, mangoldt_poly, mobius_poly
from .laurent import BallExp, CycSum, Laurent, PrecisionError
from .quadratic import IdealRep, IdealTable, QuadElem, QuadField, UnitData

__all__ = [
    "Poly",
    "factorize",
    "is_irreducible",
    "mangoldt_poly",
    "mobius_poly",
    "Laurent",
    "BallExp",
    "CycSum",
    "PrecisionError",
    "QuadField",
    "QuadElem",
    "IdealRep",
    "IdealTable",
    "UnitData",
]
