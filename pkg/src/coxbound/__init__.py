"""Coxeter groups: word problem, classification, combinatorial boundary and Hecke algebras."""

from .coxeter import (
    INF,
    CoxeterGroup,
    CoxeterMatrix,
    CoxeterMatrixError,
    Element,
    load_matrix,
    parse_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "INF",
    "CoxeterGroup",
    "CoxeterMatrix",
    "CoxeterMatrixError",
    "Element",
    "load_matrix",
    "parse_matrix",
]
