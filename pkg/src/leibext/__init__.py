"""Exact computations with Leibniz algebras, their non-abelian extensions,
Leibniz 2-algebras and the Maurer-Cartan description of 2-cocycles."""

from .fields import GF, QQ, parse_field
from .linalg import Subspace
from .algebra import LeibnizAlgebra, check_leibniz, left_center, right_center
from .extensions import NonAbelianCocycle, build_extension, cocycles_equivalent, is_cocycle

__version__ = "0.1.0"

__all__ = [
    "GF",
    "QQ",
    "parse_field",
    "Subspace",
    "LeibnizAlgebra",
    "check_leibniz",
    "left_center",
    "right_center",
    "NonAbelianCocycle",
    "build_extension",
    "cocycles_equivalent",
    "is_cocycle",
]
