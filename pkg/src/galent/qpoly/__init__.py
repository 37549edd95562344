"""Exact polynomials over Q and Q(t)."""

from .divpoly import division_polynomial
from .factor import (
    SplitFingerprint, SplitVerdict, factor_fingerprint_mod_p, rational_reconstruction,
    same_splitting_field_mc, small_rational_factors,
)
from .poly import ExactPolynomial, discriminant_square_class, poly_discriminant, resultant
from .rational import RationalFunction, is_square, same_square_class, square_class, squarefree_part

__all__ = [
    "ExactPolynomial", "RationalFunction", "SplitFingerprint", "SplitVerdict",
    "discriminant_square_class", "division_polynomial", "factor_fingerprint_mod_p",
    "is_square", "poly_discriminant", "rational_reconstruction", "resultant",
    "same_splitting_field_mc", "same_square_class", "small_rational_factors",
    "square_class", "squarefree_part",
]
