"""Brute-force Kerov coefficients, expander maps and edge sliding."""

from .enumeration import (
    conjecture_table,
    count_linear,
    count_square,
    enumerate_X,
    enumerate_Y,
    gr_linear_coefficient,
    gr_square_coefficient,
)
from .errors import InvalidInputError, InvariantViolation, ResourceLimitError
from .perm import Permutation, compose, cycle_decomposition, inverse, long_cycle
from .proof import verify_chain
from .ratpoly import Monomial, RationalPolynomial, c_polynomial, expand_c_to_r
from .rmap import RootedBipartiteMap, from_factorization, is_expander
from .sliding import SlidingConfig, slide, validate

__version__ = "0.1.0"

__all__ = [
    "Permutation", "compose", "inverse", "long_cycle", "cycle_decomposition",
    "Monomial", "RationalPolynomial", "c_polynomial", "expand_c_to_r",
    "RootedBipartiteMap", "from_factorization", "is_expander",
    "count_linear", "count_square", "enumerate_X", "enumerate_Y",
    "gr_linear_coefficient", "gr_square_coefficient", "conjecture_table",
    "SlidingConfig", "slide", "validate", "verify_chain",
    "InvalidInputError", "ResourceLimitError", "InvariantViolation",
]
