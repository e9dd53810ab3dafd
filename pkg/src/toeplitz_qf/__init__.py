"""Exact computations in the algebraic Toeplitz algebra: normal forms, weighted
seminorms, differential 1-forms and square-zero extensions."""

from .core import E, E_PRIME, ONE, U, V, Monomial, ToeplitzElement, involution, mul, oracle_check_mul, to_matrix
from .parser import ParseError, parse
from .reports import CheckReport

__all__ = [
    "E", "E_PRIME", "ONE", "U", "V", "Monomial", "ToeplitzElement", "involution", "mul",
    "oracle_check_mul", "to_matrix", "ParseError", "parse", "CheckReport",
]
