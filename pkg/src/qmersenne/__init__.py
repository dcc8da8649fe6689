"""Generalized Mersenne primes in real quadratic fields of class number one."""

__version__ = "0.1.0"

from .quadint import FieldCtx, QuadInt, format_quadint, parse_quadint
from .units import UnitElem, continued_fraction, fundamental_unit, unit_power
from .primality import Primality, PrimalityConfig, is_probable_prime, jacobi
from .mersenne import (
    AlphaChoice,
    MersenneCandidate,
    alpha_menu,
    classify_alpha,
    mersenne_element,
    mersenne_norm,
    search,
)
from .quadform import Representation, cornacchia7, representable, structure_check

__all__ = [
    "AlphaChoice", "FieldCtx", "MersenneCandidate", "Primality", "PrimalityConfig",
    "QuadInt", "Representation", "UnitElem", "alpha_menu", "classify_alpha",
    "continued_fraction", "cornacchia7", "format_quadint", "fundamental_unit",
    "is_probable_prime", "jacobi", "mersenne_element", "mersenne_norm",
    "parse_quadint", "representable", "search", "structure_check", "unit_power",
]
