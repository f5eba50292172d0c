"""Exact arithmetic kernels."""

from fractions import Fraction as BigRat

from .characters import DirichletChar, char_value, characters_mod
from .finite_field import FieldTables, FiniteField, FqElem, finite_field, smallest_irreducible
from .numbers import is_prime, primes_up_to, quadratic_character
from .polynomial import IntPolynomial
from .quadratic import I, OMEGA, QuadElem, root_of_unity

__all__ = [
    "BigRat",
    "DirichletChar",
    "FieldTables",
    "FiniteField",
    "FqElem",
    "I",
    "IntPolynomial",
    "OMEGA",
    "QuadElem",
    "char_value",
    "characters_mod",
    "finite_field",
    "is_prime",
    "primes_up_to",
    "quadratic_character",
    "root_of_unity",
    "smallest_irreducible",
]
