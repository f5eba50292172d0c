"""Modular symbols, Hecke operators and their spectra."""

from .operators import (
    DEFAULT_CONVENTION,
    BadPrime,
    ConventionError,
    HeckeMatrix,
    cached_hecke_matrix,
    coset_reps,
    hecke_matrix,
    restricted_operator,
)
from .spectrum import (
    AmbiguityError,
    Spectrum,
    charpoly,
    classify_pair,
    dp_relation,
    eigenspace,
    eigenvalue_check,
    spectrum_fields,
)
from .symbols import CONVENTIONS, SymbolSum, reduce_symbol, unimodular_leaves

__all__ = [
    "AmbiguityError",
    "BadPrime",
    "CONVENTIONS",
    "ConventionError",
    "DEFAULT_CONVENTION",
    "HeckeMatrix",
    "Spectrum",
    "SymbolSum",
    "cached_hecke_matrix",
    "charpoly",
    "classify_pair",
    "coset_reps",
    "dp_relation",
    "eigenspace",
    "eigenvalue_check",
    "hecke_matrix",
    "reduce_symbol",
    "restricted_operator",
    "spectrum_fields",
    "unimodular_leaves",
]
