"""GL(3) modular symbols, Hecke spectra, and surface point counts."""

__version__ = "0.1.0"
