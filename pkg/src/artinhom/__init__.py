"""Homology of type-A and type-B Artin groups with braided coefficients."""

__version__ = "0.1.0"
