"""Exact B-side / A-side toolkit for two-variable invertible polynomials."""

__version__ = "0.1.0"
