"""Exact computations with tridiagonal pairs and tridiagonal systems."""

__version__ = "0.1.0"
