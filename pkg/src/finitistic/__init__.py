"""Exact homological computations for finite-dimensional algebras over GF(p)."""

__version__ = "0.1.0"
