"""Exact faithful matrix representations of Lie algebras over the rationals."""

__version__ = "0.1.0"
