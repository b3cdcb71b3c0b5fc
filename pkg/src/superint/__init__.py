"""Exact and numerical verification of a superintegrable Coulomb-type system."""

__version__ = "0.1.0"
