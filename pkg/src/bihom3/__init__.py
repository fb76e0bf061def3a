"""Exact verification of 3-Bihom-Lie algebras and their product and complex structures."""

__version__ = "0.1.0"
