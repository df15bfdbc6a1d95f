"""Fixture and reference-ordering generation for idealorder, via sympy."""

__version__ = "0.1.0"
