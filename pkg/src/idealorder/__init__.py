"""Canonical ordering and N.i labelling of ideals of number fields."""

__version__ = "0.1.0"
