"""Exact desk-scale engine for (Z/nZ)-graded Lie algebras."""

__version__ = "0.1.0"
