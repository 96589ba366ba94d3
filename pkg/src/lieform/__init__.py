"""Exact relative Lie algebra cohomology and the rank obstruction for reductive pairs."""

__version__ = "0.1.0"
