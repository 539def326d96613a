"""Exact computations for ideals of 2-minors of 2-row matrices of linear forms."""

__version__ = "0.1.0"
