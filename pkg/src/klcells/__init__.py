"""Exact Kazhdan-Lusztig bases, cells and the a-function for weighted Coxeter groups."""

__version__ = "0.1.0"
