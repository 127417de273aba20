"""Exact-arithmetic representations of the mapping class group of Σ_{g,1}."""

__version__ = "0.1.0"
