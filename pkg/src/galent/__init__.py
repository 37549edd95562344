"""Exact tools for entanglements of division fields of elliptic curves."""

__version__ = "0.1.0"
