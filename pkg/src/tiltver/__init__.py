"""Exact character computations for checking the tilting module conjecture."""

__version__ = "0.1.0"

__all__ = ["__version__"]
