"""Exact ranks of higher Gaussian maps of plane curves and surjectivity criteria."""

__version__ = "0.1.0"
