"""Bi-g-fusion frames on finite-dimensional complex spaces."""

__version__ = "0.1.0"
