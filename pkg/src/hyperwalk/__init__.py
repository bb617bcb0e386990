"""Hermitian discrete hypergroups from random walks on graphs."""

__version__ = "0.1.0"
