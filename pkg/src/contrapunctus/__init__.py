"""Contrapunctus - finite-algebra engine for first-species counterpoint."""

__version__ = "0.1.0"
