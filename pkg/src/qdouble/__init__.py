"""Finite-group quantum-double workbench."""

__version__ = "0.1.0"
