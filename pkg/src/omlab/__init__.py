"""Finite quantum-logic model theory workbench."""

__version__ = "0.1.0"
