"""Thermodynamic quantities and long-distance correlation asymptotics for the
XXZ chain and the one-dimensional Bose gas, with numerical identity checks."""

__version__ = "0.1.0"
