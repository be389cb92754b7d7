"""Quantum harmonic analysis on the finite phase space Z_L x Z_L."""

__version__ = "0.1.0"
