"""Numerical laboratory for entropies of the Eikonal equation and the Aviles-Giga inclusion."""

__version__ = "0.1.0"
