"""Tropical lifts, chain-link homology and Floer support computations."""

__version__ = "0.1.0"
