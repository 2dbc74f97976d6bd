"""Finite and symbolic checks of SI-topology, k-bounded sobriety and related constructions."""

__version__ = "0.1.0"
