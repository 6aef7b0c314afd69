"""Exact computer algebra for Hermitian one-matrix model correlators.

Connected correlators, genus-expanded free energies, renormalized
I-coordinates and their structural closed forms, all in exact rational
arithmetic, cross-validated against a brute-force Wick-pairing oracle.
"""

from __future__ import annotations

__version__ = "0.1.0"

__all__ = ["__version__"]
