"""Connected correlators of the Hermitian one-matrix model."""

from __future__ import annotations

from .engine import (
    CorrelatorEngine,
    default_engine,
    fat_correlator,
    fat_from_thin,
    thin_correlator,
)
from .selection import fat_selection, thin_genus, thin_selection

__all__ = [
    "CorrelatorEngine",
    "default_engine",
    "fat_correlator",
    "fat_from_thin",
    "fat_selection",
    "thin_correlator",
    "thin_genus",
    "thin_selection",
]
