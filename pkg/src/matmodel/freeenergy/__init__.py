"""Genus-expanded free energies: assembly, resummation, Virasoro checks."""

from __future__ import annotations

from .assemble import (
    FreeEnergySeries,
    assemble,
    fat_expansion,
    fat_layer_t,
    one_d_specialize,
)
from .dilaton import dilaton_resum
from .virasoro import GradedSeries, graded_exp, graded_mul, virasoro_residual

__all__ = [
    "FreeEnergySeries",
    "GradedSeries",
    "assemble",
    "dilaton_resum",
    "fat_expansion",
    "fat_layer_t",
    "graded_exp",
    "graded_mul",
    "one_d_specialize",
    "virasoro_residual",
]
