"""Exact-arithmetic building blocks: partitions, polynomials, graded series."""

from __future__ import annotations

from .partitions import (
    Partition,
    as_parts,
    automorphism_factor,
    multiplicities,
    partitions_of,
    partitions_up_to,
    z_lambda,
)
from .polynomial import GenusPolynomial
from .rendering import (
    monomial_text,
    poly_from_json,
    poly_json,
    poly_text,
    series_from_json,
    series_json,
    series_text,
)
from .series import (
    TruncatedSeries,
    monomial_weight,
    series_exp,
    series_log,
    series_pow,
    series_substitute,
    symbol_weight,
)

__all__ = [
    "GenusPolynomial",
    "Partition",
    "TruncatedSeries",
    "as_parts",
    "automorphism_factor",
    "monomial_text",
    "monomial_weight",
    "multiplicities",
    "partitions_of",
    "partitions_up_to",
    "poly_from_json",
    "poly_json",
    "poly_text",
    "series_exp",
    "series_from_json",
    "series_json",
    "series_log",
    "series_pow",
    "series_substitute",
    "series_text",
    "symbol_weight",
    "z_lambda",
]
