"""Genus-expanded free energy assembled from connected correlators.

The free energy log Z_N = sum_lambda <p_lambda / z_lambda>^c g_lambda is
organized by the thin genus g pinned by each partition:

    F_N = sum_g g_s^{g-1} F_{g,N},
    F_{g,N} = sum_{lambda : |lambda| = 2g-2+2l} V(lambda, g) / aut(lambda)
              * g_lambda,

with V(lambda, g) = <prod_j p_{a_j}/a_j>^c and aut(lambda) = prod_j m_j! the
product of part-multiplicity factorials (1/z_lambda = 1/(aut * prod a_j)).

The fat flavor regroups the same data by t = N g_s:

    F_N = sum_gt g_s^{2 gt - 2} F_gt(t),

where the coefficient of g_lambda in F_gt(t) is the t^m layer of the thin
polynomial, m = g + 1 - 2 gt.  The dictionary g_n = t_{n-1}/(n-1)! rewrites
any genus layer in t-couplings, and N = 1 specializes it to the 1D model.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable

from ..correlators import CorrelatorEngine, default_engine, thin_genus
from ..exactmath import (
    GenusPolynomial,
    TruncatedSeries,
    automorphism_factor,
    partitions_up_to,
)

__all__ = [
    "FreeEnergySeries",
    "assemble",
    "fat_expansion",
    "fat_layer_t",
    "one_d_specialize",
]


def _g_monomial(parts: tuple[int, ...]) -> tuple[tuple[str, int], ...]:
    counts: dict[int, int] = {}
    for a in parts:
        counts[a] = counts.get(a, 0) + 1
    return tuple((f"g_{a}", counts[a]) for a in sorted(counts))


def _t_monomial(parts: tuple[int, ...]) -> tuple[tuple[str, int], ...]:
    counts: dict[int, int] = {}
    for a in parts:
        counts[a - 1] = counts.get(a - 1, 0) + 1
    return tuple((f"t_{k}", counts[k]) for k in sorted(counts))


class FreeEnergySeries:
    """All correlator data entering F_N through coupling weight D."""

    __slots__ = ("_truncation", "_entries")

    def __init__(
        self,
        truncation: int,
        entries: dict[tuple[int, tuple[int, ...]], GenusPolynomial],
    ):
        self._truncation = truncation
        self._entries = dict(entries)

    @property
    def truncation(self) -> int:
        return self._truncation

    @property
    def entries(self) -> dict[tuple[int, tuple[int, ...]], GenusPolynomial]:
        return dict(self._entries)

    @property
    def max_genus(self) -> int:
        return self._truncation // 2

    def genus_layer(self, genus: int) -> TruncatedSeries:
        """F_{g,N}: series in g-couplings with polynomial-in-N coefficients."""
        terms: dict[tuple[tuple[str, int], ...], GenusPolynomial] = {}
        for (g, parts), value in self._entries.items():
            if g != genus:
                continue
            terms[_g_monomial(parts)] = value * Fraction(
                1, automorphism_factor(parts)
            )
        return TruncatedSeries(self._truncation, terms)

    def genus_layer_t(self, genus: int) -> TruncatedSeries:
        """F_{g,N} in t-couplings via g_n = t_{n-1} / (n-1)!."""
        terms: dict[tuple[tuple[str, int], ...], GenusPolynomial] = {}
        for (g, parts), value in self._entries.items():
            if g != genus:
                continue
            scale = Fraction(1, automorphism_factor(parts))
            for a in parts:
                scale /= factorial(a - 1)
            terms[_t_monomial(parts)] = value * scale
        return TruncatedSeries(self._truncation, terms)

    def gs_expansion(self) -> dict[int, TruncatedSeries]:
        """F_N as a map g_s exponent -> series (exponent g - 1 per genus)."""
        layers: dict[int, TruncatedSeries] = {}
        for genus in range(self.max_genus + 1):
            layer = self.genus_layer(genus)
            if not layer.is_zero:
                layers[genus - 1] = layer
        return layers


def assemble(
    truncation: int, engine: CorrelatorEngine | None = None
) -> FreeEnergySeries:
    """Compute every correlator entering F_N through coupling weight D."""
    if engine is None:
        engine = default_engine()
    entries: dict[tuple[int, tuple[int, ...]], GenusPolynomial] = {}
    for parts in partitions_up_to(truncation, even_only=True):
        genus = thin_genus(parts)
        if genus is None:
            continue
        value = engine.thin(parts, genus)
        if not value.is_zero:
            entries[(genus, parts)] = value
    return FreeEnergySeries(truncation, entries)


def fat_expansion(
    free_energy: FreeEnergySeries, genus_tilde: int
) -> TruncatedSeries:
    """F_gt(t): series in g-couplings with polynomial-in-t coefficients.

    Extracted from the thin data via the N-grading: the g_lambda coefficient
    is [N^m] V(lambda, g) * t^m with m = g + 1 - 2 gt.
    """
    terms: dict[tuple[tuple[str, int], ...], GenusPolynomial] = {}
    for (g, parts), value in free_energy.entries.items():
        power = g + 1 - 2 * genus_tilde
        if power < 1:
            continue
        coeff = value.coefficient(power)
        if not coeff:
            continue
        terms[_g_monomial(parts)] = GenusPolynomial(
            "t", {power: coeff * Fraction(1, automorphism_factor(parts))}
        )
    return TruncatedSeries(free_energy.truncation, terms)


def fat_layer_t(
    free_energy: FreeEnergySeries, genus_tilde: int
) -> TruncatedSeries:
    """F_gt(t) in t-couplings via g_n = t_{n-1} / (n-1)!."""
    terms: dict[tuple[tuple[str, int], ...], GenusPolynomial] = {}
    for (g, parts), value in free_energy.entries.items():
        power = g + 1 - 2 * genus_tilde
        if power < 1:
            continue
        coeff = value.coefficient(power)
        if not coeff:
            continue
        scale = Fraction(1, automorphism_factor(parts))
        for a in parts:
            scale /= factorial(a - 1)
        terms[_t_monomial(parts)] = GenusPolynomial("t", {power: coeff * scale})
    return TruncatedSeries(free_energy.truncation, terms)


def one_d_specialize(
    free_energy: FreeEnergySeries, genus: int
) -> TruncatedSeries:
    """F_g at N = 1 in t-couplings: the one-dimensional specialization."""
    layer = free_energy.genus_layer_t(genus)
    return layer.map_coefficients(
        lambda c: c.evaluate(Fraction(1)) if isinstance(c, GenusPolynomial) else c
    )
