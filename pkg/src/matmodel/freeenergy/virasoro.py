"""Virasoro constraints on the partition function, checked exactly.

Z_N = exp(F_N) is graded by powers of g_s (a ``GradedSeries`` maps the g_s
exponent to a series in the couplings).  The constraints L_m Z = 0 hold for
all m >= -1 with

    L_m = sum_k (k + m)(g_k - delta_{k,2}) d/dg_{k+m}
          + g_s^2 sum_{k=1}^{m-1} k (m - k) d^2/dg_k dg_{m-k}   (m >= 2)
          + 2 N m g_s d/dg_m                                     (m >= 1)
          + N^2 delta_{m,0} + N g_1 g_s^{-1} delta_{m,-1}.

``virasoro_residual`` assembles F through weight D, exponentiates, applies
L_m, and returns the residual truncated to the weight through which the
computation is exact, D - max(2, m + 2); every returned layer must vanish.
"""

from __future__ import annotations

from fractions import Fraction

from ..correlators import CorrelatorEngine
from ..exactmath import GenusPolynomial, TruncatedSeries
from .assemble import FreeEnergySeries, assemble

__all__ = [
    "GradedSeries",
    "graded_exp",
    "graded_mul",
    "virasoro_residual",
]

GradedSeries = dict[int, TruncatedSeries]


def _graded_add(a: GradedSeries, b: GradedSeries) -> GradedSeries:
    out = dict(a)
    for exponent, series in b.items():
        if exponent in out:
            out[exponent] = out[exponent] + series
        else:
            out[exponent] = series
    return {e: s for e, s in out.items() if not s.is_zero}


def graded_mul(a: GradedSeries, b: GradedSeries) -> GradedSeries:
    out: GradedSeries = {}
    for e1, s1 in a.items():
        for e2, s2 in b.items():
            product = s1 * s2
            if product.is_zero:
                continue
            exponent = e1 + e2
            if exponent in out:
                out[exponent] = out[exponent] + product
            else:
                out[exponent] = product
    return {e: s for e, s in out.items() if not s.is_zero}


def graded_exp(f: GradedSeries, truncation: int) -> GradedSeries:
    """exp of a graded series whose every layer has positive minimum weight."""
    for series in f.values():
        low = series.min_weight()
        if low is not None and low < 1:
            raise ValueError("graded exp needs positive minimum weight")
    result: GradedSeries = {0: TruncatedSeries.one(truncation)}
    term: GradedSeries = {0: TruncatedSeries.one(truncation)}
    for k in range(1, truncation + 1):
        term = graded_mul(term, f)
        term = {e: s.scale(Fraction(1, k)) for e, s in term.items()}
        term = {e: s for e, s in term.items() if not s.is_zero}
        if not term:
            break
        result = _graded_add(result, term)
    return result


def _graded_map(z: GradedSeries, fn) -> GradedSeries:
    out = {e: fn(s) for e, s in z.items()}
    return {e: s for e, s in out.items() if not s.is_zero}


def _graded_shift(z: GradedSeries, by: int) -> GradedSeries:
    return {e + by: s for e, s in z.items()}


def virasoro_residual(
    m: int,
    truncation: int,
    engine: CorrelatorEngine | None = None,
    free_energy: FreeEnergySeries | None = None,
) -> GradedSeries:
    """L_m applied to Z = exp(F), truncated to its exact validity weight.

    Returns a map from g_s exponent to the residual series; the constraint
    holds exactly, so every entry must be the zero series.
    """
    if m < -1:
        raise ValueError("Virasoro constraints hold for m >= -1")
    if free_energy is None:
        free_energy = assemble(truncation, engine)
    f_graded: GradedSeries = {
        e: s for e, s in free_energy.gs_expansion().items()
    }
    z = graded_exp(f_graded, truncation)

    residual: GradedSeries = {}

    for k in range(max(1, 1 - m), truncation - m + 1):
        derivative = _graded_map(z, lambda s, kk=k + m: s.differentiate(f"g_{kk}"))
        if not derivative:
            continue
        g_k = TruncatedSeries.symbol(truncation, f"g_{k}")
        piece = _graded_map(derivative, lambda s: (s * g_k).scale(Fraction(k + m)))
        residual = _graded_add(residual, piece)
        if k == 2:
            delta = _graded_map(derivative, lambda s: s.scale(Fraction(-(k + m))))
            residual = _graded_add(residual, delta)

    if m >= 2:
        for k in range(1, m):
            second = _graded_map(
                z, lambda s, kk=k: s.differentiate(f"g_{kk}")
            )
            second = _graded_map(
                second, lambda s, kk=m - k: s.differentiate(f"g_{kk}")
            )
            second = {e: s.scale(Fraction(k * (m - k))) for e, s in second.items()}
            residual = _graded_add(residual, _graded_shift(second, 2))

    if m >= 1:
        n_poly = GenusPolynomial("N", {1: Fraction(2 * m)})
        piece = _graded_map(z, lambda s: s.differentiate(f"g_{m}").scale(n_poly))
        residual = _graded_add(residual, _graded_shift(piece, 1))

    if m == 0:
        n_sq = GenusPolynomial("N", {2: Fraction(1)})
        residual = _graded_add(residual, _graded_map(z, lambda s: s.scale(n_sq)))

    if m == -1:
        n_poly = GenusPolynomial("N", {1: Fraction(1)})
        piece = _graded_map(
            z,
            lambda s: (s * TruncatedSeries.symbol(truncation, "g_1")).scale(n_poly),
        )
        residual = _graded_add(residual, _graded_shift(piece, -1))

    valid = truncation - max(2, m + 2)
    truncated = {e: s.truncate(valid) for e, s in residual.items()}
    return {e: s for e, s in truncated.items() if not s.is_zero}
