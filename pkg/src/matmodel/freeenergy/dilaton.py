"""Resummation of the quadratic coupling g_2 into closed form.

Repeated application of the dilaton step V(mu + {2}, g) = (|mu|/2) V(mu, g)
sums the entire g_2 dependence of a genus layer: with lambda_0 running over
2-free partitions of the layer and n = l(lambda_0),

    F_{g,N} = delta_{g,1} (N^2/2) log(1/(1 - g_2))
              + sum_{lambda_0} V(lambda_0, g)/aut(lambda_0)
                * g_{lambda_0} * (1 - g_2)^{-(g - 1 + n)},

the log arising from the pure-g_2 family V((2^m), 1) = (m-1)! N^2 / 2.
``dilaton_resum`` builds the closed form and verifies its expansion equals
the directly assembled layer through the truncation weight.
"""

from __future__ import annotations

from fractions import Fraction

from ..exactmath import (
    GenusPolynomial,
    TruncatedSeries,
    automorphism_factor,
    partitions_up_to,
    series_log,
    series_pow,
)
from ..verify import VerificationError
from .assemble import FreeEnergySeries, _g_monomial

__all__ = ["dilaton_resum"]


def dilaton_resum(free_energy: FreeEnergySeries, genus: int) -> TruncatedSeries:
    """Closed-in-g_2 form of F_{g,N}, verified against the direct layer."""
    truncation = free_energy.truncation
    one = TruncatedSeries.one(truncation)
    one_minus_g2 = one - TruncatedSeries.symbol(truncation, "g_2")

    total = TruncatedSeries.zero(truncation)
    if genus == 1:
        log_factor = -series_log(one_minus_g2)
        total = total + log_factor.scale(GenusPolynomial("N", {2: Fraction(1, 2)}))

    entries = free_energy.entries
    for parts in partitions_up_to(truncation, even_only=True):
        if 2 in parts:
            continue
        value = entries.get((genus, parts))
        if value is None:
            continue
        exponent = genus - 1 + len(parts)
        resummed = series_pow(one_minus_g2, -exponent)
        core = TruncatedSeries(
            truncation,
            {_g_monomial(parts): value * Fraction(1, automorphism_factor(parts))},
        )
        total = total + core * resummed

    direct = free_energy.genus_layer(genus)
    if total != direct:
        difference = total - direct
        raise VerificationError(
            f"dilaton resummation mismatch at genus {genus}: "
            f"difference {difference}"
        )
    return total
