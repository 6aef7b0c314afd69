"""The renormalization identity: shifted couplings absorb all I-dependence.

With the renormalized couplings

    ghat_1 = ghat_2 = 0,
    ghat_n = I_{n-1} / ((n-1)! (1 - I_1)^{n/2})   (n >= 3),

the free energy satisfies, genus by genus,

    F_0(g) = N A + F_0(ghat),
    F_1(g) = (N^2/2) log(1/(1 - I_1)) + F_1(ghat),
    F_g(g) = F_g(ghat)                              (g >= 2),

where both sides are expanded in the t-couplings (g_n = t_{n-1}/(n-1)!).
Each ghat_n has minimum weight n, so the substitution into a genus layer is
exact through the truncation weight.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from ..correlators import CorrelatorEngine
from ..exactmath import GenusPolynomial, TruncatedSeries, series_substitute
from ..freeenergy import FreeEnergySeries, assemble
from ..verify import VerificationReport
from .closed_forms import action_A
from .frame import ICoordinateFrame, build_frame

__all__ = ["renormalization_identity", "renormalized_couplings"]


def renormalized_couplings(frame: ICoordinateFrame) -> dict[str, TruncatedSeries]:
    """The ghat_n as t-coupling series, for every g_n up to the truncation."""
    D = frame.truncation
    mapping: dict[str, TruncatedSeries] = {
        "g_1": TruncatedSeries.zero(D),
        "g_2": TruncatedSeries.zero(D),
    }
    for n in range(3, D + 1):
        series = frame.I(n - 1) * frame.one_minus_I1_pow(-n)
        mapping[f"g_{n}"] = series.scale(Fraction(1, factorial(n - 1)))
    return mapping


def renormalization_identity(
    truncation: int,
    engine: CorrelatorEngine | None = None,
    free_energy: FreeEnergySeries | None = None,
    frame: ICoordinateFrame | None = None,
) -> VerificationReport:
    """Check the identity genus by genus through the truncation weight."""
    if free_energy is None:
        free_energy = assemble(truncation, engine)
    if frame is None:
        frame = build_frame(truncation)
    mapping = renormalized_couplings(frame)
    report = VerificationReport("renormalization_identity")

    for genus in range(0, truncation // 2 + 1):
        layer = free_energy.genus_layer(genus)
        left = free_energy.genus_layer_t(genus)
        right = series_substitute(layer, mapping)
        if genus == 0:
            right = right + action_A(frame, truncation).scale(
                GenusPolynomial.variable("N")
            )
        elif genus == 1:
            right = right + frame.log_inv_one_minus_I1().truncate(truncation).scale(
                GenusPolynomial("N", {2: Fraction(1, 2)})
            )
        report.record(
            left == right,
            f"identity fails at genus {genus} (weight {truncation})",
        )
    return report
