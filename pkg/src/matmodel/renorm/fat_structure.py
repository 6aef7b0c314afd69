"""Fat genus layers expressed in the I-coordinates.

The fat free energy F_gt(t) collects the t^m layers of the thin genus
g = 2 gt + m - 1, so its closed form follows from the thin structural forms
by reading off the coefficient of N^m:

    F_0(t) = t A + (t^2/2) log(1/(1 - I_1)) + sum_{m>=3} t^m [N^m] F_{m-1,N},
    F_gt(t) = sum_{m>=1} t^m [N^m] F_{2gt+m-1,N}          (gt >= 1).

``fat_in_I`` builds the layers and verifies them two independent ways:
row by row against the direct fat recursion (which never touches the thin
N-grading), and by series expansion against the assembled fat layer in
t-couplings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Any

from ..correlators import CorrelatorEngine, default_engine
from ..exactmath import (
    GenusPolynomial,
    TruncatedSeries,
    automorphism_factor,
    partitions_of,
)
from ..freeenergy import FreeEnergySeries, assemble, fat_layer_t
from ..verify import VerificationReport
from .closed_forms import action_A_expression
from .frame import ICoordinateFrame, build_frame
from .iexpr import IExpression

__all__ = ["FatStructuralForm", "fat_in_I"]


@dataclass
class FatStructuralForm:
    """F_gt(t) as a map from the t-power m to a finite I-expression."""

    genus_tilde: int
    t_layers: dict[int, IExpression] = field(default_factory=dict)
    log_t_power: int = 0
    log_coefficient: Fraction = Fraction(0)

    def expand(
        self, frame: ICoordinateFrame, truncation: int | None = None
    ) -> TruncatedSeries:
        """Series in t-couplings with polynomial-in-t coefficients."""
        D = frame.truncation if truncation is None else truncation
        total = TruncatedSeries.zero(D)
        for power, layer in sorted(self.t_layers.items()):
            t_poly = GenusPolynomial("t", {power: Fraction(1)})
            total = total + layer.expand(frame, D).scale(t_poly)
        if self.log_coefficient:
            t_poly = GenusPolynomial(
                "t", {self.log_t_power: self.log_coefficient}
            )
            total = total + frame.log_inv_one_minus_I1().truncate(D).scale(t_poly)
        return total

    def text(self) -> str:
        pieces = []
        if self.log_coefficient:
            coeff = (
                "" if self.log_coefficient == 1 else f"{self.log_coefficient}*"
            )
            pieces.append(
                f"{coeff}t^{self.log_t_power}*log(1/(1-I_1))"
            )
        for power, layer in sorted(self.t_layers.items()):
            body = layer.text()
            pieces.append(f"t^{power}*({body})")
        return " + ".join(pieces) if pieces else "0"

    def to_json(self) -> dict[str, Any]:
        return {
            "genus_tilde": self.genus_tilde,
            "log_t_power": self.log_t_power,
            "log_coefficient": str(self.log_coefficient),
            "t_layers": {
                str(power): layer.to_json()
                for power, layer in sorted(self.t_layers.items())
            },
        }


def _structural_rows(
    genus: int, engine: CorrelatorEngine
) -> list[tuple[tuple[int, ...], GenusPolynomial, Fraction]]:
    """(lambda, V(lambda, g), combinatorial factor) for every structural row."""
    rows = []
    for nu in partitions_of(2 * genus - 2):
        lam = tuple(sorted((j + 2 for j in nu), reverse=True))
        value = engine.thin(lam, genus)
        factor = Fraction(1, automorphism_factor(lam))
        for a in lam:
            factor /= factorial(a - 1)
        rows.append((lam, value, factor))
    return rows


def fat_in_I(
    genus_tilde: int,
    truncation: int,
    engine: CorrelatorEngine | None = None,
    free_energy: FreeEnergySeries | None = None,
    frame: ICoordinateFrame | None = None,
    expansion_weight: int | None = None,
) -> tuple[FatStructuralForm, VerificationReport]:
    """Build F_gt(t) in I-coordinates and verify it along two routes.

    Layers are included for every m whose structural rows reach weight
    <= ``truncation``.  Row coefficients are checked exactly against the
    direct fat recursion; the full form is then expanded and compared with
    the assembled fat layer through ``expansion_weight`` (defaults to the
    truncation; lower it when deep layers make full expansion expensive).
    """
    if genus_tilde < 0:
        raise ValueError("genus_tilde must be >= 0")
    if engine is None:
        engine = default_engine()
    report = VerificationReport(f"fat_in_I(genus_tilde={genus_tilde})")

    form = FatStructuralForm(genus_tilde)
    if genus_tilde == 0:
        form.t_layers[1] = action_A_expression(truncation)
        form.log_t_power = 2
        form.log_coefficient = Fraction(1, 2)

    m_start = 3 if genus_tilde == 0 else 1
    for m in range(m_start, truncation // 2 + 2 - 2 * genus_tilde):
        genus = 2 * genus_tilde + m - 1
        terms: dict = {}
        for lam, value, factor in _structural_rows(genus, engine):
            thin_coeff = value.coefficient(m)
            fat_value = engine.fat(lam, genus_tilde)
            report.record(
                fat_value.coefficient(m) == thin_coeff,
                f"t^{m} row {lam}: fat recursion gives "
                f"{fat_value.coefficient(m)}, thin N-grading gives {thin_coeff}",
            )
            if not thin_coeff:
                continue
            counts: dict[int, int] = {}
            for a in lam:
                counts[a - 1] = counts.get(a - 1, 0) + 1
            key = (tuple(sorted(counts.items())), -sum(lam))
            terms[key] = terms.get(key, Fraction(0)) + thin_coeff * factor
        layer = IExpression(terms)
        if not layer.is_zero:
            form.t_layers[m] = layer

    weight = truncation if expansion_weight is None else min(
        expansion_weight, truncation
    )
    if free_energy is None or free_energy.truncation < weight:
        free_energy = assemble(weight, engine)
    if frame is None or frame.truncation < weight:
        frame = build_frame(weight)
    expanded = form.expand(frame, weight)
    direct = fat_layer_t(free_energy, genus_tilde).truncate(weight)
    report.record(
        expanded == direct,
        f"I-coordinate form of the fat genus {genus_tilde} layer does not "
        f"match the assembled expansion through weight {weight}",
    )
    return form, report
