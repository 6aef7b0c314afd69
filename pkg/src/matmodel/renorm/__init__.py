"""Renormalized I-coordinates, closed forms, and structural identities."""

from __future__ import annotations

from .closed_forms import (
    action_A,
    action_A_expression,
    f0_closed_form,
    q_rewrite,
    structural_FgN,
    structural_expression,
)
from .fat_structure import FatStructuralForm, fat_in_I
from .frame import ICoordinateFrame, build_frame, invert_frame
from .identity import renormalization_identity, renormalized_couplings
from .iexpr import IExpression, QPolynomial, StructuralForm

__all__ = [
    "FatStructuralForm",
    "ICoordinateFrame",
    "IExpression",
    "QPolynomial",
    "StructuralForm",
    "action_A",
    "action_A_expression",
    "build_frame",
    "f0_closed_form",
    "fat_in_I",
    "invert_frame",
    "q_rewrite",
    "renormalization_identity",
    "renormalized_couplings",
    "structural_FgN",
    "structural_expression",
]
