"""Deterministic text and JSON rendering for polynomials and series.

Text contract::

    1/2*N^3 + 1/4*N                  polynomial, descending exponents
    (1/2*N^3 + 1/4*N)*g_4 + N^2*g_3*g_1   series, terms by (weight, monomial)

JSON contract::

    {"var": "N", "terms": [["1/2", 3], ["1/4", 1]]}
    {"truncation": 6, "terms": [{"monomial": {"g_4": 1}, "coeff": {...}}, ...]}

Rational coefficients are encoded as strings ("1/2", "-3"); polynomial
coefficients as nested polynomial objects.  All orderings are deterministic
so rendered output is stable across runs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .polynomial import GenusPolynomial
from .series import (
    Coefficient,
    Monomial,
    TruncatedSeries,
    _symbol_key,
    monomial_weight,
)

__all__ = [
    "monomial_sort_key",
    "monomial_text",
    "poly_from_json",
    "poly_json",
    "poly_text",
    "series_from_json",
    "series_json",
    "series_text",
]


def poly_text(poly: GenusPolynomial) -> str:
    """Render a polynomial with descending exponents, e.g. ``1/2*N^3 + 1/4*N``."""
    if poly.is_zero:
        return "0"
    pieces: list[str] = []
    for exponent in poly.exponents():
        coeff = poly.coefficient(exponent)
        body = _power_text(poly.var, exponent)
        text = _scaled_text(abs(coeff), body)
        if not pieces:
            pieces.append(("-" if coeff < 0 else "") + text)
        else:
            pieces.append((" - " if coeff < 0 else " + ") + text)
    return "".join(pieces)


def _power_text(var: str, exponent: int) -> str:
    if exponent == 0:
        return ""
    if exponent == 1:
        return var
    return f"{var}^{exponent}"


def _scaled_text(coeff: Fraction, body: str) -> str:
    if not body:
        return str(coeff)
    if coeff == 1:
        return body
    return f"{coeff}*{body}"


def poly_json(poly: GenusPolynomial) -> dict[str, Any]:
    return {
        "var": poly.var,
        "terms": [[str(poly.coefficient(e)), e] for e in poly.exponents()],
    }


def poly_from_json(data: dict[str, Any]) -> GenusPolynomial:
    terms = {int(exp): Fraction(coeff) for coeff, exp in data["terms"]}
    return GenusPolynomial(data["var"], terms)


def monomial_sort_key(monomial: Monomial) -> tuple:
    return (
        monomial_weight(monomial),
        tuple((_symbol_key(sym), exp) for sym, exp in monomial),
    )


def monomial_text(monomial: Monomial) -> str:
    """Render a monomial with symbol indices descending, e.g. ``g_3*g_1^2``."""
    parts = []
    for sym, exp in sorted(
        monomial, key=lambda kv: (_symbol_key(kv[0])[0], -_symbol_key(kv[0])[1])
    ):
        parts.append(sym if exp == 1 else f"{sym}^{exp}")
    return "*".join(parts)


def _coeff_sign_text(coeff: Coefficient) -> tuple[int, str]:
    """Split a coefficient into (sign, unsigned text), parenthesizing sums."""
    if isinstance(coeff, int):
        coeff = Fraction(coeff)
    if isinstance(coeff, Fraction):
        return ((-1 if coeff < 0 else 1), str(abs(coeff)))
    text = poly_text(coeff)
    if len(coeff.terms) > 1:
        return (1, f"({text})")
    if text.startswith("-"):
        return (-1, text[1:])
    return (1, text)


def series_text(series: TruncatedSeries) -> str:
    if series.is_zero:
        return "0"
    pieces: list[str] = []
    for monomial in sorted(series.terms, key=monomial_sort_key):
        sign, coeff_text = _coeff_sign_text(series.terms[monomial])
        body = monomial_text(monomial)
        if not body:
            text = coeff_text
        elif coeff_text == "1":
            text = body
        else:
            text = f"{coeff_text}*{body}"
        if not pieces:
            pieces.append(("-" if sign < 0 else "") + text)
        else:
            pieces.append((" - " if sign < 0 else " + ") + text)
    return "".join(pieces)


def _coeff_json(coeff: Coefficient) -> Any:
    if isinstance(coeff, int):
        coeff = Fraction(coeff)
    if isinstance(coeff, Fraction):
        return str(coeff)
    return poly_json(coeff)


def _coeff_from_json(data: Any) -> Coefficient:
    if isinstance(data, str):
        return Fraction(data)
    return poly_from_json(data)


def series_json(series: TruncatedSeries) -> dict[str, Any]:
    terms = []
    for monomial in sorted(series.terms, key=monomial_sort_key):
        keys = sorted(
            monomial,
            key=lambda kv: (_symbol_key(kv[0])[0], -_symbol_key(kv[0])[1]),
        )
        terms.append(
            {
                "monomial": {sym: exp for sym, exp in keys},
                "coeff": _coeff_json(series.terms[monomial]),
            }
        )
    return {"truncation": series.truncation, "terms": terms}


def series_from_json(data: dict[str, Any]) -> TruncatedSeries:
    terms: dict[Monomial, Coefficient] = {}
    for entry in data["terms"]:
        monomial = tuple(
            sorted(entry["monomial"].items(), key=lambda kv: _symbol_key(kv[0]))
        )
        terms[monomial] = _coeff_from_json(entry["coeff"])
    return TruncatedSeries(int(data["truncation"]), terms)
