"""Finite exact expressions in the I- and q-coordinates.

An :class:`IExpression` is a finite sum of terms

    coeff * I_{k_1}^{e_1} ... I_{k_r}^{e_r} * (1 - I_1)^(h/2),

keyed by the I-monomial and the doubled exponent h (so half-integer powers
are exact).  A :class:`QPolynomial` is a plain polynomial in the q_n; the
substitution I_{n+1} = q_n (1 - I_1)^{(n+2)/2} maps one onto the other.
Coefficients are exact rationals or polynomials (in N or t).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, Union

from ..exactmath import GenusPolynomial, TruncatedSeries
from ..exactmath.rendering import poly_from_json, poly_json, poly_text
from .frame import ICoordinateFrame

__all__ = ["IExpression", "QPolynomial", "StructuralForm"]

Coefficient = Union[Fraction, int, GenusPolynomial]
IMonomial = tuple[tuple[int, int], ...]
ITermKey = tuple[IMonomial, int]
QMonomial = tuple[tuple[int, int], ...]


def _canonical_monomial(pairs: Iterable[tuple[int, int]]) -> IMonomial:
    merged: dict[int, int] = {}
    for index, exp in pairs:
        if index < 0 or exp < 0:
            raise ValueError("indices and exponents must be non-negative")
        if exp:
            merged[index] = merged.get(index, 0) + exp
    return tuple(sorted(merged.items()))


def _normalize_coeff(coeff: Coefficient) -> Coefficient:
    return Fraction(coeff) if isinstance(coeff, int) else coeff


def _coeff_sign_text(coeff: Coefficient) -> tuple[int, str]:
    if isinstance(coeff, Fraction):
        return (-1 if coeff < 0 else 1), str(abs(coeff))
    text = poly_text(coeff)
    if len(coeff.terms) > 1:
        return 1, f"({text})"
    if text.startswith("-"):
        return -1, text[1:]
    return 1, text


def _coeff_json(coeff: Coefficient) -> Any:
    return str(coeff) if isinstance(coeff, Fraction) else poly_json(coeff)


def _coeff_from_json(data: Any) -> Coefficient:
    return Fraction(data) if isinstance(data, str) else poly_from_json(data)


class IExpression:
    """Finite sum of I-monomials times exact half-integer powers of 1 - I_1."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[ITermKey, Coefficient] | None = None):
        clean: dict[ITermKey, Coefficient] = {}
        if terms:
            for (monomial, half), coeff in terms.items():
                monomial = _canonical_monomial(monomial)
                coeff = _normalize_coeff(coeff)
                if not coeff:
                    continue
                key = (monomial, half)
                if key in clean:
                    merged = clean[key] + coeff
                    if merged:
                        clean[key] = merged
                    else:
                        del clean[key]
                else:
                    clean[key] = coeff
        self._terms = clean

    @classmethod
    def zero(cls) -> "IExpression":
        return cls()

    @property
    def terms(self) -> dict[ITermKey, Coefficient]:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "IExpression") -> "IExpression":
        if not isinstance(other, IExpression):
            return NotImplemented
        merged = dict(self._terms)
        for key, coeff in other._terms.items():
            merged[key] = merged.get(key, Fraction(0)) + coeff
        return IExpression(merged)

    def scale(self, factor: Coefficient) -> "IExpression":
        factor = _normalize_coeff(factor)
        if not factor:
            return IExpression()
        return IExpression(
            {key: coeff * factor for key, coeff in self._terms.items()}
        )

    def map_coefficients(self, fn) -> "IExpression":
        return IExpression({key: fn(c) for key, c in self._terms.items()})

    def derivative_I0(self) -> "IExpression":
        """Formal d/dI_0 treating every I_k as an independent symbol."""
        result: dict[ITermKey, Coefficient] = {}
        for (monomial, half), coeff in self._terms.items():
            for i, (index, exp) in enumerate(monomial):
                if index != 0:
                    continue
                if exp == 1:
                    reduced = monomial[:i] + monomial[i + 1 :]
                else:
                    reduced = monomial[:i] + ((0, exp - 1),) + monomial[i + 1 :]
                key = (reduced, half)
                result[key] = result.get(key, Fraction(0)) + coeff * exp
                break
        return IExpression(result)

    def expand(self, frame: ICoordinateFrame, truncation: int | None = None) -> TruncatedSeries:
        """Evaluate in the t-couplings through the frame's truncation weight."""
        D = frame.truncation if truncation is None else truncation
        total = TruncatedSeries.zero(D)
        for (monomial, half), coeff in self._terms.items():
            piece = TruncatedSeries.one(D)
            for index, exp in monomial:
                piece = piece * frame.I_power(index, exp).truncate(D)
                if piece.is_zero:
                    break
            if half:
                piece = piece * frame.one_minus_I1_pow(half).truncate(D)
            total = total + piece.scale(coeff)
        return total

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IExpression):
            return NotImplemented
        if set(self._terms) != set(other._terms):
            return False
        return all(self._terms[k] == other._terms[k] for k in self._terms)

    def __hash__(self) -> int:  # pragma: no cover - not used as dict key
        return hash(frozenset(self._terms))

    def sorted_keys(self) -> list[ITermKey]:
        return sorted(self._terms, key=lambda key: (key[0], -key[1]))

    def text(self) -> str:
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for monomial, half in self.sorted_keys():
            sign, coeff_text = _coeff_sign_text(self._terms[(monomial, half)])
            factors = []
            for index, exp in monomial:
                factors.append(f"I_{index}" if exp == 1 else f"I_{index}^{exp}")
            if half:
                exponent = Fraction(half, 2)
                if exponent.denominator == 1:
                    shown = str(exponent.numerator) if exponent > 0 else f"({exponent})"
                else:
                    shown = f"({exponent})"
                factors.append(f"(1-I_1)^{shown}")
            body = "*".join(factors)
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

    def __repr__(self) -> str:
        return f"IExpression({len(self._terms)} terms)"

    def to_json(self) -> dict[str, Any]:
        terms = []
        for monomial, half in self.sorted_keys():
            terms.append(
                {
                    "monomial": {f"I_{index}": exp for index, exp in monomial},
                    "one_minus_I1_exp": str(Fraction(half, 2)),
                    "coeff": _coeff_json(self._terms[(monomial, half)]),
                }
            )
        return {"terms": terms}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "IExpression":
        terms: dict[ITermKey, Coefficient] = {}
        for entry in data["terms"]:
            monomial = _canonical_monomial(
                (int(sym.split("_", 1)[1]), exp)
                for sym, exp in entry["monomial"].items()
            )
            half_fraction = Fraction(entry["one_minus_I1_exp"]) * 2
            if half_fraction.denominator != 1:
                raise ValueError("exponent of (1-I_1) must be a half-integer")
            key = (monomial, int(half_fraction))
            terms[key] = terms.get(key, Fraction(0)) + _coeff_from_json(
                entry["coeff"]
            )
        return cls(terms)


class QPolynomial:
    """Exact polynomial in the q_n coordinates."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[QMonomial, Coefficient] | None = None):
        clean: dict[QMonomial, Coefficient] = {}
        if terms:
            for monomial, coeff in terms.items():
                monomial = _canonical_monomial(monomial)
                coeff = _normalize_coeff(coeff)
                if not coeff:
                    continue
                if monomial in clean:
                    merged = clean[monomial] + coeff
                    if merged:
                        clean[monomial] = merged
                    else:
                        del clean[monomial]
                else:
                    clean[monomial] = coeff
        self._terms = clean

    @property
    def terms(self) -> dict[QMonomial, Coefficient]:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, monomial: Iterable[tuple[int, int]]) -> Coefficient:
        return self._terms.get(_canonical_monomial(monomial), Fraction(0))

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        if not isinstance(other, QPolynomial):
            return NotImplemented
        merged = dict(self._terms)
        for key, coeff in other._terms.items():
            merged[key] = merged.get(key, Fraction(0)) + coeff
        return QPolynomial(merged)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QPolynomial):
            return NotImplemented
        if set(self._terms) != set(other._terms):
            return False
        return all(self._terms[k] == other._terms[k] for k in self._terms)

    def __hash__(self) -> int:  # pragma: no cover - not used as dict key
        return hash(frozenset(self._terms))

    def to_iexpression(self) -> IExpression:
        """Back-substitute q_n = I_{n+1} (1 - I_1)^{-(n+2)/2}, exactly."""
        terms: dict[ITermKey, Coefficient] = {}
        for monomial, coeff in self._terms.items():
            imono = tuple((n + 1, exp) for n, exp in monomial)
            half = -sum(exp * (n + 2) for n, exp in monomial)
            key = (_canonical_monomial(imono), half)
            terms[key] = terms.get(key, Fraction(0)) + coeff
        return IExpression(terms)

    def expand(self, frame: ICoordinateFrame, truncation: int | None = None) -> TruncatedSeries:
        return self.to_iexpression().expand(frame, truncation)

    def sorted_keys(self) -> list[QMonomial]:
        return sorted(self._terms)

    def text(self) -> str:
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for monomial in self.sorted_keys():
            sign, coeff_text = _coeff_sign_text(self._terms[monomial])
            factors = [
                f"q_{index}" if exp == 1 else f"q_{index}^{exp}"
                for index, exp in monomial
            ]
            body = "*".join(factors)
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

    def __repr__(self) -> str:
        return f"QPolynomial({len(self._terms)} terms)"

    def to_json(self) -> dict[str, Any]:
        terms = []
        for monomial in self.sorted_keys():
            terms.append(
                {
                    "monomial": {f"q_{index}": exp for index, exp in monomial},
                    "coeff": _coeff_json(self._terms[monomial]),
                }
            )
        return {"terms": terms}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "QPolynomial":
        terms: dict[QMonomial, Coefficient] = {}
        for entry in data["terms"]:
            monomial = _canonical_monomial(
                (int(sym.split("_", 1)[1]), exp)
                for sym, exp in entry["monomial"].items()
            )
            terms[monomial] = terms.get(monomial, Fraction(0)) + _coeff_from_json(
                entry["coeff"]
            )
        return cls(terms)


@dataclass
class StructuralForm:
    """A genus layer in closed form: optional log term plus an IExpression."""

    genus: int
    log_coefficient: Coefficient = field(default_factory=lambda: Fraction(0))
    expression: IExpression = field(default_factory=IExpression)

    def expand(
        self, frame: ICoordinateFrame, truncation: int | None = None
    ) -> TruncatedSeries:
        D = frame.truncation if truncation is None else truncation
        total = self.expression.expand(frame, D)
        if self.log_coefficient:
            log_series = frame.log_inv_one_minus_I1().truncate(D)
            total = total + log_series.scale(self.log_coefficient)
        return total

    def text(self) -> str:
        pieces = []
        if self.log_coefficient:
            sign, coeff_text = _coeff_sign_text(self.log_coefficient)
            body = "log(1/(1-I_1))"
            term = body if coeff_text == "1" else f"{coeff_text}*{body}"
            pieces.append(("-" if sign < 0 else "") + term)
        if not self.expression.is_zero:
            body = self.expression.text()
            pieces.append(body if not pieces else (" + " + body))
        return "".join(pieces) if pieces else "0"

    def to_json(self) -> dict[str, Any]:
        return {
            "genus": self.genus,
            "log_coefficient": _coeff_json(_normalize_coeff(self.log_coefficient)),
            "expression": self.expression.to_json(),
        }
