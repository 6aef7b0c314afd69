"""Univariate polynomials over exact rationals in a tagged formal variable.

The variable tag is "N" (matrix size) or "t" ('t Hooft coupling); arithmetic
between polynomials with different tags is rejected so the two gradings can
never be mixed by accident.  Coefficients are ``fractions.Fraction`` and all
operations are exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Union

__all__ = ["GenusPolynomial", "Scalar"]

Scalar = Union[int, Fraction]


class GenusPolynomial:
    """Sparse exact-rational polynomial in a single tagged variable."""

    __slots__ = ("_var", "_terms")

    def __init__(
        self, var: str, terms: Mapping[int, Scalar] | None = None
    ):
        self._var = var
        clean: dict[int, Fraction] = {}
        if terms:
            for exponent, coeff in terms.items():
                exponent = int(exponent)
                if exponent < 0:
                    raise ValueError(f"negative exponent {exponent}")
                value = Fraction(coeff)
                if value:
                    clean[exponent] = value
        self._terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, var: str) -> "GenusPolynomial":
        return cls(var)

    @classmethod
    def constant(cls, var: str, value: Scalar) -> "GenusPolynomial":
        return cls(var, {0: value})

    @classmethod
    def variable(cls, var: str) -> "GenusPolynomial":
        return cls(var, {1: 1})

    # -- inspection --------------------------------------------------------

    @property
    def var(self) -> str:
        return self._var

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return all(e == 0 for e in self._terms)

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return max(self._terms, default=-1)

    def coefficient(self, exponent: int) -> Fraction:
        return self._terms.get(exponent, Fraction(0))

    def exponents(self) -> tuple[int, ...]:
        return tuple(sorted(self._terms, reverse=True))

    def evaluate(self, value: Scalar) -> Fraction:
        value = Fraction(value)
        return sum(
            (c * value**e for e, c in self._terms.items()), Fraction(0)
        )

    # -- arithmetic --------------------------------------------------------

    def _check_var(self, other: "GenusPolynomial") -> None:
        if self._var != other._var:
            raise ValueError(
                f"cannot mix variables {self._var!r} and {other._var!r}"
            )

    def __add__(self, other: object) -> "GenusPolynomial":
        if isinstance(other, GenusPolynomial):
            self._check_var(other)
            merged = dict(self._terms)
            for e, c in other._terms.items():
                merged[e] = merged.get(e, Fraction(0)) + c
            return GenusPolynomial(self._var, merged)
        if isinstance(other, (int, Fraction)):
            return self + GenusPolynomial.constant(self._var, other)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "GenusPolynomial":
        return GenusPolynomial(
            self._var, {e: -c for e, c in self._terms.items()}
        )

    def __sub__(self, other: object) -> "GenusPolynomial":
        if isinstance(other, (GenusPolynomial, int, Fraction)):
            return self + (-other if isinstance(other, GenusPolynomial) else -Fraction(other))
        return NotImplemented

    def __rsub__(self, other: object) -> "GenusPolynomial":
        if isinstance(other, (int, Fraction)):
            return (-self) + Fraction(other)
        return NotImplemented

    def __mul__(self, other: object) -> "GenusPolynomial":
        if isinstance(other, GenusPolynomial):
            self._check_var(other)
            product: dict[int, Fraction] = {}
            for e1, c1 in self._terms.items():
                for e2, c2 in other._terms.items():
                    e = e1 + e2
                    product[e] = product.get(e, Fraction(0)) + c1 * c2
            return GenusPolynomial(self._var, product)
        if isinstance(other, (int, Fraction)):
            if not other:
                return GenusPolynomial.zero(self._var)
            return GenusPolynomial(
                self._var, {e: c * other for e, c in self._terms.items()}
            )
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "GenusPolynomial":
        if power < 0:
            raise ValueError("negative powers are not polynomial")
        result = GenusPolynomial.constant(self._var, 1)
        for _ in range(power):
            result = result * self
        return result

    def shifted(self, k: int) -> "GenusPolynomial":
        """Multiply by var^k (k >= 0)."""
        if k < 0:
            raise ValueError("negative shift")
        return GenusPolynomial(
            self._var, {e + k: c for e, c in self._terms.items()}
        )

    # -- comparison --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GenusPolynomial):
            # Two zero polynomials are equal regardless of tag; otherwise
            # tags must agree.
            if not self._terms and not other._terms:
                return True
            return self._var == other._var and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            if not self._terms:
                return not other
            return self.is_constant and self._terms.get(0) == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self._terms:
            return hash(Fraction(0))
        if self.is_constant:
            return hash(self._terms[0])
        return hash((self._var, tuple(sorted(self._terms.items()))))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __str__(self) -> str:
        from .rendering import poly_text

        return poly_text(self)

    def __repr__(self) -> str:
        return f"GenusPolynomial({self._var!r}, {dict(sorted(self._terms.items()))!r})"
