"""Weighted-truncated multivariate formal power series.

Series live in coupling symbols ``g_1, g_2, ...`` (weight of g_n is n) and
``t_0, t_1, ...`` (weight of t_k is k+1).  Every series carries a truncation
weight D: monomials of total weight > D are discarded by all operations, and
with this grading every operation below is exact through weight D.

Coefficients are exact rationals or :class:`GenusPolynomial` values; the two
kinds mix freely (a rational acts as a constant polynomial).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Union

from .polynomial import GenusPolynomial

__all__ = [
    "Coefficient",
    "Monomial",
    "TruncatedSeries",
    "monomial_weight",
    "series_exp",
    "series_log",
    "series_pow",
    "series_substitute",
    "symbol_weight",
]

Coefficient = Union[Fraction, int, GenusPolynomial]
Monomial = tuple[tuple[str, int], ...]


@lru_cache(maxsize=None)
def _symbol_key(symbol: str) -> tuple[str, int]:
    family, _, index = symbol.partition("_")
    try:
        idx = int(index)
    except ValueError:
        raise ValueError(f"malformed coupling symbol {symbol!r}") from None
    if family == "g" and idx >= 1:
        return ("g", idx)
    if family == "t" and idx >= 0:
        return ("t", idx)
    raise ValueError(f"unknown coupling symbol {symbol!r}")


@lru_cache(maxsize=None)
def symbol_weight(symbol: str) -> int:
    """Grading weight: weight(g_n) = n, weight(t_k) = k + 1."""
    family, idx = _symbol_key(symbol)
    return idx if family == "g" else idx + 1


@lru_cache(maxsize=None)
def monomial_weight(monomial: Monomial) -> int:
    return sum(symbol_weight(sym) * exp for sym, exp in monomial)


def _canonical_monomial(pairs: Iterable[tuple[str, int]]) -> Monomial:
    merged: dict[str, int] = {}
    for sym, exp in pairs:
        _symbol_key(sym)  # validate
        if exp < 0:
            raise ValueError(f"negative exponent for {sym}")
        if exp:
            merged[sym] = merged.get(sym, 0) + exp
    return tuple(sorted(merged.items(), key=lambda kv: _symbol_key(kv[0])))


def _coeff_zero(c: Coefficient) -> bool:
    return not c


class TruncatedSeries:
    """Formal power series truncated at total weight D."""

    __slots__ = ("_truncation", "_terms")

    def __init__(
        self,
        truncation: int,
        terms: Mapping[Monomial, Coefficient] | None = None,
    ):
        if truncation < 0:
            raise ValueError("truncation weight must be non-negative")
        self._truncation = truncation
        clean: dict[Monomial, Coefficient] = {}
        if terms:
            for monomial, coeff in terms.items():
                monomial = _canonical_monomial(monomial)
                if monomial_weight(monomial) > truncation or _coeff_zero(coeff):
                    continue
                if isinstance(coeff, int):
                    coeff = Fraction(coeff)
                clean[monomial] = coeff
        self._terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, truncation: int) -> "TruncatedSeries":
        return cls(truncation)

    @classmethod
    def one(cls, truncation: int) -> "TruncatedSeries":
        return cls(truncation, {(): Fraction(1)})

    @classmethod
    def constant(cls, truncation: int, value: Coefficient) -> "TruncatedSeries":
        return cls(truncation, {(): value})

    @classmethod
    def symbol(
        cls, truncation: int, symbol: str, coeff: Coefficient = 1
    ) -> "TruncatedSeries":
        return cls(truncation, {((symbol, 1),): coeff})

    # -- inspection --------------------------------------------------------

    @property
    def truncation(self) -> int:
        return self._truncation

    @property
    def terms(self) -> dict[Monomial, Coefficient]:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, monomial: Iterable[tuple[str, int]]) -> Coefficient:
        return self._terms.get(_canonical_monomial(monomial), Fraction(0))

    def constant_term(self) -> Coefficient:
        return self._terms.get((), Fraction(0))

    def min_weight(self) -> int | None:
        """Smallest monomial weight present, or None for the zero series."""
        if not self._terms:
            return None
        return min(monomial_weight(m) for m in self._terms)

    def symbols(self) -> set[str]:
        return {sym for monomial in self._terms for sym, _ in monomial}

    # -- ring structure ----------------------------------------------------

    def _merge(
        self, other: "TruncatedSeries", combine: Callable
    ) -> "TruncatedSeries":
        truncation = min(self._truncation, other._truncation)
        merged: dict[Monomial, Coefficient] = dict(self._terms)
        for monomial, coeff in other._terms.items():
            if monomial in merged:
                merged[monomial] = combine(merged[monomial], coeff)
            else:
                merged[monomial] = combine(Fraction(0), coeff)
        return TruncatedSeries(truncation, merged)

    def __add__(self, other: object) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return self._merge(other, lambda a, b: a + b)
        return NotImplemented

    def __sub__(self, other: object) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return self._merge(other, lambda a, b: a - b)
        return NotImplemented

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(
            self._truncation, {m: -c for m, c in self._terms.items()}
        )

    def scale(self, factor: Coefficient) -> "TruncatedSeries":
        if _coeff_zero(factor):
            return TruncatedSeries(self._truncation)
        return TruncatedSeries(
            self._truncation,
            {m: c * factor for m, c in self._terms.items()},
        )

    def __mul__(self, other: object) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction, GenusPolynomial)):
            return self.scale(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        truncation = min(self._truncation, other._truncation)
        product: dict[Monomial, Coefficient] = {}
        other_items = [
            (m, monomial_weight(m), c) for m, c in other._terms.items()
        ]
        for m1, c1 in self._terms.items():
            w1 = monomial_weight(m1)
            if w1 > truncation:
                continue
            for m2, w2, c2 in other_items:
                if w1 + w2 > truncation:
                    continue
                monomial = _merge_monomials(m1, m2)
                coeff = c1 * c2
                if monomial in product:
                    product[monomial] = product[monomial] + coeff
                else:
                    product[monomial] = coeff
        return TruncatedSeries(truncation, product)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "TruncatedSeries":
        if power < 0:
            raise ValueError("use series_pow for non-integer or negative powers")
        result = TruncatedSeries.one(self._truncation)
        base = self
        while power:
            if power & 1:
                result = result * base
            power >>= 1
            if power:
                base = base * base
        return result

    def truncate(self, weight: int) -> "TruncatedSeries":
        """Restrict to monomials of weight <= ``weight`` (and lower the bound)."""
        weight = min(weight, self._truncation)
        return TruncatedSeries(
            weight,
            {
                m: c
                for m, c in self._terms.items()
                if monomial_weight(m) <= weight
            },
        )

    def map_coefficients(self, fn: Callable[[Coefficient], Coefficient]) -> "TruncatedSeries":
        return TruncatedSeries(
            self._truncation, {m: fn(c) for m, c in self._terms.items()}
        )

    # -- calculus ----------------------------------------------------------

    def differentiate(self, symbol: str) -> "TruncatedSeries":
        """Formal partial derivative with respect to one coupling symbol.

        The result keeps the same truncation bound; its terms of weight
        <= D - weight(symbol) are exactly the derivative of the series.
        """
        _symbol_key(symbol)
        result: dict[Monomial, Coefficient] = {}
        for monomial, coeff in self._terms.items():
            for i, (sym, exp) in enumerate(monomial):
                if sym != symbol:
                    continue
                if exp == 1:
                    reduced = monomial[:i] + monomial[i + 1 :]
                else:
                    reduced = (
                        monomial[:i] + ((sym, exp - 1),) + monomial[i + 1 :]
                    )
                prior = result.get(reduced, Fraction(0))
                result[reduced] = prior + coeff * exp
                break
        return TruncatedSeries(self._truncation, result)

    # -- transcendental-free analytic operations ---------------------------

    def exp(self) -> "TruncatedSeries":
        """exp of a series with zero constant term."""
        if not _coeff_zero(self.constant_term()):
            raise ValueError("series_exp requires a zero constant term")
        result = TruncatedSeries.one(self._truncation)
        term = TruncatedSeries.one(self._truncation)
        low = self.min_weight()
        if low is None:
            return result
        for k in range(1, self._truncation // low + 1):
            term = (term * self).scale(Fraction(1, k))
            if term.is_zero:
                break
            result = result + term
        return result

    def log(self) -> "TruncatedSeries":
        """log of a series with constant term 1."""
        if self.constant_term() != 1:
            raise ValueError("series_log requires constant term 1")
        u = self - TruncatedSeries.one(self._truncation)
        low = u.min_weight()
        result = TruncatedSeries.zero(self._truncation)
        if low is None:
            return result
        power = TruncatedSeries.one(self._truncation)
        for k in range(1, self._truncation // low + 1):
            power = power * u
            if power.is_zero:
                break
            result = result + power.scale(Fraction((-1) ** (k + 1), k))
        return result

    def pow(self, exponent: Fraction | int) -> "TruncatedSeries":
        """Binomial power (1 + u)^r of a series with constant term 1."""
        exponent = Fraction(exponent)
        if self.constant_term() != 1:
            raise ValueError("series_pow requires constant term 1")
        u = self - TruncatedSeries.one(self._truncation)
        low = u.min_weight()
        result = TruncatedSeries.one(self._truncation)
        if low is None:
            return result
        binom = Fraction(1)
        power = TruncatedSeries.one(self._truncation)
        for k in range(1, self._truncation // low + 1):
            binom *= Fraction(exponent - (k - 1), k)
            power = power * u
            if power.is_zero or not binom:
                break
            result = result + power.scale(binom)
        return result

    def substitute(
        self, mapping: Mapping[str, "TruncatedSeries"]
    ) -> "TruncatedSeries":
        """Compose with symbol replacements.

        Each replacement must have minimum weight >= the weight of the symbol
        it replaces (the zero series qualifies); otherwise the truncated
        composition could not be exact through weight D and a ValueError is
        raised.  Symbols absent from the mapping are kept.
        """
        for symbol, replacement in mapping.items():
            low = replacement.min_weight()
            if low is not None and low < symbol_weight(symbol):
                raise ValueError(
                    f"substitution for {symbol} has minimum weight {low} < "
                    f"{symbol_weight(symbol)}; truncation would be unsound"
                )
        truncation = self._truncation
        power_cache: dict[tuple[str, int], TruncatedSeries] = {}

        def symbol_power(sym: str, exp: int) -> TruncatedSeries:
            cached = power_cache.get((sym, exp))
            if cached is not None:
                return cached
            if sym in mapping:
                base = mapping[sym].truncate(truncation)
                value = base**exp
            else:
                value = TruncatedSeries(
                    truncation, {((sym, exp),): Fraction(1)}
                )
            power_cache[(sym, exp)] = value
            return value

        total = TruncatedSeries.zero(truncation)
        for monomial, coeff in self._terms.items():
            piece = TruncatedSeries.one(truncation)
            for sym, exp in monomial:
                piece = piece * symbol_power(sym, exp)
                if piece.is_zero:
                    break
            total = total + piece.scale(coeff)
        return total

    # -- comparison --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self._truncation != other._truncation:
            return False
        if set(self._terms) != set(other._terms):
            return False
        return all(self._terms[m] == other._terms[m] for m in self._terms)

    def __hash__(self) -> int:  # pragma: no cover - not used as dict key
        return hash((self._truncation, frozenset(self._terms)))

    def __str__(self) -> str:
        from .rendering import series_text

        return series_text(self)

    def __repr__(self) -> str:
        return f"TruncatedSeries(D={self._truncation}, terms={len(self._terms)})"


def _merge_monomials(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    merged: dict[str, int] = dict(m1)
    for sym, exp in m2:
        merged[sym] = merged.get(sym, 0) + exp
    return tuple(sorted(merged.items(), key=lambda kv: _symbol_key(kv[0])))


def series_exp(series: TruncatedSeries) -> TruncatedSeries:
    """exp(s) truncated at the weight bound of ``series``."""
    return series.exp()


def series_log(series: TruncatedSeries) -> TruncatedSeries:
    """log(s) for series with constant term 1."""
    return series.log()


def series_pow(series: TruncatedSeries, exponent: Fraction | int) -> TruncatedSeries:
    """s^r via the binomial series, for series with constant term 1."""
    return series.pow(exponent)


def series_substitute(
    series: TruncatedSeries, mapping: Mapping[str, TruncatedSeries]
) -> TruncatedSeries:
    """Compose ``series`` with the given symbol replacements."""
    return series.substitute(mapping)
