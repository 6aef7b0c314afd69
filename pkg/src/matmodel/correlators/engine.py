"""Memoized Virasoro recursion for connected correlators.

``CorrelatorEngine.thin(parts, g)`` returns the exact polynomial in N

    V(lambda, g) = < prod_j p_{a_j} / a_j >^c_{g, N},

and ``fat(parts, gt)`` the exact monomial in t of the fat flavor.  Both obey
the same recursion on the distinguished part of the partition:

* base cases V((1,1), 0) = N and V((2,), 1) = N^2 / 2 (fat: t and t^2 / 2 at
  genus 0);
* a part equal to 1 is removed while lowering one remaining part (puncture);
* a part equal to 2 is removed against the total degree of the rest
  (dilaton);
* a part m + 2 >= 3 is traded via the L_m constraint for: one raised part,
  one genus-lowering insertion of p_m, a double insertion p_k p_{m-k} two
  genera down, and all stable splittings into two factors.

Every step lowers the total degree by exactly two, so the recursion
terminates; failed selection or negative genus contributes zero.  Computed
values are memoized in memory and, when a cache directory is configured
(argument or ``MATMODEL_CACHE``), persisted as JSON lines.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from ..exactmath import GenusPolynomial, as_parts
from ..exactmath.rendering import poly_from_json, poly_json
from .selection import fat_selection, thin_selection

__all__ = [
    "CorrelatorEngine",
    "default_engine",
    "fat_correlator",
    "fat_from_thin",
    "thin_correlator",
]

_CACHE_FILE = "correlators.jsonl"


class CorrelatorEngine:
    """Exact thin/fat correlator computer with memoization."""

    def __init__(self, cache_dir: str | os.PathLike | None = None):
        self._memo: dict[tuple[tuple[int, ...], int, str], GenusPolynomial] = {}
        self.stats = {"hits": 0, "computed": 0, "loaded": 0}
        if cache_dir is None:
            cache_dir = os.environ.get("MATMODEL_CACHE")
        self._cache_path = (
            Path(cache_dir) / _CACHE_FILE if cache_dir is not None else None
        )
        if self._cache_path is not None and self._cache_path.exists():
            self._load_cache()

    # -- persistence -------------------------------------------------------

    @property
    def cache_path(self) -> Path | None:
        """Location of the JSON-lines cache, or None when not configured."""
        return self._cache_path

    def _load_cache(self) -> None:
        assert self._cache_path is not None
        with self._cache_path.open(encoding="utf-8") as handle:
            for line in handle:
                line = line.strip()
                if not line:
                    continue
                record = json.loads(line)
                key = (
                    tuple(record["parts"]),
                    int(record["genus"]),
                    record["flavor"],
                )
                self._memo[key] = poly_from_json(record["poly"])
                self.stats["loaded"] += 1

    def save_cache(self) -> None:
        """Write all memoized correlators to the cache file, deterministically."""
        if self._cache_path is None:
            raise ValueError("engine has no cache directory configured")
        self._cache_path.parent.mkdir(parents=True, exist_ok=True)
        lines = []
        for (parts, genus, flavor) in sorted(self._memo):
            record = {
                "parts": list(parts),
                "genus": genus,
                "flavor": flavor,
                "poly": poly_json(self._memo[(parts, genus, flavor)]),
            }
            lines.append(json.dumps(record, sort_keys=True))
        tmp = self._cache_path.with_suffix(".tmp")
        tmp.write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
        tmp.replace(self._cache_path)

    # -- public API --------------------------------------------------------

    def thin(self, parts: Iterable[int], genus: int) -> GenusPolynomial:
        """V(lambda, g) as an exact polynomial in N (zero if not selected)."""
        parts = as_parts(parts)
        if not parts:
            raise ValueError("correlators need at least one part")
        if not thin_selection(parts, genus):
            return GenusPolynomial.zero("N")
        return self._lookup(parts, genus, "thin")

    def fat(self, parts: Iterable[int], genus_tilde: int) -> GenusPolynomial:
        """Fat correlator at genus gt as an exact monomial in t (or zero)."""
        parts = as_parts(parts)
        if not parts:
            raise ValueError("correlators need at least one part")
        if fat_selection(parts, genus_tilde) is None:
            return GenusPolynomial.zero("t")
        return self._lookup(parts, genus_tilde, "fat")

    def fat_from_thin(self, parts: Iterable[int], genus_tilde: int) -> GenusPolynomial:
        """Fat correlator recovered from the thin one: [N^m] V(lambda, g) t^m.

        Uses m = (|lambda| - 2l - 4 gt + 4)/2 and g = 2 gt + m - 1; this is an
        independent route to ``fat`` and the two must agree.
        """
        parts = as_parts(parts)
        power = fat_selection(parts, genus_tilde)
        if power is None:
            return GenusPolynomial.zero("t")
        genus = 2 * genus_tilde + power - 1
        coeff = self.thin(parts, genus).coefficient(power)
        return GenusPolynomial("t", {power: coeff})

    # -- recursion ---------------------------------------------------------

    def _lookup(
        self, parts: tuple[int, ...], genus: int, flavor: str
    ) -> GenusPolynomial:
        key = (parts, genus, flavor)
        cached = self._memo.get(key)
        if cached is not None:
            self.stats["hits"] += 1
            return cached
        value = self._compute(parts, genus, flavor)
        self._memo[key] = value
        self.stats["computed"] += 1
        return value

    def _compute(
        self, parts: tuple[int, ...], genus: int, flavor: str
    ) -> GenusPolynomial:
        fat = flavor == "fat"
        var = "t" if fat else "N"
        if parts == (1, 1) and genus == 0:
            return GenusPolynomial.variable(var)
        if parts == (2,) and genus == (0 if fat else 1):
            return GenusPolynomial("t" if fat else "N", {2: Fraction(1, 2)})

        value = self.fat if fat else self.thin
        smallest = parts[-1]

        if smallest == 1:
            rest = parts[:-1]
            total = GenusPolynomial.zero(var)
            for j, a in enumerate(rest):
                if a == 1:
                    continue
                lowered = _resorted(rest, j, a - 1)
                total = total + (a - 1) * value(lowered, genus)
            return total

        if smallest == 2:
            rest = parts[:-1]
            return Fraction(sum(rest), 2) * value(rest, genus)

        pivot = parts[0]
        rest = parts[1:]
        m = pivot - 2
        total = GenusPolynomial.zero(var)

        for j, a in enumerate(rest):
            raised = _resorted(rest, j, a + m)
            total = total + (a + m) * value(raised, genus)

        lowered_genus = genus if fat else genus - 1
        inserted = tuple(sorted(rest + (m,), reverse=True))
        total = total + (2 * m) * value(inserted, lowered_genus).shifted(1)

        double_genus = genus - 1 if fat else genus - 2
        for k in range(1, m):
            double = tuple(sorted(rest + (k, m - k), reverse=True))
            total = total + (k * (m - k)) * value(double, double_genus)

        split_genus = genus if fat else genus - 1
        if split_genus >= 0 and m >= 2:
            n_rest = len(rest)
            for k in range(1, m):
                weight = k * (m - k)
                for mask in range(1 << n_rest):
                    left = tuple(
                        sorted(
                            (k,)
                            + tuple(rest[i] for i in range(n_rest) if mask >> i & 1),
                            reverse=True,
                        )
                    )
                    right = tuple(
                        sorted(
                            (m - k,)
                            + tuple(
                                rest[i] for i in range(n_rest) if not mask >> i & 1
                            ),
                            reverse=True,
                        )
                    )
                    for g1 in range(split_genus + 1):
                        factor1 = value(left, g1)
                        if factor1.is_zero:
                            continue
                        factor2 = value(right, split_genus - g1)
                        if factor2.is_zero:
                            continue
                        total = total + weight * factor1 * factor2

        return Fraction(1, pivot) * total


def _resorted(parts: tuple[int, ...], index: int, new_value: int) -> tuple[int, ...]:
    replaced = parts[:index] + (new_value,) + parts[index + 1 :]
    return tuple(sorted(replaced, reverse=True))


_default: CorrelatorEngine | None = None


def default_engine() -> CorrelatorEngine:
    """A process-wide shared engine (no disk cache unless MATMODEL_CACHE set)."""
    global _default
    if _default is None:
        _default = CorrelatorEngine()
    return _default


def thin_correlator(parts: Iterable[int], genus: int) -> GenusPolynomial:
    """V(lambda, g) via the shared engine."""
    return default_engine().thin(parts, genus)


def fat_correlator(parts: Iterable[int], genus_tilde: int) -> GenusPolynomial:
    """Fat correlator via the shared engine."""
    return default_engine().fat(parts, genus_tilde)


def fat_from_thin(parts: Iterable[int], genus_tilde: int) -> GenusPolynomial:
    """Fat correlator from the thin flavor via the shared engine."""
    return default_engine().fat_from_thin(parts, genus_tilde)
