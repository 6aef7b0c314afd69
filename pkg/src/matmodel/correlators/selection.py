"""Genus selection rules for connected correlators.

Thin flavor: the correlator < prod_j p_{a_j}/a_j >_{g,N} is non-zero only
when |lambda| = 2g - 2 + 2l with g >= 0, so the genus is pinned by the
partition: g = |lambda|/2 - l + 1.

Fat flavor: the correlator at genus gt is a monomial t^m whose power is
pinned by m = (|lambda| - 2l - 4 gt + 4)/2, admissible when m is a positive
integer and gt >= 0.  The two flavors are linked by g = 2 gt + m - 1.
"""

from __future__ import annotations

from typing import Iterable

from ..exactmath import as_parts

__all__ = ["fat_selection", "thin_genus", "thin_selection"]


def thin_selection(parts: Iterable[int], genus: int) -> bool:
    """Whether the thin correlator at this genus can be non-zero."""
    parts = as_parts(parts)
    return genus >= 0 and sum(parts) == 2 * genus - 2 + 2 * len(parts)


def thin_genus(parts: Iterable[int]) -> int | None:
    """The unique admissible thin genus for a partition, or None."""
    parts = as_parts(parts)
    doubled = sum(parts) - 2 * len(parts) + 2
    if doubled < 0 or doubled % 2:
        return None
    return doubled // 2


def fat_selection(parts: Iterable[int], genus_tilde: int) -> int | None:
    """The t-power m of the fat correlator at genus gt, or None."""
    parts = as_parts(parts)
    if genus_tilde < 0:
        return None
    doubled = sum(parts) - 2 * len(parts) - 4 * genus_tilde + 4
    if doubled <= 0 or doubled % 2:
        return None
    return doubled // 2
