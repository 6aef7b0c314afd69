"""Exact Gaussian-moment oracle built on exhaustive Wick pairings.

Cross-validates the correlator engine on small partitions: the connected
moment <prod_j tr M^{a_j}>^c divided by prod_j a_j must equal the thin
correlator at the unique admissible genus g = |lambda|/2 - l + 1.

Two independent routes to connectedness are provided: the kernel tracks
trace-component connectivity per pairing, while ``cumulant_connected_moment``
inverts full moments over set partitions of the traces.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Iterable, Iterator, Sequence

from ..exactmath import GenusPolynomial, as_parts
from . import pairing_sums

__all__ = [
    "DEFAULT_DART_CAP",
    "DartCapExceeded",
    "connected_moment",
    "cumulant_connected_moment",
    "gaussian_moment",
    "oracle_correlator",
]

DEFAULT_DART_CAP = 14


class DartCapExceeded(ValueError):
    """Raised when a requested moment needs more pairing legs than allowed."""


def _check_cap(parts: tuple[int, ...], dart_cap: int) -> None:
    degree = sum(parts)
    if degree > dart_cap:
        raise DartCapExceeded(
            f"moment of degree {degree} exceeds the dart cap {dart_cap}; "
            f"pass a larger dart_cap to enumerate (degree-1)!! pairings anyway"
        )


def _counts_to_poly(counts: dict[int, int]) -> GenusPolynomial:
    return GenusPolynomial("N", {c: Fraction(n) for c, n in counts.items()})


@lru_cache(maxsize=None)
def _pairing_polys(parts: tuple[int, ...]) -> tuple[GenusPolynomial, GenusPolynomial]:
    full, connected = pairing_sums(parts)
    return _counts_to_poly(full), _counts_to_poly(connected)


def gaussian_moment(
    parts: Iterable[int], *, dart_cap: int = DEFAULT_DART_CAP
) -> GenusPolynomial:
    """Full Gaussian moment <prod_j tr M^{a_j}> as an exact polynomial in N."""
    parts = as_parts(parts)
    if sum(parts) % 2:
        return GenusPolynomial.zero("N")
    _check_cap(parts, dart_cap)
    return _pairing_polys(parts)[0]


def connected_moment(
    parts: Iterable[int], *, dart_cap: int = DEFAULT_DART_CAP
) -> GenusPolynomial:
    """Connected moment <prod_j tr M^{a_j}>^c from per-pairing connectivity."""
    parts = as_parts(parts)
    if sum(parts) % 2:
        return GenusPolynomial.zero("N")
    _check_cap(parts, dart_cap)
    return _pairing_polys(parts)[1]


def _set_partitions(items: Sequence[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for partial in _set_partitions(rest):
        yield ((first,),) + partial
        for i, block in enumerate(partial):
            yield partial[:i] + ((first,) + block,) + partial[i + 1 :]


def cumulant_connected_moment(
    parts: Iterable[int], *, dart_cap: int = DEFAULT_DART_CAP
) -> GenusPolynomial:
    """Connected moment via cumulant inversion over set partitions of traces.

    Independent of the kernel's connectivity tracking: uses only full moments
    of sub-multisets, combined with Moebius weights (-1)^{|P|-1} (|P|-1)!.
    """
    parts = as_parts(parts)
    if sum(parts) % 2:
        return GenusPolynomial.zero("N")
    _check_cap(parts, dart_cap)
    total = GenusPolynomial.zero("N")
    indices = tuple(range(len(parts)))
    for set_partition in _set_partitions(indices):
        weight = Fraction((-1) ** (len(set_partition) - 1)) * _factorial(
            len(set_partition) - 1
        )
        piece = GenusPolynomial.constant("N", weight)
        for block in set_partition:
            block_parts = tuple(sorted((parts[i] for i in block), reverse=True))
            if sum(block_parts) % 2:
                piece = GenusPolynomial.zero("N")
                break
            piece = piece * _pairing_polys(block_parts)[0]
        total = total + piece
    return total


def _factorial(n: int) -> int:
    result = 1
    for k in range(2, n + 1):
        result *= k
    return result


def oracle_correlator(
    parts: Iterable[int], *, dart_cap: int = DEFAULT_DART_CAP
) -> tuple[int, GenusPolynomial]:
    """Thin correlator from brute force: (genus, <prod_j p_{a_j}/a_j>^c).

    The genus is pinned by the selection rule |lambda| = 2g - 2 + 2l; the
    polynomial is the connected pairing sum divided by prod_j a_j.
    """
    parts = as_parts(parts)
    if not parts:
        raise ValueError("oracle_correlator needs at least one trace")
    degree = sum(parts)
    if degree % 2:
        raise ValueError("total degree must be even for a non-zero correlator")
    genus2 = degree - 2 * len(parts) + 2
    if genus2 % 2 or genus2 < 0:
        raise ValueError(f"no admissible genus for partition {parts}")
    value = connected_moment(parts, dart_cap=dart_cap) * Fraction(1, prod(parts))
    return genus2 // 2, value
