"""Integer partitions and the power-sum normalization constant z_lambda.

Partitions index both correlators (the multiset of trace exponents) and
coupling monomials g_lambda = prod_i g_{lambda_i}.  Everything here is exact
integer combinatorics.
"""

from __future__ import annotations

from math import factorial, prod
from typing import Iterable, Iterator

__all__ = [
    "Partition",
    "as_parts",
    "automorphism_factor",
    "multiplicities",
    "partitions_of",
    "partitions_up_to",
    "z_lambda",
]


def as_parts(parts: "Partition | Iterable[int]") -> tuple[int, ...]:
    """Normalize any part iterable to a weakly decreasing tuple of positive ints."""
    if isinstance(parts, Partition):
        return parts.parts
    normalized = tuple(sorted((int(a) for a in parts), reverse=True))
    if normalized and normalized[-1] <= 0:
        raise ValueError(f"partition parts must be positive, got {normalized}")
    return normalized


class Partition:
    """A weakly decreasing finite sequence of positive integers."""

    __slots__ = ("_parts",)

    def __init__(self, parts: Iterable[int] = ()):
        if isinstance(parts, Partition):
            self._parts = parts.parts
        else:
            self._parts = as_parts(parts)

    @property
    def parts(self) -> tuple[int, ...]:
        return self._parts

    @property
    def size(self) -> int:
        """|lambda| = sum of the parts."""
        return sum(self._parts)

    @property
    def length(self) -> int:
        """l(lambda) = number of parts."""
        return len(self._parts)

    def multiplicities(self) -> dict[int, int]:
        """m_j = number of parts equal to j, for each part value j present."""
        return multiplicities(self._parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self._parts)

    def __len__(self) -> int:
        return len(self._parts)

    def __getitem__(self, i: int) -> int:
        return self._parts[i]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Partition):
            return self._parts == other._parts
        if isinstance(other, tuple):
            return self._parts == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._parts)

    def __repr__(self) -> str:
        return f"Partition({list(self._parts)!r})"


def multiplicities(parts: Partition | Iterable[int]) -> dict[int, int]:
    """Part-value multiplicities m_j of a partition."""
    counts: dict[int, int] = {}
    for a in as_parts(parts):
        counts[a] = counts.get(a, 0) + 1
    return counts


def z_lambda(parts: Partition | Iterable[int]) -> int:
    """z_lambda = prod_j j^{m_j} m_j!, the order of the centralizer of a
    permutation of cycle type lambda.  Equals 1 on the empty partition."""
    return prod(
        j**m * factorial(m) for j, m in multiplicities(parts).items()
    )


def automorphism_factor(parts: Partition | Iterable[int]) -> int:
    """prod_j m_j!, the permutation redundancy of equal parts."""
    return prod(factorial(m) for m in multiplicities(parts).values())


def partitions_of(
    n: int, max_part: int | None = None
) -> Iterator[tuple[int, ...]]:
    """Yield all partitions of n as weakly decreasing tuples.

    Ordering is reverse lexicographic: (n,), (n-1, 1), ..., (1,)*n.
    """
    if n < 0:
        return
    if n == 0:
        yield ()
        return
    first_cap = n if max_part is None else min(max_part, n)
    for first in range(first_cap, 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first, *rest)


def partitions_up_to(
    max_size: int, *, even_only: bool = False, min_size: int = 1
) -> Iterator[tuple[int, ...]]:
    """Yield partitions of every size in [min_size, max_size], smallest size first."""
    step = 2 if even_only else 1
    start = min_size
    if even_only and start % 2:
        start += 1
    for n in range(start, max_size + 1, step):
        yield from partitions_of(n)
