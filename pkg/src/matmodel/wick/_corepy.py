"""Pure-Python pairing kernel for Gaussian matrix moments.

The moment < tr M^{a_1} ... tr M^{a_l} > is a sum over perfect matchings
(fixed-point-free involutions) alpha of the d = sum(a_j) trace legs, where
each matching contributes N^c with c the number of faces - the cycles of
sigma o alpha for sigma the product of one cyclic block per trace.  The
convention is fixed by < tr M^2 > = N^2.

``pairing_sums`` enumerates all (d-1)!! matchings once and histograms the
face counts, separately for all matchings and for the connected ones (those
joining every trace into a single component).
"""

from __future__ import annotations

__all__ = ["pairing_sums"]


def pairing_sums(parts: tuple[int, ...]) -> tuple[dict[int, int], dict[int, int]]:
    """Histogram face counts over all / connected pairings of the trace legs.

    Returns ``(full, connected)``, each mapping a face count c to the number
    of pairings with that count.  ``parts`` must have even total degree.
    """
    d = sum(parts)
    if d % 2:
        raise ValueError("total degree must be even")
    if d == 0:
        return ({0: 1}, {0: 1} if len(parts) <= 1 else {})

    sigma = [0] * d
    comp = [0] * d
    pos = 0
    for trace_index, length in enumerate(parts):
        for offset in range(length):
            sigma[pos + offset] = pos + (offset + 1) % length
            comp[pos + offset] = trace_index
        pos += length

    n_traces = len(parts)
    alpha = [-1] * d
    full: dict[int, int] = {}
    connected: dict[int, int] = {}
    visited = [False] * d
    find_root = list(range(n_traces))

    def record() -> None:
        for i in range(d):
            visited[i] = False
        cycles = 0
        for start in range(d):
            if visited[start]:
                continue
            cycles += 1
            x = start
            while not visited[x]:
                visited[x] = True
                x = sigma[alpha[x]]
        full[cycles] = full.get(cycles, 0) + 1
        if n_traces == 1:
            connected[cycles] = connected.get(cycles, 0) + 1
            return
        for i in range(n_traces):
            find_root[i] = i
        classes = n_traces
        for x in range(d):
            y = alpha[x]
            if y < x:
                continue
            a = comp[x]
            while find_root[a] != a:
                a = find_root[a]
            b = comp[y]
            while find_root[b] != b:
                b = find_root[b]
            if a != b:
                find_root[b] = a
                classes -= 1
        if classes == 1:
            connected[cycles] = connected.get(cycles, 0) + 1

    def backtrack(start: int) -> None:
        x = start
        while x < d and alpha[x] >= 0:
            x += 1
        if x == d:
            record()
            return
        for y in range(x + 1, d):
            if alpha[y] < 0:
                alpha[x] = y
                alpha[y] = x
                backtrack(x + 1)
                alpha[x] = -1
                alpha[y] = -1

    backtrack(0)
    return full, connected
