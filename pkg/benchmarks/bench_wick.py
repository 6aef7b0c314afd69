"""Timing comparison of the two pairing kernels.

Enumerating the fixed-point-free involutions of d darts costs (d-1)!!
cycle-structure evaluations, so the kernels separate quickly as the degree
grows.  Run from the repository root:

    python3 benchmarks/bench_wick.py [--max-darts 14] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

from matmodel.wick import _corepy

try:
    from matmodel.wick import _corecy
except ImportError:
    _corecy = None

LADDER = [
    (4, 2),
    (4, 4),
    (6, 4),
    (6, 6),
    (4, 4, 4),
    (8, 6),
    (6, 4, 4),
    (8, 8),
    (6, 6, 6),
]


def double_factorial(n: int) -> int:
    result = 1
    while n > 1:
        result *= n
        n -= 2
    return result


def best_time(kernel, parts: tuple[int, ...], repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        kernel.pairing_sums(parts)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-darts", type=int, default=14)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if _corecy is None:
        print("compiled kernel not built; timing the pure kernel only\n")

    header = f"{'darts':>5}  {'partition':<12}{'pairings':>10}  {'pure (s)':>10}"
    if _corecy is not None:
        header += f"  {'compiled (s)':>13}  {'speedup':>8}"
    print(header)

    for parts in LADDER:
        darts = sum(parts)
        if darts > args.max_darts:
            continue
        pairings = double_factorial(darts - 1)
        pure = best_time(_corepy, parts, args.repeat)
        line = f"{darts:>5}  {str(parts):<12}{pairings:>10}  {pure:>10.4f}"
        if _corecy is not None:
            compiled = best_time(_corecy, parts, args.repeat)
            ratio = pure / compiled if compiled > 0 else float("inf")
            line += f"  {compiled:>13.4f}  {ratio:>7.1f}x"
        print(line)


if __name__ == "__main__":
    main()
