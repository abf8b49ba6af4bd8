"""Exact integer helpers: compositions, binomials, multinomials, partial sums.

Everything here works on plain Python ints, so counts never overflow and
never touch floating point.
"""
from __future__ import annotations

from math import comb, factorial
from typing import Iterator, Sequence

Composition = tuple[int, ...]


def compositions(n: int) -> Iterator[Composition]:
    """Yield every composition of ``n`` in lexicographic order of the parts.

    ``compositions(0)`` yields the single empty composition ``()``.

    >>> list(compositions(3))
    [(1, 1, 1), (1, 2), (2, 1), (3,)]
    """
    if n < 0:
        raise ValueError(f"cannot compose a negative integer: {n}")
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first, *rest)


def binomial(n: int, k: int) -> int:
    """Binomial coefficient, zero whenever ``k < 0`` or ``k > n``.

    The counting formulas rely on these terms vanishing silently, e.g. a
    block asked to hold more elements than it has slots.
    """
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def multinomial(parts: Sequence[int]) -> int:
    """``(sum parts)! / prod(part!)``."""
    out = factorial(sum(parts))
    for p in parts:
        out //= factorial(p)
    return out


def partial_sum(parts: Sequence[int], i: int) -> int:
    """Sum of the first ``i`` parts; ``partial_sum(parts, 0) == 0``."""
    if not 0 <= i <= len(parts):
        raise IndexError(f"partial sum index {i} outside [0, {len(parts)}]")
    return sum(parts[:i])


def partial_sums(parts: Sequence[int]) -> list[int]:
    """All partial sums ``[0, p1, p1+p2, ..., n]``."""
    out = [0]
    for p in parts:
        out.append(out[-1] + p)
    return out


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)
