"""Exact counts of transition functions, automata and minimal automata.

All values are plain ints. Recurrences are memoised with ``lru_cache``, which
is safe to share between threads (a race can only recompute an identical
value).
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial

from .numkit import binomial
from .parking import WeightFunction, count_pf, count_simple_pf

TABLE_KINDS = ("table-a", "table-b", "table-c", "f", "s", "d", "e", "a", "m")


class InexactDivisionError(ArithmeticError):
    pass


@lru_cache(maxsize=None)
def count_transition_functions(k: int, t: int, n: int) -> int:
    """Acyclic transition functions on ``n`` states with ``t`` extra sinks (Liskovets)."""
    if n == 0:
        return 1
    total = 0
    for j in range(n):
        term = binomial(n, j) * (j + t + 1) ** (k * (n - j)) * count_transition_functions(k, t, j)
        total += term if (n - j - 1) % 2 == 0 else -term
    return total


@lru_cache(maxsize=None)
def count_extended_ni(k: int, t: int, n: int) -> int:
    """Extended non-initial ADFA: transition functions times accepting sets."""
    if n == 0:
        return 1
    total = 0
    for j in range(n):
        term = binomial(n, j) * (2 * (j + t + 1) ** k) ** (n - j) * count_extended_ni(k, t, j)
        total += term if (n - j - 1) % 2 == 0 else -term
    return total


@lru_cache(maxsize=None)
def count_adfa(k: int, n: int) -> int:
    """Initially connected ADFA on ``n`` states, initial label fixed.

    Solved from ``e(k,0;n) = sum_t C(n-1,t-1) e(k,t;n-t) a(k;t)``; the
    ``t = n`` term has coefficient ``e(k,n;0) = 1``.
    """
    if n < 1:
        raise ValueError("an ADFA has at least one state")
    rest = sum(binomial(n - 1, t - 1) * count_extended_ni(k, t, n - t) * count_adfa(k, t)
               for t in range(1, n))
    return count_extended_ni(k, 0, n) - rest


@lru_cache(maxsize=None)
def count_simple_constrained(k: int, t: int, n: int) -> int:
    """Simple ``2(m+t)^k - t - 1``-parking functions on ``n`` labels.

    Depends on the constraint set only through its size ``t + 1``.
    """
    return count_simple_pf(WeightFunction.constrained(k, t), n)


@lru_cache(maxsize=None)
def count_madfa(k: int, n: int) -> int:
    """Minimal ADFA on ``n`` labelled states with the initial label fixed.

    Triangular solve of
    ``s(2m^k-1; n) = sum_t C(n-1,t-1) s(2(m+t)^k-t-1; n-t) m(k;t)``.
    """
    if n < 1:
        raise ValueError("a minimal ADFA has at least one state")
    lead = binomial(n - 1, n - 1) * count_simple_constrained(k, n, 0)
    if lead != 1:
        raise ArithmeticError(f"leading coefficient {lead} != 1")
    rest = sum(binomial(n - 1, t - 1) * count_simple_constrained(k, t, n - t) * count_madfa(k, t)
               for t in range(1, n))
    return count_simple_constrained(k, 0, n) - rest


def _exact_div(value: int, divisor: int, what: str) -> int:
    q, r = divmod(value, divisor)
    if r:
        raise InexactDivisionError(f"{what}: {value} is not divisible by {divisor}")
    return q


def cell(kind: str, k: int, n: int, t: int = 0) -> int:
    """One entry of a table of the given kind."""
    if kind == "table-a":
        return _exact_div(count_simple_pf(WeightFunction.coreachable(k), n), factorial(n), kind)
    if kind == "table-b":
        return _exact_div(count_simple_pf(WeightFunction.doubled(k), n), factorial(n), kind)
    if kind == "table-c":
        return _exact_div(count_madfa(k, n), factorial(n - 1), kind)
    if kind == "f":
        return count_pf(WeightFunction.doubled(k, t), n)
    if kind == "s":
        return count_simple_constrained(k, t, n)
    if kind == "d":
        return count_transition_functions(k, t, n)
    if kind == "e":
        return count_extended_ni(k, t, n)
    if kind == "a":
        return count_adfa(k, n)
    if kind == "m":
        return count_madfa(k, n)
    raise ValueError(f"unknown table kind {kind!r}; expected one of {', '.join(TABLE_KINDS)}")


NORMALIZATION = {"table-a": "divide-by-n!", "table-b": "divide-by-n!",
                 "table-c": "divide-by-(n-1)!"}


@dataclass
class CountTable:
    kind: str
    k_range: list[int]
    n_range: list[int]
    entries: list[list[int]] = field(default_factory=list)
    t: int = 0

    @property
    def normalization(self) -> str:
        return NORMALIZATION.get(self.kind, "none")

    def __getitem__(self, key: tuple[int, int]) -> int:
        k, n = key
        return self.entries[self.k_range.index(k)][self.n_range.index(n)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k\\n", *self.n_range])
        for k, row in zip(self.k_range, self.entries):
            writer.writerow([k, *row])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({
            "kind": self.kind,
            "k_range": self.k_range,
            "n_range": self.n_range,
            "t": self.t,
            "normalization": self.normalization,
            "entries": self.entries,
        }, indent=2) + "\n"

    def to_text(self) -> str:
        cells = [["k\\n", *map(str, self.n_range)]]
        cells += [[str(k), *map(str, row)] for k, row in zip(self.k_range, self.entries)]
        widths = [max(len(r[i]) for r in cells) for i in range(len(cells[0]))]
        return "".join(" ".join(c.rjust(w) for c, w in zip(r, widths)) + "\n" for r in cells)


def emit_table(kind: str, k_range, n_range, t: int = 0) -> CountTable:
    """Grid of exact (normalised) counts, one row per alphabet size."""
    k_range, n_range = list(k_range), list(n_range)
    if not k_range or not n_range:
        raise ValueError("table ranges must be non-empty")
    lowest = 1 if kind in ("table-c", "a", "m") else 0
    if min(n_range) < lowest or min(k_range) < 1:
        raise ValueError(f"{kind} needs k >= 1 and n >= {lowest}")
    entries = [[cell(kind, k, n, t) for n in n_range] for k in k_range]
    return CountTable(kind, k_range, n_range, entries, t)
