"""Generalized parking functions.

A phi-parking function on a label set N (|N| = n) is stored as a sequence of
phi(n) pairwise disjoint subsets (Q_1, ..., Q_phi(n)) whose union is N and
such that the first phi(j) subsets hold at least j labels, for every j in [n].
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Iterator, Sequence

from .numkit import binomial, compositions, multinomial, partial_sums

EMPTY_SLOT = "·"

#: how far ahead construction checks monotonicity of tabulated-free families
PROBE_RANGE = 32


class ParkingStructureError(ValueError):
    """Slots that cannot even be read as a candidate parking function."""


@dataclass(frozen=True)
class WeightFunction:
    """Non-decreasing map ``phi(m) = a * (m + t) ** k + c`` on positive integers.

    Pass ``table`` instead to tabulate an arbitrary non-decreasing map; entry
    ``table[m - 1]`` is ``phi(m)``. ``phi(0)`` is defined as 0.
    """

    a: int = 1
    k: int = 1
    t: int = 0
    c: int = 0
    table: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.table is not None:
            values = tuple(int(v) for v in self.table)
            object.__setattr__(self, "table", values)
            probe = values
        else:
            if self.a < 1 or self.k < 1 or self.t < 0:
                raise ValueError(f"invalid weight parameters a={self.a} k={self.k} t={self.t}")
            probe = [self(m) for m in range(1, PROBE_RANGE + 1)]
        if any(v < 0 for v in probe):
            raise ValueError(f"weight function {self} takes negative values")
        if any(x > y for x, y in zip(probe, probe[1:])):
            raise ValueError(f"weight function {self} is not non-decreasing")

    @classmethod
    def tabulated(cls, values: Iterable[int]) -> "WeightFunction":
        return cls(table=tuple(values))

    @classmethod
    def power(cls, k: int) -> "WeightFunction":
        """``m^k``."""
        return cls(1, k, 0, 0)

    @classmethod
    def doubled(cls, k: int, t: int = 0) -> "WeightFunction":
        """``2(m+t)^k``: parking functions in bijection with extended automata."""
        return cls(2, k, t, 0)

    @classmethod
    def coreachable(cls, k: int) -> "WeightFunction":
        """``2m^k - 1``."""
        return cls(2, k, 0, -1)

    @classmethod
    def constrained(cls, k: int, t: int) -> "WeightFunction":
        """``2(m+t)^k - t - 1``: one level-1 slot removed per constraint."""
        return cls(2, k, t, -t - 1)

    @classmethod
    def parse(cls, text: str, k: int | None = None, t: int | None = None) -> "WeightFunction":
        """Parse a family name such as ``"m^2"``, ``"2m^k-1"`` or ``"2(m+t)^k-t-1"``.

        The letters ``k`` and ``t`` are substituted from the keyword arguments.
        A quadruple ``"a,k,t,c"`` is accepted too.
        """
        text = text.replace(" ", "").replace("*", "")
        if "," in text:
            try:
                a_, k_, t_, c_ = (int(x) for x in text.split(","))
            except ValueError:
                raise ValueError(f"bad weight quadruple {text!r}") from None
            return cls(a_, k_, t_, c_)
        m = re.fullmatch(r"(\d*)(m|\(m\+(\w+)\))(?:\^(\w+))?((?:[+-]\w+)*)", text)
        if m is None:
            raise ValueError(f"cannot parse weight function {text!r}")
        symbols = {"k": k, "t": t}

        def value(token: str) -> int:
            if token.isdigit():
                return int(token)
            if symbols.get(token) is None:
                raise ValueError(f"weight function {text!r} needs a value for {token!r}")
            return symbols[token]

        a = int(m.group(1)) if m.group(1) else 1
        shift = value(m.group(3)) if m.group(3) else 0
        exponent = value(m.group(4)) if m.group(4) else 1
        const = 0
        for sign, token in re.findall(r"([+-])(\w+)", m.group(5)):
            const += value(token) if sign == "+" else -value(token)
        return cls(a, exponent, shift, const)

    def __call__(self, m: int) -> int:
        if m == 0:
            return 0
        if m < 0:
            raise ValueError("weight functions are defined on non-negative integers")
        if self.table is not None:
            if m > len(self.table):
                raise ValueError(f"tabulated weight function undefined at {m}")
            return self.table[m - 1]
        return self.a * (m + self.t) ** self.k + self.c

    def slot_count(self, n: int) -> int:
        """Number of slots of a parking function on ``n`` labels."""
        return self(n) if n > 0 else 0

    def __str__(self):
        if self.table is not None:
            return "table(" + ",".join(map(str, self.table)) + ")"
        base = "m" if self.t == 0 else f"(m+{self.t})"
        out = ("" if self.a == 1 else str(self.a)) + base
        if self.k != 1:
            out += f"^{self.k}"
        if self.c:
            out += f"{self.c:+d}"
        return out


@dataclass(frozen=True)
class ParkingFunction:
    """Sequence of disjoint label sets; ``slots[j]`` is Q_{j+1}."""

    labels: tuple[int, ...]
    slots: tuple[frozenset[int], ...]

    def __post_init__(self):
        slots = tuple(frozenset(s) for s in self.slots)
        object.__setattr__(self, "slots", slots)
        seen: set[int] = set()
        for s in slots:
            if seen & s:
                raise ParkingStructureError("slots are not pairwise disjoint")
            seen |= s
        labels = tuple(sorted(self.labels))
        if len(set(labels)) != len(labels):
            raise ParkingStructureError("duplicate labels")
        if set(labels) != seen:
            raise ParkingStructureError("labels differ from the union of the slots")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_slots(cls, slots: Iterable[Iterable[int]], phi: WeightFunction | None = None):
        """Build from slot contents; with ``phi`` given, the parking condition is enforced."""
        slots = tuple(frozenset(s) for s in slots)
        labels = tuple(sorted(set().union(*slots))) if slots else ()
        pf = cls(labels, slots)
        if phi is not None and not is_parking(pf.slots, phi):
            raise ValueError(f"{format_pf(pf)} is not a {phi}-parking function")
        return pf

    @property
    def n(self) -> int:
        return len(self.labels)

    def slot_of(self, label: int) -> int:
        """0-based slot index holding ``label``."""
        for j, s in enumerate(self.slots):
            if label in s:
                return j
        raise KeyError(label)

    def to_lists(self) -> list[list[int]]:
        return [sorted(s) for s in self.slots]

    @classmethod
    def from_lists(cls, lists: Sequence[Sequence[int]], phi: WeightFunction | None = None):
        return cls.from_slots(lists, phi)

    def __str__(self):
        return format_pf(self)


def format_pf(pf: ParkingFunction) -> str:
    """Text form, e.g. ``(12|·|3|·)``.

    Labels are concatenated when all are single digits. Otherwise they are
    comma separated and a one-label slot carries a trailing comma, which keeps
    the form unambiguous: ``(10,|·|3,11)``.
    """
    wide = any(not 0 <= x <= 9 for x in pf.labels)
    parts = []
    for s in pf.slots:
        if not s:
            parts.append(EMPTY_SLOT)
        elif wide:
            body = ",".join(map(str, sorted(s)))
            parts.append(body + "," if len(s) == 1 else body)
        else:
            parts.append("".join(map(str, sorted(s))))
    return "(" + "|".join(parts) + ")"


def parse_pf(text: str, phi: WeightFunction | None = None) -> ParkingFunction:
    """Inverse of :func:`format_pf`; ``.`` is accepted for the empty slot."""
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ParkingStructureError(f"parking function text must be parenthesised: {text!r}")
    body = text[1:-1].replace("∣", "|")
    if not body:
        return ParkingFunction.from_slots((), phi)
    wide = "," in body
    slots = []
    for token in body.split("|"):
        token = token.strip()
        if token in ("", EMPTY_SLOT, "."):
            slots.append(())
            continue
        pieces = [p for p in token.split(",") if p] if wide else list(token)
        try:
            slots.append(tuple(int(p) for p in pieces))
        except ValueError:
            raise ParkingStructureError(f"bad slot {token!r}") from None
    flat = [x for s in slots for x in s]
    if len(flat) != len(set(flat)):
        raise ParkingStructureError("slots are not pairwise disjoint")
    return ParkingFunction.from_slots(slots, phi)


def is_parking(slots: Sequence[Iterable[int]], phi: WeightFunction) -> bool:
    """Check the parking condition on a slot sequence.

    Raises :class:`ParkingStructureError` when the sequence is not even a
    candidate (overlapping slots, or a length other than ``phi(n)``).
    """
    sets = [frozenset(s) for s in slots]
    total = sum(len(s) for s in sets)
    if len(frozenset().union(*sets)) != total:
        raise ParkingStructureError("slots are not pairwise disjoint")
    if len(sets) != phi.slot_count(total):
        raise ParkingStructureError(
            f"expected {phi.slot_count(total)} slots for {total} labels, got {len(sets)}"
        )
    prefix = partial_sums([len(s) for s in sets])
    return all(prefix[phi(j)] >= j for j in range(1, total + 1))


def _block_bounds(phi: WeightFunction, pi: Sequence[int]) -> list[tuple[int, int]]:
    """0-based half-open slot range of each block of the constructive grammar."""
    ps = partial_sums(pi)
    bounds = []
    for i in range(1, len(pi) + 1):
        start = 0 if i == 1 else phi(1 + ps[i - 2])
        bounds.append((start, phi(1 + ps[i - 1])))
    return bounds


def _colex(items: Sequence[int], r: int):
    return sorted(itertools.combinations(items, r), key=lambda c: c[::-1])


def _generate(phi: WeightFunction, n: int, labels: Sequence[int] | None, simple: bool):
    labels = tuple(sorted(labels)) if labels is not None else tuple(range(1, n + 1))
    if len(labels) != n:
        raise ValueError(f"expected {n} labels, got {len(labels)}")
    width = phi.slot_count(n)
    spread = itertools.permutations if simple else lambda r, m: itertools.product(r, repeat=m)
    for pi in compositions(n):
        bounds = _block_bounds(phi, pi)

        def fill(i: int, remaining: tuple[int, ...], slots: list[set[int]]):
            if i == len(pi):
                yield ParkingFunction(labels, tuple(frozenset(s) for s in slots))
                return
            start, stop = bounds[i]
            for chosen in _colex(remaining, pi[i]):
                rest = tuple(x for x in remaining if x not in chosen)
                for offsets in spread(range(start, stop), pi[i]):
                    for x, j in zip(chosen, offsets):
                        slots[j].add(x)
                    yield from fill(i + 1, rest, slots)
                    for x, j in zip(chosen, offsets):
                        slots[j].discard(x)

        yield from fill(0, labels, [set() for _ in range(width)])


def enumerate_pf(phi: WeightFunction, n: int, labels: Sequence[int] | None = None
                 ) -> Iterator[ParkingFunction]:
    """Every phi-parking function on ``labels`` (default ``1..n``), once each.

    Follows the constructive grammar: for each composition of ``n`` the labels
    are cut into consecutive blocks, block ``i`` spreading its labels over its
    own window of slots.
    """
    return _generate(phi, n, labels, simple=False)


def enumerate_simple_pf(phi: WeightFunction, n: int, labels: Sequence[int] | None = None
                        ) -> Iterator[ParkingFunction]:
    """Parking functions with at most one label per slot, in the same order as
    :func:`enumerate_pf`."""
    return _generate(phi, n, labels, simple=True)


def count_pf(phi: WeightFunction, n: int) -> int:
    """Number of phi-parking functions on ``n`` labels (Kung-Yan recurrence)."""
    f = [1]
    for size in range(1, n + 1):
        total = 0
        for j in range(1, size + 1):
            term = binomial(size, j) * phi(size - j + 1) ** j * f[size - j]
            total += term if j % 2 else -term
        f.append(total)
    return f[n]


def count_simple_pf(phi: WeightFunction, n: int) -> int:
    """Number of simple phi-parking functions on ``n`` labels.

    ``n! * sum over compositions tau of n of prod_i C(width_i, tau_i)`` where
    ``width_1 = phi(1)`` and ``width_i = phi(1 + tau(i-1)) - phi(1 + tau(i-2))``
    is the slot window of block ``i``.
    """
    return factorial(n) * frobenius_coefficient(phi, (1,) * n) if n else 1


def frobenius_coefficient(phi: WeightFunction, pi: Sequence[int]) -> int:
    """Number of slot-placement patterns whose non-empty slot sizes read ``pi``.

    Sum over compositions ``tau`` of ``len(pi)`` (grouping consecutive
    non-empty slots into grammar blocks) of the product of the ways to pick
    ``tau_i`` distinct slots inside each block window.
    """
    ps = partial_sums(pi)
    total = 0
    for tau in compositions(len(pi)):
        cut = partial_sums(tau)
        prod = 1
        for i in range(1, len(tau) + 1):
            if i == 1:
                width = phi(1)
            else:
                width = phi(1 + ps[cut[i - 1]]) - phi(1 + ps[cut[i - 2]])
            prod *= binomial(width, tau[i - 1])
            if not prod:
                break
        total += prod
    return total


def count_pf_via_frobenius(phi: WeightFunction, n: int) -> int:
    return sum(frobenius_coefficient(phi, pi) * multinomial(pi) for pi in compositions(n))


def division_factors(pf: ParkingFunction, phi: WeightFunction) -> list[tuple[frozenset[int], ...]]:
    """Cut the slots into factors D_1..D_n, D_p covering slots phi(p-1)+1 .. phi(p)."""
    if len(pf.slots) != phi.slot_count(pf.n):
        raise ParkingStructureError("slot count does not match the weight function")
    return [pf.slots[phi(p - 1):phi(p)] for p in range(1, pf.n + 1)]


def q_order(pf: ParkingFunction) -> list[int]:
    """Labels sorted by (slot index, label)."""
    return [x for s in pf.slots for x in sorted(s)]


def is_simple_pf(pf: ParkingFunction) -> bool:
    return all(len(s) <= 1 for s in pf.slots)


def slot_pattern(pf: ParkingFunction) -> tuple[tuple[int, int], ...]:
    """``(slot index, size)`` of every non-empty slot, forgetting the labels."""
    return tuple((j, len(s)) for j, s in enumerate(pf.slots) if s)


def size_profile(pf: ParkingFunction) -> tuple[int, ...]:
    return tuple(size for _, size in slot_pattern(pf))
