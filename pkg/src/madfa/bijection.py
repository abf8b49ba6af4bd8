"""Bijection between doubled-weight parking functions and non-initial ADFA.

Level ``p`` of the automaton (the division factor D_p of the parking function)
lists every transition row over ``∅ < extras < q_1 < ... < q_{p-1}`` that hits
``q_{p-1}``, in lexicographic order, each row twice: odd slots give
non-accepting states, even slots accepting ones. Here ``q_1 < q_2 < ...`` are
the labels sorted by (slot, label). Level 1 lists the rows into ``∅`` and the
extras only; under constraints, the matching (row, status) slots are removed
from it.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Collection, Iterable, Sequence

from .automata import (
    ABSORBING,
    Constraint,
    ExtendedNiAutomaton,
    forced_constraint,
    topological_order,
)
from .parking import ParkingFunction, WeightFunction, is_parking, is_simple_pf, q_order


class BijectionError(ValueError):
    pass


@dataclass(frozen=True)
class NuTable:
    p: int
    k: int
    codomain: tuple
    maps: tuple[tuple, ...]


@lru_cache(maxsize=None)
def level_words(p: int, k: int, t: int = 0) -> tuple[tuple[int, ...], ...]:
    """Rows of level ``p`` as index words over ``0..t+p-1`` (0 is ``∅``).

    For ``p >= 2`` only words containing the top index ``t + p - 1`` are kept.
    """
    size = t + p
    words = itertools.product(range(size), repeat=k)
    if p == 1:
        return tuple(words)
    return tuple(w for w in words if size - 1 in w)


@lru_cache(maxsize=None)
def _level_rank(p: int, k: int, t: int) -> dict[tuple[int, ...], int]:
    return {w: j for j, w in enumerate(level_words(p, k, t))}


def nu_maps(p: int, k: int, extras: int | Sequence = 0, placed: Sequence | None = None) -> NuTable:
    """The ordered candidate rows of level ``p``.

    ``extras`` is a count (symbolic names ``α1, α2, ...``) or the labels
    themselves; ``placed`` lists ``q_1, q_2, ...`` (symbolic ``q1, ...`` when
    omitted).
    """
    if p < 1:
        raise ValueError("levels start at 1")
    extras = [f"α{i}" for i in range(1, extras + 1)] if isinstance(extras, int) else list(extras)
    placed = [f"q{i}" for i in range(1, p)] if placed is None else list(placed)
    if len(placed) < p - 1:
        raise ValueError(f"level {p} needs {p - 1} placed states")
    codomain = (ABSORBING, *extras, *placed[:p - 1])
    maps = tuple(tuple(codomain[i] for i in w) for w in level_words(p, k, len(extras)))
    return NuTable(p, k, codomain, maps)


def _level_one_slots(k: int, t: int, removed: Collection[tuple[tuple[int, ...], bool]]):
    return [(w, status) for w in level_words(1, k, t) for status in (False, True)
            if (w, status) not in removed]


def _build(pf: ParkingFunction, phi: WeightFunction, k: int, extras: Sequence[int],
           removed: Collection) -> ExtendedNiAutomaton:
    t = len(extras)
    order = q_order(pf)
    level_one = _level_one_slots(k, t, removed)
    if phi(1) != len(level_one):
        raise BijectionError("weight function does not match the level-1 slot count")
    codomain = [ABSORBING, *extras, *order]
    rows, accepting = {}, set()
    p = 1
    for slot, content in enumerate(pf.slots):
        if not content:
            continue
        while slot >= phi(p):
            p += 1
        local = slot - phi(p - 1)
        if p == 1:
            word, status = level_one[local]
        else:
            word, status = level_words(p, k, t)[local // 2], local % 2 == 1
        row = tuple(codomain[i] for i in word)
        for q in content:
            rows[q] = row
            if status:
                accepting.add(q)
    return ExtendedNiAutomaton.build(k, rows, accepting, extras)


def _locate(aut: ExtendedNiAutomaton, phi: WeightFunction, removed: Collection) -> ParkingFunction:
    """Greedy inverse shared by both bijections.

    A state can be placed once all its real targets are; among placeable
    states the one with the smallest (slot, label) comes next in the order.
    """
    k, t = aut.k, len(aut.extras)
    topological_order(aut)
    index = {ABSORBING: 0}
    index.update({x: i + 1 for i, x in enumerate(aut.extras)})
    level_one = {entry: j for j, entry in enumerate(_level_one_slots(k, t, removed))}
    slot_of: dict[int, int] = {}
    pending = set(aut.states)
    while pending:
        best = None
        for q in pending:
            row = aut.row(q)
            if any(aut.is_state(x) and x not in slot_of for x in row):
                continue
            word = tuple(index[x] for x in row)
            status = q in aut.accepting
            top = max(word)
            if top <= t:
                if (word, status) not in level_one:
                    raise BijectionError(f"state {q} matches a removed level-1 slot")
                slot = level_one[(word, status)]
            else:
                p = top - t + 1
                slot = phi(p - 1) + 2 * _level_rank(p, k, t)[word] + status
            if best is None or (slot, q) < best:
                best = (slot, q)
        slot, q = best
        slot_of[q] = slot
        index[q] = t + len(slot_of)
        pending.remove(q)
    slots: list[set[int]] = [set() for _ in range(phi.slot_count(aut.n))]
    for q, j in slot_of.items():
        slots[j].add(q)
    return ParkingFunction(aut.states, tuple(frozenset(s) for s in slots))


def zeta(pf: ParkingFunction, k: int, extras: Sequence[int] = ()) -> ExtendedNiAutomaton:
    """Map a ``2(m+t)^k``-parking function to an extended non-initial ADFA.

    ``t = len(extras)``; the plain map is ``extras=()``.
    """
    extras = tuple(sorted(extras))
    phi = WeightFunction.doubled(k, len(extras))
    if set(extras) & set(pf.labels):
        raise BijectionError("extras must be disjoint from the labels")
    if not is_parking(pf.slots, phi):
        raise BijectionError(f"{pf} is not a {phi}-parking function")
    return _build(pf, phi, k, extras, ())


def zeta_inverse(aut: ExtendedNiAutomaton, k: int | None = None) -> ParkingFunction:
    if k is not None and k != aut.k:
        raise BijectionError(f"automaton is over {aut.k} symbols, not {k}")
    return _locate(aut, WeightFunction.doubled(aut.k, len(aut.extras)), ())


def _removed_slots(k: int, extras: Sequence[int], constraints: Iterable[Constraint]):
    constraints = set(constraints)
    t = len(extras)
    if len(constraints) != t + 1:
        raise BijectionError(f"expected {t + 1} constraints, got {len(constraints)}")
    if forced_constraint(k) not in constraints:
        raise BijectionError("the non-accepting all-absorbing constraint is required")
    index = {ABSORBING: 0}
    index.update({x: i + 1 for i, x in enumerate(extras)})
    removed = set()
    for c in constraints:
        if len(c.nu) != k or any(x not in index for x in c.nu):
            raise BijectionError(f"constraint {c} is not over the extras {list(extras)}")
        removed.add((tuple(index[x] for x in c.nu), c.accepting))
    return removed


def zeta_extended(pf: ParkingFunction, k: int, extras: Sequence[int],
                  constraints: Iterable[Constraint]) -> ExtendedNiAutomaton:
    """Map a simple ``2(m+t)^k - t - 1``-parking function to an extended simple
    automaton that satisfies ``constraints``.

    The image is also coreachable in the extended sense whenever the
    accepting all-absorbing row is among the constraints, as it always is for
    constraints coming from a minimal automaton.
    """
    extras = tuple(sorted(extras))
    removed = _removed_slots(k, extras, constraints)
    phi = WeightFunction.constrained(k, len(extras))
    if not is_simple_pf(pf):
        raise BijectionError(f"{pf} is not simple")
    if set(extras) & set(pf.labels):
        raise BijectionError("extras must be disjoint from the labels")
    if not is_parking(pf.slots, phi):
        raise BijectionError(f"{pf} is not a {phi}-parking function")
    return _build(pf, phi, k, extras, removed)


def zeta_extended_inverse(aut: ExtendedNiAutomaton, k: int | None,
                          constraints: Iterable[Constraint]) -> ParkingFunction:
    if k is not None and k != aut.k:
        raise BijectionError(f"automaton is over {aut.k} symbols, not {k}")
    removed = _removed_slots(aut.k, aut.extras, constraints)
    pf = _locate(aut, WeightFunction.constrained(aut.k, len(aut.extras)), removed)
    if not is_simple_pf(pf):
        raise BijectionError("automaton is not simple")
    return pf

