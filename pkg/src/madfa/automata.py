"""Acyclic DFA: data model, structural predicates, split/merge and constraints.

Symbols are the indices ``0..k-1`` (``a_1 < ... < a_k``); words are tuples of
symbol indices. A transition target is a state label, an extra absorbing
label, or the :data:`ABSORBING` sentinel standing for the absorbing state.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union


class _Sink(enum.Enum):
    ABSORBING = "∅"

    def __repr__(self):
        return "∅"


ABSORBING = _Sink.ABSORBING

Target = Union[int, _Sink]
Row = tuple[Target, ...]


class AutomatonError(ValueError):
    pass


class CyclicAutomatonError(AutomatonError):
    pass


@dataclass(frozen=True)
class ExtendedNiAutomaton:
    """Non-initial automaton with optional extra absorbing states.

    ``delta[i]`` is the transition row of ``states[i]``. Acyclicity is not
    enforced here (the oracle builds cyclic tables on purpose); operations
    that need it raise :class:`CyclicAutomatonError`.
    """

    k: int
    states: tuple[int, ...]
    accepting: frozenset[int]
    extras: tuple[int, ...]
    delta: tuple[Row, ...]

    def __post_init__(self):
        if self.k < 1:
            raise AutomatonError("alphabet must have at least one symbol")
        if list(self.states) != sorted(set(self.states)):
            raise AutomatonError("states must be sorted and distinct")
        if list(self.extras) != sorted(set(self.extras)):
            raise AutomatonError("extras must be sorted and distinct")
        if set(self.states) & set(self.extras):
            raise AutomatonError("extras must be disjoint from states")
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        if not self.accepting <= set(self.states):
            raise AutomatonError("accepting states must be states")
        if len(self.delta) != len(self.states):
            raise AutomatonError("one transition row per state is required")
        allowed = set(self.states) | set(self.extras) | {ABSORBING}
        for q, row in zip(self.states, self.delta):
            if len(row) != self.k:
                raise AutomatonError(f"row of state {q} has {len(row)} entries, expected {self.k}")
            bad = [x for x in row if x not in allowed]
            if bad:
                raise AutomatonError(f"state {q} has unknown targets {bad}")

    @classmethod
    def build(cls, k: int, rows: Mapping[int, Sequence[Target | None]],
              accepting: Iterable[int] = (), extras: Iterable[int] = ()):
        """Convenience constructor from ``{state: row}``; ``None`` means absorbing."""
        states = tuple(sorted(rows))
        delta = tuple(
            tuple(ABSORBING if x is None else x for x in rows[q]) for q in states
        )
        return cls(k, states, frozenset(accepting), tuple(sorted(extras)), delta)

    @property
    def n(self) -> int:
        return len(self.states)

    def row(self, q: int) -> Row:
        return self._rows[q]

    @property
    def _rows(self) -> dict[int, Row]:
        rows = self.__dict__.get("_row_cache")
        if rows is None:
            rows = dict(zip(self.states, self.delta))
            object.__setattr__(self, "_row_cache", rows)
        return rows

    def is_state(self, x) -> bool:
        return x in self._rows

    def rows(self) -> dict[int, Row]:
        return dict(self._rows)


@dataclass(frozen=True)
class InitialAutomaton:
    """An automaton with a designated initial state.

    ``initial`` is ``None`` only for the zero-state automaton that
    :func:`minimize` returns for the empty language.
    """

    base: ExtendedNiAutomaton
    initial: int | None

    def __post_init__(self):
        if self.initial is None:
            if self.base.states:
                raise AutomatonError("an initial state is required")
        elif not self.base.is_state(self.initial):
            raise AutomatonError(f"initial state {self.initial} is not a state")

    @property
    def k(self):
        return self.base.k

    @property
    def states(self):
        return self.base.states

    @property
    def accepting(self):
        return self.base.accepting

    @property
    def extras(self):
        return self.base.extras

    @property
    def delta(self):
        return self.base.delta

    def row(self, q):
        return self.base.row(q)


AnyAutomaton = Union[ExtendedNiAutomaton, InitialAutomaton]


def _base(aut: AnyAutomaton) -> ExtendedNiAutomaton:
    return aut.base if isinstance(aut, InitialAutomaton) else aut


@dataclass(frozen=True)
class Constraint:
    """Forbidden (transition row, accepting status) profile over extras."""

    nu: Row
    accepting: bool

    def __post_init__(self):
        object.__setattr__(self, "nu", tuple(ABSORBING if x is None else x for x in self.nu))


def forced_constraint(k: int) -> Constraint:
    """The non-accepting all-absorbing row, forbidden for coreachability."""
    return Constraint((ABSORBING,) * k, False)


def delta_star(aut: AnyAutomaton, q: Target, word: Sequence[int]) -> Target:
    aut = _base(aut)
    if q is None:
        q = ABSORBING
    if not (q is ABSORBING or aut.is_state(q) or q in aut.extras):
        raise AutomatonError(f"unknown state {q!r}")
    for a in word:
        if not 0 <= a < aut.k:
            raise AutomatonError(f"symbol {a} outside the alphabet")
        if aut.is_state(q):
            q = aut.row(q)[a]
    return q


def topological_order(aut: AnyAutomaton) -> list[int]:
    """States ordered so that every real-state target precedes its source.

    Ties are broken by label. Raises :class:`CyclicAutomatonError`.
    """
    aut = _base(aut)
    pending = {q: sum(1 for x in set(aut.row(q)) if aut.is_state(x)) for q in aut.states}
    users: dict[int, list[int]] = {q: [] for q in aut.states}
    for q in aut.states:
        for x in set(aut.row(q)):
            if aut.is_state(x):
                users[x].append(q)
    ready = sorted(q for q, c in pending.items() if c == 0)
    out = []
    while ready:
        q = ready.pop(0)
        out.append(q)
        for r in users[q]:
            pending[r] -= 1
            if pending[r] == 0:
                ready.append(r)
        ready.sort()
    if len(out) != aut.n:
        raise CyclicAutomatonError("the transition graph has a cycle")
    return out


def is_acyclic(aut: AnyAutomaton) -> bool:
    try:
        topological_order(aut)
    except CyclicAutomatonError:
        return False
    return True


def reachable_states(aut: AnyAutomaton, start: int | None = None) -> frozenset[int]:
    """States reachable from ``start`` (default: the initial state)."""
    if start is None:
        if not isinstance(aut, InitialAutomaton):
            raise AutomatonError("a start state is required for a non-initial automaton")
        start = aut.initial
        if start is None:
            return frozenset()
    base = _base(aut)
    if not base.is_state(start):
        raise AutomatonError(f"unknown state {start!r}")
    seen = {start}
    todo = deque([start])
    while todo:
        for x in base.row(todo.popleft()):
            if base.is_state(x) and x not in seen:
                seen.add(x)
                todo.append(x)
    return frozenset(seen)


def coreachable_states(aut: AnyAutomaton) -> frozenset[int]:
    """States from which some word leads to an accepting state."""
    aut = _base(aut)
    good: set[int] = set()
    for q in topological_order(aut):
        if q in aut.accepting or any(x in good for x in aut.row(q)):
            good.add(q)
    return frozenset(good)


def is_coreachable(aut: AnyAutomaton) -> bool:
    """Coreachability in the regime matching the automaton.

    Without extras every state must reach an accepting state. With extras the
    requirement is that no state sends every symbol to the absorbing state.
    """
    aut = _base(aut)
    if aut.extras:
        dead = (ABSORBING,) * aut.k
        return all(row != dead for row in aut.delta)
    return len(coreachable_states(aut)) == aut.n


def right_language_partition(aut: AnyAutomaton) -> list[tuple[int, ...]]:
    """Classes of states with the same right language and the same
    absorbing/extra landing points.

    One pass in height order suffices on an acyclic automaton: a state's class
    is fixed by its accepting status and the classes of its targets, which
    all sit strictly lower.
    """
    aut = _base(aut)
    class_of: dict[Target, object] = {ABSORBING: ("sink", None)}
    for x in aut.extras:
        class_of[x] = ("extra", x)
    ids: dict[tuple, int] = {}
    for q in topological_order(aut):
        signature = (q in aut.accepting, tuple(class_of[x] for x in aut.row(q)))
        class_of[q] = ids.setdefault(signature, len(ids))
    blocks: dict[object, list[int]] = {}
    for q in aut.states:
        blocks.setdefault(class_of[q], []).append(q)
    return sorted(tuple(b) for b in blocks.values())


def is_simple(aut: AnyAutomaton) -> bool:
    return all(len(b) == 1 for b in right_language_partition(aut))


def is_minimal(aut: InitialAutomaton) -> bool:
    """Reachable, coreachable and simple."""
    if aut.initial is None or aut.extras:
        return False
    return (
        len(reachable_states(aut)) == len(aut.states)
        and is_coreachable(aut)
        and is_simple(aut)
    )


def restrict(aut: ExtendedNiAutomaton, keep: Iterable[int], extras: Iterable[int] = ()
             ) -> ExtendedNiAutomaton:
    """Sub-automaton on ``keep`` with rows copied verbatim."""
    keep = sorted(keep)
    return ExtendedNiAutomaton(
        aut.k,
        tuple(keep),
        aut.accepting & set(keep),
        tuple(sorted(extras)),
        tuple(aut.row(q) for q in keep),
    )


def minimize(aut: InitialAutomaton) -> InitialAutomaton:
    """Trim then quotient by right-language equivalence.

    Each class is represented by its smallest label. An automaton whose
    initial state accepts nothing yields the zero-state automaton with
    ``initial=None``.
    """
    if aut.extras:
        raise AutomatonError("minimize expects an automaton without extras")
    base = aut.base
    topological_order(base)
    if aut.initial is None:
        return aut
    useful = reachable_states(aut) & coreachable_states(base)
    if aut.initial not in useful:
        empty = ExtendedNiAutomaton(base.k, (), frozenset(), (), ())
        return InitialAutomaton(empty, None)
    trimmed = ExtendedNiAutomaton(
        base.k,
        tuple(sorted(useful)),
        base.accepting & useful,
        (),
        tuple(tuple(x if x in useful else ABSORBING for x in base.row(q)) for q in sorted(useful)),
    )
    rep = {}
    for block in right_language_partition(trimmed):
        for q in block:
            rep[q] = block[0]
    kept = sorted(set(rep.values()))
    rows = {q: tuple(rep.get(x, x) for x in trimmed.row(q)) for q in kept}
    quotient = ExtendedNiAutomaton.build(base.k, rows, trimmed.accepting & set(kept))
    return InitialAutomaton(quotient, rep[aut.initial])


def split(ni: ExtendedNiAutomaton, i: int) -> tuple[InitialAutomaton, ExtendedNiAutomaton]:
    """Cut ``ni`` into the part reachable from ``i`` and its complement.

    The complement keeps its rows verbatim; targets inside the reachable part
    become extra absorbing states carrying the same labels.
    """
    if ni.extras:
        raise AutomatonError("split expects an automaton without extras")
    if not ni.is_state(i):
        raise AutomatonError(f"unknown state {i!r}")
    inside = reachable_states(ni, i)
    outside = [q for q in ni.states if q not in inside]
    return (
        InitialAutomaton(restrict(ni, inside), i),
        restrict(ni, outside, extras=inside),
    )


def merge(a: InitialAutomaton, e: ExtendedNiAutomaton) -> ExtendedNiAutomaton:
    """Inverse of :func:`split`; the initial state is forgotten."""
    if a.extras:
        raise AutomatonError("the initial part must not have extras")
    if tuple(e.extras) != tuple(a.states):
        raise AutomatonError("complement extras must be the states of the initial part")
    if set(a.states) & set(e.states):
        raise AutomatonError("state labels of the two parts overlap")
    if a.k != e.k:
        raise AutomatonError("alphabet sizes differ")
    rows = {**a.base.rows(), **e.rows()}
    return ExtendedNiAutomaton.build(a.k, rows, a.accepting | e.accepting)


def relabel_extras(e: ExtendedNiAutomaton, mapping: Mapping[int, int]) -> ExtendedNiAutomaton:
    """Rename extra absorbing states; ``mapping`` must be order preserving."""
    new = [mapping[x] for x in e.extras]
    if new != sorted(new):
        raise AutomatonError("extras relabelling must preserve order")
    extras = set(e.extras)
    delta = tuple(tuple(mapping[x] if x in extras else x for x in row) for row in e.delta)
    return ExtendedNiAutomaton(e.k, e.states, e.accepting, tuple(new), delta)


def constraints_of(a: InitialAutomaton, relabel: Mapping[int, int] | None = None
                   ) -> frozenset[Constraint]:
    """One constraint per state of ``a`` plus the forced non-accepting sink row.

    ``relabel`` maps the states of ``a`` to the extras labels the constraints
    should speak about (identity by default, which matches :func:`split`).
    """
    relabel = dict(relabel) if relabel is not None else {q: q for q in a.states}
    if sorted(relabel) != sorted(a.states):
        raise AutomatonError("relabel must be defined on exactly the states")
    images = [relabel[q] for q in a.states]
    if images != sorted(images) or len(set(images)) != len(images):
        raise AutomatonError("relabel must be an order-preserving injection")
    out = {forced_constraint(a.k)}
    for q in a.states:
        c = Constraint(tuple(relabel.get(x, x) for x in a.row(q)),
                       q in a.accepting)
        if c in out:
            raise AutomatonError(f"duplicate constraint from state {q}: input is not simple")
        out.add(c)
    return frozenset(out)


def satisfies_constraints(e: ExtendedNiAutomaton, constraints: Iterable[Constraint]) -> bool:
    """True when no state of ``e`` shows a forbidden (row, status) profile."""
    constraints = set(constraints)
    codomain = set(e.extras) | {ABSORBING}
    for c in constraints:
        if len(c.nu) != e.k or not set(c.nu) <= codomain:
            raise AutomatonError(f"constraint {c} is not over the extras of the automaton")
    return not any(Constraint(row, q in e.accepting) in constraints
                   for q, row in zip(e.states, e.delta))


# -- serialization -----------------------------------------------------------

def _target_text(aut: ExtendedNiAutomaton, x: Target) -> str:
    if x is ABSORBING:
        return "@"
    if aut.is_state(x):
        return str(x)
    return f"T{x}"


def _parse_target(text: str) -> Target:
    if text == "@":
        return ABSORBING
    if text.startswith("T"):
        return int(text[1:])
    return int(text)


def to_json_dict(aut: AnyAutomaton) -> dict:
    """Structured form with fixed field order."""
    base = _base(aut)
    return {
        "k": base.k,
        "states": list(base.states),
        "accepting": sorted(base.accepting),
        "extras": list(base.extras),
        "initial": aut.initial if isinstance(aut, InitialAutomaton) else None,
        "delta": {str(q): [_target_text(base, x) for x in row]
                  for q, row in zip(base.states, base.delta)},
    }


def from_json_dict(data: Mapping) -> AnyAutomaton:
    try:
        states = [int(q) for q in data["states"]]
        rows = {int(q): tuple(_parse_target(str(x)) for x in row)
                for q, row in data["delta"].items()}
        if sorted(rows) != sorted(states):
            raise AutomatonError("delta keys differ from states")
        base = ExtendedNiAutomaton.build(
            int(data["k"]), rows, data.get("accepting", ()), data.get("extras", ()))
    except (KeyError, TypeError) as exc:
        raise AutomatonError(f"malformed automaton document: {exc}") from None
    except ValueError as exc:
        raise AutomatonError(str(exc)) from None
    initial = data.get("initial")
    return InitialAutomaton(base, int(initial)) if initial is not None else base


def constraint_to_json(c: Constraint) -> dict:
    return {"nu": ["@" if x is ABSORBING else f"T{x}" for x in c.nu], "accepting": c.accepting}


def constraint_from_json(data: Mapping) -> Constraint:
    return Constraint(tuple(_parse_target(str(x)) for x in data["nu"]), bool(data["accepting"]))


def to_dot(aut: AnyAutomaton, name: str = "adfa") -> str:
    """Graphviz rendering: accepting states double circles, extras dashed boxes."""
    base = _base(aut)
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    lines.append('  "@" [shape=plaintext, label="∅"];')
    for x in base.extras:
        lines.append(f'  "T{x}" [shape=box, style=dashed, label="{x}"];')
    for q in base.states:
        shape = "doublecircle" if q in base.accepting else "circle"
        lines.append(f'  "{q}" [shape={shape}];')
    if isinstance(aut, InitialAutomaton) and aut.initial is not None:
        lines.append('  "__start" [shape=point];')
        lines.append(f'  "__start" -> "{aut.initial}";')
    for q, row in zip(base.states, base.delta):
        by_target: dict[str, list[str]] = {}
        for a, x in enumerate(row):
            by_target.setdefault(_target_text(base, x), []).append(symbol_name(a))
        for target, symbols in by_target.items():
            lines.append(f'  "{q}" -> "{target}" [label="{",".join(symbols)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def symbol_name(a: int) -> str:
    return chr(ord("a") + a) if a < 26 else f"a{a + 1}"
