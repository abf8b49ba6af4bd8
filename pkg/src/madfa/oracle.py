"""Brute-force ground truth at desk scale.

Automata are enumerated as raw transition tables and judged by explicit word
sets, never through the partition refinement or the counting formulas they
are meant to check.
"""
from __future__ import annotations

import itertools
import json
import os
import time
from dataclasses import dataclass, field
from math import factorial
from typing import Callable, Iterable, Iterator

from . import automata, bijection, census, parking
from .automata import ABSORBING, ExtendedNiAutomaton, InitialAutomaton
from .numkit import catalan, compositions, multinomial
from .parking import WeightFunction

DEFAULT_BUDGET = 10_000_000
BUDGET_ENV = "MADFA_BUDGET"

PREDICATES = ("all", "simple", "coreachable", "coreachable-simple")


class BudgetExceeded(RuntimeError):
    pass


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None


def enumeration_cost(k: int, t: int, n: int) -> int:
    """Candidate (table, accepting set) pairs visited by :func:`brute_ni_automata`."""
    return (n + t + 1) ** (k * n) * 2 ** n


def _check_budget(k, t, n, budget):
    budget = default_budget() if budget is None else budget
    cost = enumeration_cost(k, t, n)
    if cost > budget:
        raise BudgetExceeded(f"k={k} t={t} n={n} needs {cost} candidates, budget is {budget}")


def _raw_acyclic(n: int, k: int, table: tuple) -> bool:
    # targets 0..n-1 are states, anything else is a sink
    indeg = [0] * n
    for q in range(n):
        for x in set(table[q * k:(q + 1) * k]):
            if x < n:
                indeg[x] += 1
    stack = [q for q in range(n) if indeg[q] == 0]
    seen = 0
    while stack:
        q = stack.pop()
        seen += 1
        for x in set(table[q * k:(q + 1) * k]):
            if x < n:
                indeg[x] -= 1
                if indeg[x] == 0:
                    stack.append(x)
    return seen == n


def _acyclic_tables(k: int, t: int, n: int) -> Iterator[tuple]:
    """Acyclic tables as flat tuples; target codes: states ``0..n-1``, then
    ``n`` for the absorbing state and ``n+1..n+t`` for extras."""
    codes = [n, *range(n + 1, n + t + 1), *range(n)]
    for table in itertools.product(codes, repeat=k * n):
        if _raw_acyclic(n, k, table):
            yield table


def _decode(k: int, t: int, n: int, table: tuple, mask: int) -> ExtendedNiAutomaton:
    def target(x):
        if x < n:
            return x + 1
        return ABSORBING if x == n else x
    rows = {q + 1: tuple(target(x) for x in table[q * k:(q + 1) * k]) for q in range(n)}
    accepting = [q + 1 for q in range(n) if mask >> q & 1]
    return ExtendedNiAutomaton.build(k, rows, accepting, range(n + 1, n + t + 1))


def canonical_extras(n: int, t: int) -> tuple[int, ...]:
    """Extras labels used by the oracle: ``n+1 .. n+t``."""
    return tuple(range(n + 1, n + t + 1))


def brute_ni_automata(k: int, t: int, n: int, budget: int | None = None
                      ) -> Iterator[ExtendedNiAutomaton]:
    """Every extended non-initial ADFA on states ``1..n`` with extras ``n+1..n+t``.

    Tables are visited as an odometer over (state, symbol) with targets in the
    order ``∅ < extras < states``; each acyclic table is crossed with every
    accepting subset.
    """
    _check_budget(k, t, n, budget)
    for table in _acyclic_tables(k, t, n):
        for mask in range(2 ** n):
            yield _decode(k, t, n, table, mask)


def brute_right_language(aut, q) -> frozenset[tuple[int, ...]]:
    """Words of length at most ``|states|`` leading from ``q`` to an accepting state."""
    return frozenset(w for w, end in _traces(aut, q) if end == "accept")


def _traces(aut, q):
    """``(word, landing)`` for every word up to length ``|states|``: landing is
    ``"accept"`` on an accepting state, or the sink/extra hit."""
    base = aut.base if isinstance(aut, InitialAutomaton) else aut
    out = []
    for length in range(base.n + 1):
        for word in itertools.product(range(base.k), repeat=length):
            x = automata.delta_star(base, q, word)
            if x in base.accepting:
                out.append((word, "accept"))
            elif not base.is_state(x):
                out.append((word, x))
    return out


def brute_partition(aut) -> list[tuple[int, ...]]:
    """States grouped by their full word traces (the defining equivalence)."""
    base = aut.base if isinstance(aut, InitialAutomaton) else aut
    groups: dict[frozenset, list[int]] = {}
    for q in base.states:
        groups.setdefault(frozenset(_traces(base, q)), []).append(q)
    return sorted(tuple(g) for g in groups.values())


def _languages(base: ExtendedNiAutomaton, landing: bool) -> dict[int, frozenset]:
    """Per-state word sets built bottom-up by explicit set union.

    With ``landing`` the sets also record where words fall into a sink, so
    equality means the quasi-simple equivalence; without, they are plain
    right languages.
    """
    lang: dict = {}

    def of(x):
        if base.is_state(x):
            return lang[x]
        return frozenset({((), x)}) if landing else frozenset()

    pending = list(base.states)
    while pending:
        rest = []
        for q in pending:
            row = base.row(q)
            if any(base.is_state(x) and x not in lang for x in row):
                rest.append(q)
                continue
            words = {((), "accept")} if q in base.accepting else set()
            for a, x in enumerate(row):
                words |= {((a, *w), end) for w, end in of(x)}
            lang[q] = frozenset(words)
        if len(rest) == len(pending):
            raise automata.CyclicAutomatonError("cycle")
        pending = rest
    if not landing:
        return {q: frozenset(w for w, end in lang[q] if end == "accept") for q in lang}
    return lang


def _brute_simple(base) -> bool:
    langs = _languages(base, landing=True)
    return len(set(langs.values())) == base.n


def _brute_coreachable(base) -> bool:
    if base.extras:
        return all(any(x is not ABSORBING for x in row) for row in base.delta)
    return all(_languages(base, landing=False).values())


def brute_count_class(k: int, n: int, predicate: str = "all", t: int = 0,
                      budget: int | None = None) -> int:
    checks: dict[str, Callable] = {
        "all": lambda a: True,
        "simple": _brute_simple,
        "coreachable": _brute_coreachable,
        "coreachable-simple": lambda a: _brute_coreachable(a) and _brute_simple(a),
    }
    if predicate not in checks:
        raise ValueError(f"unknown predicate {predicate!r}; expected one of {', '.join(PREDICATES)}")
    test = checks[predicate]
    return sum(1 for a in brute_ni_automata(k, t, n, budget) if test(a))


def brute_madfa(k: int, n: int, budget: int | None = None) -> Iterator[InitialAutomaton]:
    """Minimal ADFA on ``1..n`` with initial state 1, by exhaustive search."""
    _check_budget(k, 0, n, budget)
    for table in _acyclic_tables(k, 0, n):
        reached = {0}
        todo = [0]
        while todo:
            q = todo.pop()
            for x in table[q * k:(q + 1) * k]:
                if x < n and x not in reached:
                    reached.add(x)
                    todo.append(x)
        if len(reached) < n:
            continue
        for mask in range(2 ** n):
            aut = _decode(k, 0, n, table, mask)
            langs = _languages(aut, landing=False)
            values = list(langs.values())
            if all(values) and len(set(values)) == n:
                yield InitialAutomaton(aut, 1)


def brute_count_madfa(k: int, n: int, budget: int | None = None) -> int:
    return sum(1 for _ in brute_madfa(k, n, budget))


def brute_count_adfa(k: int, n: int, budget: int | None = None) -> int:
    """ADFA on ``1..n`` where every state is reachable from state 1."""
    return sum(1 for a in brute_ni_automata(k, 0, n, budget)
               if len(automata.reachable_states(a, 1)) == n)


# -- verification report -----------------------------------------------------

@dataclass
class Check:
    name: str
    expected: int
    observed: int
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.expected == self.observed


@dataclass
class Scope:
    k_values: tuple[int, ...] = (1, 2)
    n_max: int = 3
    t_max: int = 1

    @property
    def empty(self) -> bool:
        return not self.k_values or self.n_max < 0


@dataclass
class OracleReport:
    scope: Scope
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"{mark} {c.name}: expected {c.expected}, observed {c.observed} "
                         f"({c.seconds:.3f}s)")
        verdict = "all checks passed" if self.passed else f"{len(self.failures())} check(s) failed"
        lines.append(f"{len(self.checks)} checks, {verdict}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({
            "scope": {"k": list(self.scope.k_values), "n_max": self.scope.n_max,
                      "t_max": self.scope.t_max},
            "passed": self.passed,
            "checks": [{"name": c.name, "expected": c.expected, "observed": c.observed,
                        "pass": c.passed, "seconds": round(c.seconds, 6)} for c in self.checks],
        }, indent=2) + "\n"


class _Recorder:
    def __init__(self, report: OracleReport):
        self.report = report

    def __call__(self, name: str, compute: Callable[[], tuple[int, int]]):
        start = time.perf_counter()
        expected, observed = compute()
        self.report.checks.append(Check(name, expected, observed, time.perf_counter() - start))


def _histogram(phi: WeightFunction, n: int) -> tuple[int, int]:
    """Compare placement patterns per size profile with the Frobenius coefficients.

    Returns (number of profiles, number of profiles that agree) after also
    requiring every pattern to carry exactly ``multinomial`` labelings.
    """
    patterns: dict[tuple, int] = {}
    for pf in parking.enumerate_pf(phi, n):
        key = parking.slot_pattern(pf)
        patterns[key] = patterns.get(key, 0) + 1
    by_profile: dict[tuple, int] = {}
    good_labelings = True
    for key, count in patterns.items():
        profile = tuple(size for _, size in key)
        by_profile[profile] = by_profile.get(profile, 0) + 1
        good_labelings &= count == multinomial(profile)
    agree = sum(1 for pi in compositions(n)
                if by_profile.get(pi, 0) == parking.frobenius_coefficient(phi, pi))
    return 2 ** (n - 1) if n else 1, agree if good_labelings else -1


def _bijection_sweep(k: int, t: int, n: int, universe: set) -> tuple[int, int]:
    """(|oracle set|, pfs that map into the set, injectively, and round-trip)."""
    extras = canonical_extras(n, t)
    images = set()
    good = 0
    for pf in parking.enumerate_pf(WeightFunction.doubled(k, t), n):
        aut = bijection.zeta(pf, k, extras)
        if aut in universe and aut not in images and bijection.zeta_inverse(aut) == pf:
            good += 1
        images.add(aut)
    return len(universe), good


def _simplicity_transfer(k: int, n: int) -> tuple[int, int]:
    bad = 0
    for pf in parking.enumerate_pf(WeightFunction.doubled(k), n):
        aut = bijection.zeta(pf, k)
        lhs = automata.is_simple(aut) and automata.is_coreachable(aut)
        rhs = parking.is_simple_pf(pf) and not (pf.slots and pf.slots[0])
        bad += lhs != rhs
    return 0, bad


def _constraint_sets(k: int, t: int, extras) -> Iterator[frozenset]:
    """Every constraint set of size ``t+1`` containing both all-absorbing rows."""
    forced = automata.forced_constraint(k)
    sink = automata.Constraint(forced.nu, True)
    others = [automata.Constraint(nu, b)
              for nu in itertools.product([ABSORBING, *extras], repeat=k)
              for b in (False, True)]
    others = [c for c in others if c not in (forced, sink)]
    if t == 0:
        yield frozenset({forced})
        return
    for rest in itertools.combinations(others, t - 1):
        yield frozenset({forced, sink, *rest})


def _extended_sweep(k: int, t: int, n: int, universe: list) -> tuple[int, int]:
    """Over every constraint set: oracle class size vs. round-tripping images."""
    extras = canonical_extras(n, t)
    expected = observed = 0
    simple = [a for a in universe if _brute_simple(a)]
    phi = WeightFunction.constrained(k, t)
    for cs in _constraint_sets(k, t, extras):
        target = {a for a in simple if automata.satisfies_constraints(a, cs)}
        expected += len(target)
        seen = set()
        for pf in parking.enumerate_simple_pf(phi, n):
            aut = bijection.zeta_extended(pf, k, extras, cs)
            if (aut in target and aut not in seen
                    and bijection.zeta_extended_inverse(aut, k, cs) == pf):
                observed += 1
            seen.add(aut)
    return expected, observed


def _split_laws(universe: Iterable[ExtendedNiAutomaton]) -> tuple[int, int]:
    """(0, number of automaton/state pairs violating a split law)."""
    bad = 0
    for aut in universe:
        decomposable = _brute_coreachable(aut) and _brute_simple(aut)
        for i in aut.states:
            first, rest = automata.split(aut, i)
            ok = automata.merge(first, rest) == aut
            if decomposable:
                ok = ok and automata.is_minimal(first)
                ok = ok and automata.satisfies_constraints(rest, automata.constraints_of(first))
                ok = ok and automata.is_coreachable(rest) if rest.extras else ok
            bad += not ok
    return 0, bad


def _partition_agreement(universe: Iterable[ExtendedNiAutomaton]) -> tuple[int, int]:
    return 0, sum(automata.right_language_partition(a) != brute_partition(a) for a in universe)


def verify_all(scope: Scope | None = None, budget: int | None = None) -> OracleReport:
    """Run every identity against brute force inside ``scope``."""
    scope = scope or Scope()
    report = OracleReport(scope)
    if scope.empty:
        return report
    check = _Recorder(report)
    for k in scope.k_values:
        for n in range(0, scope.n_max + 1):
            for t in range(0, scope.t_max + 1):
                universe = set(brute_ni_automata(k, t, n, budget))
                tag = f"k={k} t={t} n={n}"
                phi = WeightFunction.doubled(k, t)
                check(f"pf enumeration vs recurrence [{tag}]", lambda: (
                    parking.count_pf(phi, n), sum(1 for _ in parking.enumerate_pf(phi, n))))
                check(f"pf recurrence vs Frobenius expansion [{tag}]", lambda: (
                    parking.count_pf(phi, n), parking.count_pf_via_frobenius(phi, n)))
                check(f"extended ADFA count vs brute force [{tag}]", lambda: (
                    census.count_extended_ni(k, t, n), len(universe)))
                check(f"extended ADFA = 2^n transition functions [{tag}]", lambda: (
                    census.count_extended_ni(k, t, n),
                    2 ** n * census.count_transition_functions(k, t, n)))
                check(f"zeta total, injective, onto, round-trip [{tag}]",
                      lambda: _bijection_sweep(k, t, n, universe))
                check(f"constrained zeta over all constraint sets [{tag}]",
                      lambda: _extended_sweep(k, t, n, list(universe)))
                check(f"partition refinement vs word traces [{tag}]",
                      lambda: _partition_agreement(universe))
                if t == 0:
                    check(f"table (a) vs coreachable-simple brute count [{tag}]", lambda: (
                        census.cell("table-a", k, n) * factorial(n),
                        sum(1 for a in universe if _brute_coreachable(a) and _brute_simple(a))))
                    check(f"table (b) vs simple brute count [{tag}]", lambda: (
                        census.cell("table-b", k, n) * factorial(n),
                        sum(1 for a in universe if _brute_simple(a))))
                    check(f"simplicity transfer counterexamples [{tag}]",
                          lambda: _simplicity_transfer(k, n))
                    check(f"split/merge and constraint laws [{tag}]",
                          lambda: _split_laws(universe))
                    if n >= 1:
                        check(f"ADFA count vs brute force [{tag}]", lambda: (
                            census.count_adfa(k, n),
                            sum(1 for a in universe
                                if len(automata.reachable_states(a, 1)) == n)))
                        check(f"MADFA count vs brute force [{tag}]", lambda: (
                            census.count_madfa(k, n), brute_count_madfa(k, n, budget)))
            for name, phi in _family(k):
                check(f"Frobenius histogram [phi={name} n={n}]", lambda: _histogram(phi, n))
        if k == 1:
            for n in range(0, scope.n_max + 3):
                check(f"Catalan row, simple (2m-1)-pfs [n={n}]", lambda: (
                    catalan(n), census.cell("table-a", 1, n)))
                if n >= 1:
                    check(f"unary MADFA count 2^(n-1)(n-1)! [n={n}]", lambda: (
                        2 ** (n - 1) * factorial(n - 1), census.count_madfa(1, n)))
    return report


def _family(k: int):
    return [(str(phi), phi) for phi in (
        WeightFunction.power(k), WeightFunction.doubled(k), WeightFunction.coreachable(k),
        WeightFunction.constrained(k, 1))]
