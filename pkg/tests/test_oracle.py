import json

import pytest

from madfa import census, oracle
from madfa.automata import ExtendedNiAutomaton, is_acyclic
from madfa.oracle import (
    BudgetExceeded,
    Scope,
    brute_count_adfa,
    brute_count_class,
    brute_count_madfa,
    brute_ni_automata,
    brute_right_language,
    canonical_extras,
    verify_all,
)


@pytest.mark.parametrize("k,t,n,expected", [(1, 0, 2, 12), (2, 0, 1, 2), (2, 0, 2, 28),
                                             (1, 1, 2, 32), (1, 0, 0, 1)])
def test_brute_ni_automata_counts(k, t, n, expected):
    auts = list(brute_ni_automata(k, t, n))
    assert len(auts) == len(set(auts)) == expected
    assert all(is_acyclic(a) and a.extras == canonical_extras(n, t) for a in auts)


def test_brute_ni_matches_recurrence():
    for k, t, n in ((1, 2, 3), (2, 1, 2), (3, 0, 2)):
        assert sum(1 for _ in brute_ni_automata(k, t, n)) == census.count_extended_ni(k, t, n)


@pytest.mark.parametrize("predicate,k,n,expected", [
    ("coreachable-simple", 2, 2, 12),
    ("simple", 2, 2, 26),
    ("coreachable-simple", 1, 3, 30),
    ("all", 1, 2, 12),
])
def test_brute_count_class(predicate, k, n, expected):
    assert brute_count_class(k, n, predicate) == expected


def test_brute_count_class_unknown_predicate():
    with pytest.raises(ValueError):
        brute_count_class(1, 1, "pretty")


@pytest.mark.parametrize("k,n,expected", [(2, 2, 6), (2, 3, 120), (1, 4, 48), (1, 1, 1)])
def test_brute_count_madfa(k, n, expected):
    assert brute_count_madfa(k, n) == expected


def test_brute_adfa_matches_census():
    for k, n in ((1, 3), (2, 2), (2, 3)):
        assert brute_count_adfa(k, n) == census.count_adfa(k, n)


def test_brute_right_language():
    acc = ExtendedNiAutomaton.build(2, {1: (None, None)}, {1})
    assert brute_right_language(acc, 1) == {()}
    rej = ExtendedNiAutomaton.build(2, {1: (None, None)})
    assert brute_right_language(rej, 1) == set()
    chain = ExtendedNiAutomaton.build(1, {1: (2,), 2: (None,)}, {2})
    assert brute_right_language(chain, 1) == {(0,)}
    assert brute_right_language(chain, 2) == {()}


def test_budget_enforced(monkeypatch):
    with pytest.raises(BudgetExceeded):
        list(brute_ni_automata(2, 0, 3, budget=100))
    monkeypatch.setenv(oracle.BUDGET_ENV, "50")
    assert oracle.default_budget() == 50
    with pytest.raises(BudgetExceeded):
        brute_count_madfa(2, 2)


def test_budget_env_must_be_integer(monkeypatch):
    monkeypatch.setenv(oracle.BUDGET_ENV, "lots")
    with pytest.raises(ValueError):
        oracle.default_budget()


def test_verify_default_scope_passes():
    report = verify_all()
    assert report.passed, report.to_text()
    names = " ".join(c.name for c in report.checks)
    for needle in ("zeta", "MADFA", "Frobenius", "split/merge", "simplicity transfer",
                   "table (a)", "table (b)"):
        assert needle in names


def test_verify_unary_scope_includes_catalan():
    report = verify_all(Scope((1,), 4, 1))
    assert report.passed
    assert any("Catalan" in c.name for c in report.checks)
    assert any("unary MADFA" in c.name for c in report.checks)


def test_verify_empty_scope():
    report = verify_all(Scope((), 3, 1))
    assert report.passed and report.checks == []


def test_verify_negative_control(monkeypatch):
    monkeypatch.setattr(census, "count_madfa", lambda k, n: census.count_adfa(k, n))
    report = verify_all(Scope((2,), 2, 0))
    assert not report.passed
    assert all("MADFA" in c.name for c in report.failures())


def test_report_formats():
    report = verify_all(Scope((1,), 1, 0))
    doc = json.loads(report.to_json())
    assert doc["passed"] is True
    assert set(doc["checks"][0]) == {"name", "expected", "observed", "pass", "seconds"}
    assert report.to_text().rstrip().endswith("all checks passed")
