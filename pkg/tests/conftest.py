import json
import sys
from pathlib import Path

import pytest

from madfa import automata

FIXTURES = Path(__file__).parent / "fixtures"


def load_table(name: str) -> dict[tuple[int, int], int]:
    """Reference grid as {(k, n): value}; rows are n, columns k = 1..4."""
    doc = json.loads((FIXTURES / "reference_tables.json").read_text())[name]
    return {(k, n): v
            for n, row in enumerate(doc["rows"], start=doc["n_min"])
            for k, v in enumerate(row, start=1)}


@pytest.fixture(scope="session")
def split_example():
    return automata.from_json_dict(json.loads((FIXTURES / "split_example.json").read_text()))


@pytest.fixture(scope="session")
def zeta_example_pf_text():
    return (FIXTURES / "zeta_example.pf").read_text().strip()


@pytest.fixture(scope="session")
def zeta_example_automaton():
    return automata.from_json_dict(json.loads((FIXTURES / "zeta_example.json").read_text()))


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
