import json
import subprocess
import sys

import pytest

from conftest import FIXTURES, load_table
from madfa import census
from madfa.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv,expected", [
    (["count", "madfa", "-k", "2", "-n", "2"], "6\n"),
    (["count", "pf", "--phi", "m^2", "-n", "2"], "7\n"),
    (["count", "simple-pf", "--phi", "2m^k-1", "-k", "3", "-n", "4"], "1434384\n"),
    (["count", "d", "-k", "2", "-n", "2"], "7\n"),
    (["count", "e", "-k", "1", "-t", "1", "-n", "2"], "32\n"),
    (["count", "adfa", "-k", "1", "-n", "1"], "2\n"),
    (["count", "frobenius-pf", "--phi", "2,1,0,0", "-n", "2"], "12\n"),
])
def test_count(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out == expected


def test_count_big_values_are_plain_decimals(capsys):
    code, out, _ = run(capsys, "count", "madfa", "-k", "4", "-n", "11")
    assert code == 0 and out.strip().isdigit() and len(out.strip()) > 30


@pytest.mark.parametrize("argv", [
    ["count", "pf", "-n", "2"],
    ["count", "pf", "--phi", "m^k", "-n", "2"],
    ["count", "madfa", "-n", "2"],
    ["count", "madfa", "-k", "2", "-n", "0"],
    ["table", "c", "--k-max", "2"],
    ["table", "c", "--k-max", "2", "--n-max", "3", "--format", "dot"],
])
def test_config_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("madfa:")


def test_table_c(capsys):
    code, out, _ = run(capsys, "table", "c", "--k-max", "2", "--n-max", "5")
    assert code == 0
    rows = [line.split(",") for line in out.strip().splitlines()]
    expected = load_table("c")
    assert rows[0] == ["k\\n", "1", "2", "3", "4", "5"]
    for row in rows[1:]:
        k = int(row[0])
        assert [int(v) for v in row[1:]] == [expected[(k, n)] for n in range(1, 6)]


def test_table_a_catalan(capsys):
    code, out, _ = run(capsys, "table", "a", "--k-max", "1", "--n-max", "5")
    assert out.splitlines()[1] == "1,1,1,2,5,14,42"


def test_table_b_json(capsys):
    code, out, _ = run(capsys, "table", "b", "--k-max", "4", "--n-max", "5", "--format", "json")
    doc = json.loads(out)
    expected = load_table("b")
    for k, row in zip(doc["k_range"], doc["entries"]):
        assert row == [expected[(k, n)] for n in doc["n_range"]]


def test_table_to_file(capsys, tmp_path):
    target = tmp_path / "t.txt"
    code, out, _ = run(capsys, "table", "madfa", "--k-max", "1", "--n-max", "3",
                       "--format", "text", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().splitlines()[1].split() == ["1", "1", "2", "8"]


def test_enumerate_pf(capsys):
    code, out, err = run(capsys, "enumerate", "pf", "--phi", "m^2", "-n", "2")
    assert code == 0 and len(out.splitlines()) == 7 and err.strip() == "7"


def test_enumerate_empty(capsys):
    code, out, _ = run(capsys, "enumerate", "pf", "--phi", "m", "-n", "0")
    assert out == "()\n"


def test_enumerate_ni_adfa(capsys):
    code, out, err = run(capsys, "enumerate", "ni-adfa", "-k", "1", "-n", "2")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 12 == int(err)
    assert all(json.loads(line)["k"] == 1 for line in lines)


def test_enumerate_budget(capsys, monkeypatch):
    code, _, _ = run(capsys, "enumerate", "ni-adfa", "-k", "2", "-n", "3", "--budget", "10")
    assert code == 4
    monkeypatch.setenv("MADFA_BUDGET", "10")
    code, _, _ = run(capsys, "enumerate", "pf", "--phi", "m^2", "-n", "3")
    assert code == 4


def test_zeta_single(capsys):
    code, out, _ = run(capsys, "zeta", "-k", "2", "--pf", "(·|1)")
    doc = json.loads(out)
    assert code == 0
    assert doc["states"] == [1] and doc["accepting"] == [1] and doc["delta"] == {"1": ["@", "@"]}


def test_zeta_example_fixture(capsys):
    code, out, _ = run(capsys, "zeta", "-k", "2", str(FIXTURES / "zeta_example.pf"))
    assert code == 0 and out == (FIXTURES / "zeta_example.json").read_text()


def test_zeta_round_trip_files(capsys, tmp_path):
    pf_text = (FIXTURES / "zeta_example.pf").read_text()
    aut_path = tmp_path / "aut.json"
    run(capsys, "zeta", "-k", "2", str(FIXTURES / "zeta_example.pf"), "--out", str(aut_path))
    back = tmp_path / "back.pf"
    code, _, _ = run(capsys, "zeta", "--invert", str(aut_path), "--out", str(back))
    assert code == 0 and back.read_text() == pf_text


def test_zeta_dot(capsys):
    code, out, _ = run(capsys, "zeta", "-k", "2", "--pf", "(·|1)", "--format", "dot")
    assert code == 0 and out.startswith("digraph")


def test_zeta_constrained(capsys, tmp_path):
    constraint_file = tmp_path / "c.json"
    constraint_file.write_text(json.dumps({"extras": [], "constraints": [
        {"nu": ["@", "@"], "accepting": False}]}))
    code, out, _ = run(capsys, "zeta", "-k", "2", "--pf", "(1)", "--constraints", str(constraint_file))
    assert code == 0 and json.loads(out)["accepting"] == [1]
    aut = tmp_path / "a.json"
    aut.write_text(out)
    code, out, _ = run(capsys, "zeta", "--invert", str(aut), "--constraints", str(constraint_file))
    assert code == 0 and out == "(1)\n"


@pytest.mark.parametrize("argv", [
    ["zeta", "-k", "2", "--pf", "garbage"],
    ["zeta", "-k", "2", "--pf", "(1|·)(1)"],
    ["zeta", "-k", "2", "--pf", "(·|·|·|·|·|·|1|2)"],
])
def test_zeta_invalid_pf(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 3


def test_zeta_invalid_automaton(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"k": 1, "states": [1], "accepting": [], "extras": [], "initial": null,'
                   ' "delta": {"1": ["1"]}}')
    code, _, _ = run(capsys, "zeta", "--invert", str(bad))
    assert code == 3
    bad.write_text("not json")
    assert run(capsys, "zeta", "--invert", str(bad))[0] == 3


def test_zeta_missing_file(capsys, tmp_path):
    assert run(capsys, "zeta", "-k", "2", str(tmp_path / "nope.pf"))[0] == 2


def test_verify_small_scope(capsys):
    code, out, _ = run(capsys, "verify", "-k", "1", "--n-max", "2", "-t", "0", "--format", "json")
    assert code == 0 and json.loads(out)["passed"] is True


def test_verify_unary_catalan(capsys):
    code, out, _ = run(capsys, "verify", "--k", "1", "--n-max", "4")
    assert code == 0 and "Catalan" in out and "unary MADFA" in out


def test_verify_negative_control(capsys, monkeypatch):
    monkeypatch.setattr(census, "count_madfa", lambda k, n: census.count_adfa(k, n))
    code, out, _ = run(capsys, "verify", "-k", "2", "--n-max", "2", "-t", "0")
    assert code == 1 and "FAIL" in out


def test_deterministic_output(capsys):
    first = run(capsys, "enumerate", "pf", "--phi", "2m", "-n", "3")
    second = run(capsys, "enumerate", "pf", "--phi", "2m", "-n", "3")
    assert first == second


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "madfa", "count", "madfa", "-k", "2", "-n", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "120\n"
