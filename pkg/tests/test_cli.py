import json

import pytest
from typer.testing import CliRunner

from src.harness.cli import EXIT_ERROR, EXIT_PARSE, EXIT_RESOURCE, app

runner = CliRunner()


def invoke(*args):
    return runner.invoke(app, list(args))


def payload(*args):
    result = invoke("--json", *args)
    assert result.exit_code == 0, result.output
    return json.loads(result.stdout)


def test_gen_writes_group_file(tmp_path):
    result = invoke("gen", "sym(3)")
    assert result.exit_code == 0
    assert result.stdout.splitlines()[0] == "order 6"
    target = tmp_path / "s3.txt"
    assert invoke("gen", "alt(4)", "-o", str(target)).exit_code == 0
    assert payload("acount", str(target))["count"] == 24


def test_iso_verdicts():
    assert payload("iso", "sym(3)", "relabel(sym(3), 2)")["verdict"] is True
    assert payload("iso", "cyclic(6)", "sym(3)")["verdict"] is False
    assert payload("iso", "--method", "apart", "alt(4)", "relabel(alt(4), 1)")["verdict"] is True
    result = invoke("iso", "cyclic(6)", "sym(3)")
    assert "not isomorphic" in result.stdout


def test_imap_and_counts():
    data = payload("imap", "alt(4)", "relabel(alt(4), 8)")
    assert data["verdict"] is True
    assert sorted(data["certificate"]) == list(range(12))
    assert payload("icount", "sym(3)", "relabel(sym(3), 2)")["count"] == 6
    assert payload("acount", "direct(sym(3), alt(4))")["count"] == 144
    assert "isomorphisms: 0" in invoke("icount", "cyclic(6)", "sym(3)").stdout


def test_apart_orbits():
    data = payload("apart", "sym(3)")
    assert sorted(len(orbit) for orbit in data["orbits"]) == [1, 2, 3]
    assert data["orbits"][0] == [0]


def test_aut_reports_methods():
    data = payload("aut", "alt(4)")
    assert data["order"] == 24
    assert data["methods"] == ["recursive", "abelian-base"]
    assert data["exact"] is True
    text = invoke("aut", "alt(4)").stdout
    assert text.splitlines()[0] == "|Aut| = 24"


def test_oracle_commands():
    assert payload("oracle-aut", "alt(4)")["order"] == 24
    assert payload("oracle-iso", "cyclic(21)", "semidirect(cyclic(7), cyclic(3), pow(2))")["verdict"] is False


@pytest.mark.parametrize("args", [("aut", "alt(4)"), ("iso", "alt(4)", "relabel(alt(4), 3)"), ("apart", "direct(sym(3), alt(4))")])
def test_output_is_deterministic(args):
    first = invoke("--seed", "5", "--json", *args)
    second = invoke("--seed", "5", "--json", *args)
    assert first.exit_code == second.exit_code == 0
    assert first.stdout == second.stdout


def test_exit_codes():
    assert invoke("gen", "cyclic(0)").exit_code == EXIT_PARSE
    assert invoke("--oracle-budget", "1", "oracle-aut", "alt(4)").exit_code == EXIT_RESOURCE
    assert invoke("--max-order", "10", "iso", "alt(4)", "relabel(alt(4), 1)").exit_code == EXIT_RESOURCE
    assert invoke("aut", "sym(4)").exit_code == EXIT_ERROR
    assert invoke("iso", "--method", "guess", "sym(3)", "sym(3)").exit_code == EXIT_ERROR


def test_accept(tmp_path):
    good = tmp_path / "good.txt"
    good.write_text("sym(3) ; order=6 ; aut=6\nalt(4) ; iso=relabel(alt(4), 2) ; isomorphic=true\n")
    result = invoke("accept", str(good))
    assert result.exit_code == 0
    assert "6/6 criteria passed" in result.stdout

    bad = tmp_path / "bad.txt"
    bad.write_text("sym(3) ; order=7\n")
    assert invoke("accept", str(bad)).exit_code == EXIT_ERROR

    rows = payload("accept", "--timings", str(good))
    assert len(rows) == 6 and all(row["passed"] for row in rows)
    assert all("seconds" in row for row in rows)


def test_accept_empty_and_malformed(tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("# nothing to check\n")
    result = invoke("accept", str(empty))
    assert result.exit_code == 0
    assert "0/0 criteria passed" in result.stdout
    malformed = tmp_path / "malformed.txt"
    malformed.write_text("sym(3) ; flavour=sweet\n")
    assert invoke("accept", str(malformed)).exit_code == EXIT_PARSE
