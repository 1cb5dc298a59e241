from __future__ import annotations

import json
import subprocess
import sys

import pytest

from crossingcrit.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_INPUT, EXIT_OK, check_report_digest, main

from conftest import complete


def run(*args: str) -> int:
    return main(list(args))


def test_gen_base(tmp_path):
    out = tmp_path / "g.json"
    assert run("gen", "--family", "g13", "-o", str(out)) == EXIT_OK
    assert len(json.loads(out.read_text())["vertices"]) == 17


def test_gen_half_integer_params(tmp_path):
    out = tmp_path / "g.json"
    assert run("gen", "--family", "g13p", "--ks", "0.5,0.5,1", "-o", str(out)) == EXIT_OK
    assert len(json.loads(out.read_text())["vertices"]) == 18


def test_gen_thm3_has_manifest(tmp_path):
    out = tmp_path / "t.json"
    assert run("gen", "--family", "thm3", "--q", "1", "--d", "8", "--c", "13", "-o", str(out)) == EXIT_OK
    data = json.loads(out.read_text())
    assert data["manifest"]["command"] == "gen"
    assert check_report_digest(data)


def test_gen_invalid(tmp_path):
    out = tmp_path / "x.json"
    assert run("gen", "--family", "g13p", "--ks", "0.3", "-o", str(out)) == EXIT_INPUT
    assert not out.exists()


def test_table1(capsys):
    assert run("table1", "--golden") == EXIT_OK
    assert "min total: 12" in capsys.readouterr().out


def test_table1_json(capsys):
    assert run("table1", "--json") == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert len(data["rows"]) == 20 and data["min_total"] == 12
    assert set(data["rows"][0]) == {"e1", "e2", "es", "pairwise", "switching", "green", "total"}


def test_solve(tmp_path):
    src = tmp_path / "k5.json"
    src.write_text(complete(5).to_json())
    rep = tmp_path / "r.json"
    assert run("solve", "--in", str(src), "--report", str(rep)) == EXIT_OK
    data = json.loads(rep.read_text())
    assert data["status"] == "Exact" and data["upper_bound"] == 1
    assert check_report_digest(data)
    assert list(data["manifest"]["input_digests"].values())[0]


def test_solve_budget_exhausted(tmp_path):
    src = tmp_path / "k7.json"
    src.write_text(complete(7).to_json())
    assert run("solve", "--in", str(src), "--time", "0.5", "--report", str(tmp_path / "r.json")) == EXIT_BUDGET


def test_solve_bad_input(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    out = tmp_path / "r.json"
    assert run("solve", "--in", str(bad), "--report", str(out)) == EXIT_INPUT
    assert run("solve", "--in", str(tmp_path / "missing.json")) == EXIT_INPUT
    assert not out.exists()


def test_verify_base(tmp_path):
    rep = tmp_path / "v.json"
    assert run("verify", "--ks", "1,1", "--c", "13", "--summary", "--report", str(rep)) == EXIT_OK
    data = json.loads(rep.read_text())
    assert data["criticality"]["verdict"] == "criticality-verified-at-desk-scale"
    assert check_report_digest(data)


def test_verify_reports_are_reproducible(tmp_path):
    digests = []
    for i in range(2):
        rep = tmp_path / f"v{i}.json"
        assert run("verify", "--ks", "1,1", "--no-decrements", "--report", str(rep)) == EXIT_OK
        digests.append(json.loads(rep.read_text())["manifest"]["output_digest"])
    assert digests[0] == digests[1]


def test_verify_failure_exit(tmp_path):
    rep = tmp_path / "v.json"
    assert run("verify", "--ks", "1,1", "--c", "12", "--no-decrements", "--summary",
               "--report", str(rep)) == EXIT_FAIL


def test_verify_pipeline_and_theorem3(tmp_path):
    rep = tmp_path / "v.json"
    assert run("verify", "--pipeline", "--theorem3", "--q", "1", "--d", "8", "--c", "14",
               "--report", str(rep)) == EXIT_OK
    data = json.loads(rep.read_text())
    assert data["pipeline"]["ok"] and data["theorem3"]["ok"]


def test_verify_nothing_requested():
    assert run("verify") == EXIT_INPUT


def test_export(tmp_path, capsys):
    src = tmp_path / "g.json"
    assert run("gen", "-o", str(src)) == EXIT_OK
    assert run("export", "--in", str(src), "--fmt", "dot") == EXIT_OK
    assert capsys.readouterr().out.startswith("graph G {")
    assert run("export", "--in", str(src), "--fmt", "edgelist") == EXIT_OK
    assert len(capsys.readouterr().out.splitlines()) == 77


def test_export_drawing_to_dot(tmp_path, capsys):
    from crossingcrit import build_g13, canonical_drawing, export_drawing

    src = tmp_path / "d.json"
    src.write_bytes(export_drawing(canonical_drawing(build_g13())))
    assert run("export", "--in", str(src), "--fmt", "dot") == EXIT_OK
    assert "dummy=true" in capsys.readouterr().out


def test_env_budget(monkeypatch):
    monkeypatch.setenv("CROSSINGCRIT_BUDGET_SEC", "abc")
    assert run("verify", "--pipeline") == EXIT_INPUT


@pytest.mark.parametrize("argv", [["-m", "crossingcrit", "--version"], ["-m", "crossingcrit", "table1", "--golden"]])
def test_module_entry_point(argv):
    res = subprocess.run([sys.executable, *argv], capture_output=True, text=True)
    assert res.returncode == 0
