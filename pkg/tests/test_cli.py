"""Command-line behavior: formats, exit codes, stream discipline."""
from __future__ import annotations

import json
import re
from importlib import resources

import pytest

from cayley_ricci.cli import RunConfig, default_parallelism, main, run

RATIONAL = re.compile(r"^-?\d+/\d+$")


def invoke(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def data_file(name: str) -> str:
    return str(resources.files("cayley_ricci").joinpath(f"data/certificates/{name}"))


def test_curvature_json_shape(capsys):
    code, out, err = invoke(capsys, "curvature", "--group", "D:6", "--gens", "sigma-tau", "--output", "json")
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert doc["A"] == "0/1" and doc["B"] == "2/3"
    assert doc["group"] == "D:6" and doc["gens"] == "sigma-tau"
    # serialized rationals round-trip: re-serializing the parse is the identity
    assert json.dumps(doc, sort_keys=True) == out.strip()


def test_curvature_text_output(capsys):
    code, out, err = invoke(capsys, "curvature", "--group", "Q:8", "--gens", "sigma-tau")
    assert code == 0
    assert out.splitlines() == ["A 1/2", "B 1/2"]


def test_curvature_csv_output(capsys):
    code, out, _ = invoke(capsys, "curvature", "--group", "Z:9", "--gens", "s1k:2", "--output", "csv")
    assert code == 0
    assert out.splitlines() == ["type,kappa", "A,3/4", "B,1/4"]


def test_curvature_single_edge(capsys):
    code, out, _ = invoke(capsys, "curvature", "--group", "D:3", "--gens", "sigma-tau",
                          "--edge", "e", "t", "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["kappa"] == "2/3" and doc["type"] == "B"


def test_curvature_rejects_non_edge(capsys):
    code, out, err = invoke(capsys, "curvature", "--group", "D:3", "--gens", "sigma-tau",
                            "--edge", "s2", "t")
    assert code == 2 and out == ""
    assert "usage error" in err


def test_table_csv_matches_the_golden_rows(capsys):
    code, out, err = invoke(capsys, "table", "--id", "3", "--output", "csv")
    assert code == 0 and err == ""
    assert out.splitlines() == [
        "n,typeA,typeB",
        "6,1/1,1/1",
        "7,1/1,3/4",
        "8,3/4,1/2",
        "9,3/4,1/4",
        "10,1/2,1/4",
    ]


def test_table_ten_carries_k_and_n_columns(capsys):
    code, out, _ = invoke(capsys, "table", "--id", "10", "--output", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "k,n,typeA,typeB"
    assert any(line.startswith("5,18,0/1,0/1") for line in lines)


def test_table_json_reports_no_mismatches_on_success(capsys):
    code, out, _ = invoke(capsys, "table", "--id", "1", "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["table"] == 1 and doc["mismatches"] == []
    for row in doc["rows"]:
        for kind in ("A", "B"):
            assert RATIONAL.match(row[kind])


def test_table_unknown_id_is_a_usage_error(capsys):
    code, out, err = invoke(capsys, "table", "--id", "99")
    assert code == 2 and out == ""
    assert "usage error" in err


def test_scan_clean_band_exits_zero(capsys):
    code, out, err = invoke(capsys, "scan", "--k-min", "5", "--k-max", "5",
                            "--n-max", "26", "--output", "csv")
    assert code == 0 and err == ""
    assert out.splitlines()[0] == "k,n,typeA,typeB,typeAB,condition,agrees"
    assert all(line.endswith(",yes") for line in out.splitlines()[1:])


def test_scan_disagreement_exits_one_with_machine_readable_list(capsys):
    code, out, err = invoke(capsys, "scan", "--k-min", "8", "--k-max", "8", "--n-max", "21")
    assert code == 1
    assert "k=8 n=20" in out and "DISAGREES" in out
    failures = json.loads(err)
    assert failures == [{
        "A": "0/1", "B": "1/4", "condition": 4, "k": 8, "n": 20,
        "predicted_a_zero": True, "predicted_b_zero": True,
    }]


def test_scan_json_embeds_disagreements(capsys):
    code, out, err = invoke(capsys, "scan", "--k-min", "8", "--k-max", "8",
                            "--n-max", "21", "--output", "json")
    assert code == 1 and err == ""
    doc = json.loads(out)
    assert [(d["k"], d["n"]) for d in doc["disagreements"]] == [(8, 20)]


def test_verify_certificate_pair(capsys):
    code, out, err = invoke(capsys, "verify", "--group", "D:3", "--gens", "sigma-tau",
                            "--alpha", "1/2",
                            "--plan", data_file("d3_typeA.plan"),
                            "--potential", data_file("d3_typeA.pot"),
                            "--output", "json")
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert doc["cost"] == "1/2" and doc["bound"] == "1/2"
    assert doc["marginals"] == "ok" and doc["lipschitz"] == "ok"
    assert doc["certified"] == "ok"


def test_verify_doctored_plan_fails(capsys, tmp_path):
    text = resources.files("cayley_ricci").joinpath(
        "data/certificates/d3_typeA.plan").read_text()
    doctored = tmp_path / "doctored.plan"
    doctored.write_text(text.replace("1/3", "1/4"))
    code, out, err = invoke(capsys, "verify", "--group", "D:3", "--gens", "sigma-tau",
                            "--alpha", "1/2", "--plan", str(doctored))
    assert code == 1
    assert json.loads(err)["error"] == "MarginalMismatchError"


def test_verify_requires_a_file(capsys):
    code, _, err = invoke(capsys, "verify", "--group", "D:3", "--gens", "sigma-tau")
    assert code == 2
    assert "usage error" in err


def test_verify_missing_file_is_a_usage_error(capsys):
    code, _, err = invoke(capsys, "verify", "--group", "D:3", "--gens", "sigma-tau",
                          "--plan", "no-such-file.plan")
    assert code == 2
    assert "usage error" in err


def test_usage_errors_exit_two(capsys):
    assert main([]) == 2
    capsys.readouterr()
    assert main(["curvature", "--group", "D:6"]) == 2  # --gens missing
    capsys.readouterr()
    assert main(["curvature", "--group", "X:6", "--gens", "s1"]) == 2
    assert "usage error" in capsys.readouterr().err


def test_output_is_parallelism_invariant(capsys):
    runs = []
    for workers in ("1", "4"):
        code, out, err = invoke(capsys, "table", "--id", "2", "--output", "csv",
                                "--parallelism", workers)
        assert code == 0
        runs.append(out)
    assert runs[0] == runs[1]


def test_parallelism_env_override(monkeypatch):
    monkeypatch.setenv("RICCI_PARALLELISM", "3")
    assert default_parallelism() == 3
    monkeypatch.setenv("RICCI_PARALLELISM", "auto")
    assert default_parallelism() >= 1
    monkeypatch.delenv("RICCI_PARALLELISM")
    assert default_parallelism() == 1


def test_run_config_drives_run_directly(capsys):
    code = run(RunConfig(command="curvature", group="Z:5", gens="s1", output="json"))
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["A"] == "1/2"
