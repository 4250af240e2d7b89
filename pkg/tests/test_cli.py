import json

import pytest

from multicolor.cli import EXIT_INVALID, EXIT_OK, EXIT_VERIFY_FAILED, main
from multicolor.core import emit_multigraph, parse_multigraph, shannon_multigraph
from multicolor.harness import JSONL, parse


def _run(argv):
    return main(["--log-level", "WARNING", *argv])


@pytest.fixture
def shannon_file(tmp_path):
    path = tmp_path / "shannon.txt"
    path.write_text(emit_multigraph(shannon_multigraph(4)))
    return path


def test_sample_to_file(tmp_path):
    out = tmp_path / "g.txt"
    assert _run(["sample", "-n", "9", "-m", "40", "--seed", "3", "-o", str(out)]) == EXIT_OK
    graph = parse_multigraph(out.read_text())
    assert graph.n == 9 and graph.m == 40


def test_color_then_verify(shannon_file, tmp_path, capsys):
    coloring = tmp_path / "c.txt"
    assert _run(["color", str(shannon_file), "-o", str(coloring)]) == EXIT_OK
    summary = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert summary["colors_used"] == 6
    assert _run(["verify", str(shannon_file), str(coloring)]) == EXIT_OK
    assert capsys.readouterr().out == "ok colors_used=6\n"


def test_verify_failure(shannon_file, tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("n=3 m=6 k=2\n0 1 0 1\n0 1 1 2\n0 2 0 1\n0 2 1 2\n1 2 0 0\n1 2 1 0\n")
    assert _run(["verify", str(shannon_file), str(bad)]) == EXIT_VERIFY_FAILED
    out = capsys.readouterr().out
    assert "violation vertex=0" in out
    assert "uncolored 1-2#0" in out


def test_exact(shannon_file, capsys):
    assert _run(["exact", str(shannon_file)]) == EXIT_OK
    header = capsys.readouterr().out.splitlines()[0]
    assert "colors_used=6" in header.split()
    assert "strategy=exact" in header.split()


def test_exact_limit(shannon_file, capsys):
    assert _run(["exact", str(shannon_file), "--max-exact-m", "3"]) == EXIT_INVALID
    assert capsys.readouterr().err.startswith("error:")


def test_rho(shannon_file, capsys):
    assert _run(["rho", str(shannon_file)]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert "rho=6" in lines
    assert "active=density" in lines


def test_predict(capsys):
    assert _run(["predict", "-n", "9", "-m", "3300", "--epsilon", "0.5"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "rho_full=825\n" in out
    assert "regime=super-threshold\n" in out


def test_malformed_graph(tmp_path, capsys):
    path = tmp_path / "broken.txt"
    path.write_text("3 1\n0 0 1\n")
    assert _run(["color", str(path)]) == EXIT_INVALID
    assert "error:" in capsys.readouterr().err


def test_missing_file(tmp_path):
    assert _run(["rho", str(tmp_path / "absent.txt")]) == EXIT_INVALID


def test_experiment(tmp_path):
    config = tmp_path / "exp.json"
    config.write_text(json.dumps({"n_values": [5], "m_values": [6, 10], "trials": 2}))
    out = tmp_path / "records.jsonl"
    argv = ["experiment", str(config), "--format", JSONL, "--workers", "1", "--seed", "4", "-o", str(out)]
    assert _run(argv) == EXIT_OK
    records = parse(out.read_bytes(), JSONL)
    assert [(r.cell, r.trial) for r in records] == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_experiment_summary(tmp_path, capsys):
    config = tmp_path / "exp.json"
    config.write_text(json.dumps({"n_values": [5], "m_values": [6], "trials": 3, "workers": 1}))
    assert _run(["experiment", str(config), "--summary"]) == EXIT_OK
    header = capsys.readouterr().out.splitlines()[0]
    assert header.startswith("cell,n,m,trials,mean_gap")


def test_experiment_bad_config(tmp_path):
    config = tmp_path / "exp.json"
    config.write_text(json.dumps({"n_values": [5], "trials": 0}))
    assert _run(["experiment", str(config)]) == EXIT_INVALID
