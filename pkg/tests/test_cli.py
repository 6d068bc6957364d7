"""Command-line interface tests: exit codes, output formats, determinism,
sweep tables, and configuration validation."""

import json
import os

import pytest

from fockbundle import cli

FAST = ["--nmax", "16", "--theta", "1.0"]


def run_main(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_fock_json(capsys):
    code, out, _ = run_main(["verify", "--suite", "fock", "--format", "json"] + FAST, capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["suite"] == "fock"
    assert doc["pass"] is True
    assert doc["version"] == 1
    assert all({"name", "max_deviation", "tol", "pass"} <= set(c) for c in doc["checks"])


def test_json_output_is_byte_stable(capsys):
    argv = ["verify", "--suite", "charts", "--format", "json", "--seed", "5"] + FAST
    _, first, _ = run_main(argv, capsys)
    _, second, _ = run_main(argv, capsys)
    assert first == second


def test_text_format_mentions_every_check(capsys):
    code, out, _ = run_main(["verify", "--suite", "classical", "--format", "text"] + FAST, capsys)
    assert code == 0
    assert "pass" in out.lower()


def test_csv_format_has_header(capsys):
    code, out, _ = run_main(["verify", "--suite", "fock", "--format", "csv"] + FAST, capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("name,")
    assert len(lines) > 1


def test_all_suites_pass_quick(capsys):
    code, out, _ = run_main(["verify", "--suite", "all", "--format", "json"] + FAST, capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] is True
    assert len(doc["checks"]) > 50


def test_failing_tolerance_exits_one(capsys):
    code, out, _ = run_main(
        ["verify", "--suite", "fock", "--format", "json", "--nmax", "16", "--tol", "1e-30"], capsys
    )
    assert code == 1
    assert json.loads(out)["pass"] is False


def test_unknown_suite_exits_two(capsys):
    code, _, err = run_main(["verify", "--suite", "nonsense"], capsys)
    assert code == 2
    assert "config error" in err


def test_bad_nmax_exits_two(capsys):
    code, _, _ = run_main(["verify", "--suite", "fock", "--nmax", "2"], capsys)
    assert code == 2


def test_thread_env_validation(capsys, monkeypatch):
    monkeypatch.setenv("FOCKBUNDLE_THREADS", "zero")
    code, _, err = run_main(["verify", "--suite", "fock"] + FAST, capsys)
    assert code == 2 and "config error" in err
    monkeypatch.setenv("FOCKBUNDLE_THREADS", "0")
    code, _, _ = run_main(["verify", "--suite", "fock"] + FAST, capsys)
    assert code == 2
    monkeypatch.setenv("FOCKBUNDLE_THREADS", "2")
    code, _, _ = run_main(["verify", "--suite", "fock"] + FAST, capsys)
    assert code == 0


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run_main(
        ["verify", "--suite", "fock", "--format", "json", "--out", str(target)] + FAST, capsys
    )
    assert code == 0
    doc = json.loads(target.read_text())
    assert doc["suite"] == "fock"


def test_sweep_theta(capsys):
    code, out, _ = run_main(
        ["sweep", "--suite", "charts", "--axis", "theta", "--values", "-1", "0", "1", "--nmax", "16"],
        capsys,
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("theta,")
    assert len(lines) == 4
    assert [row.split(",")[0] for row in lines[1:]] == ["-1.0", "0.0", "1.0"]


def test_sweep_nmax(capsys):
    code, out, _ = run_main(
        ["sweep", "--suite", "fock", "--axis", "nmax", "--values", "8", "16"] + ["--theta", "1.0"],
        capsys,
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 3


def test_sweep_bad_axis_exits_two(capsys):
    code, _, err = run_main(
        ["sweep", "--suite", "fock", "--axis", "bogus", "--values", "1"], capsys
    )
    assert code == 2
