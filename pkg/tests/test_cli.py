"""CLI behavior: outputs, exit codes, JSON report shape, determinism."""

import json
import pathlib

import pytest

from dilators.cli import run

FIXTURE = str(pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "family3.json")


def _capture(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, out


def test_list(capsys):
    code, out = _capture(capsys, ["dilators", "list"])
    assert code == 0
    names = [line.split("\t")[0] for line in out.strip().splitlines()]
    assert names == ["bump", "omega", "segment", "star", "zplus"]


def test_deriv_enumerate_segment(capsys):
    code, out = _capture(capsys, ["deriv", "enumerate", "--dilator", "segment", "--n", "3"])
    assert code == 0
    assert out.strip().splitlines() == ["(mu 0)", "(mu 1)", "(mu 2)"]


def test_deriv_compare(capsys):
    code, out = _capture(capsys, [
        "deriv", "compare", "--dilator", "omega", "--n", "0",
        "--left", "(xi (set) (seq))",
        "--right", "(xi (set (xi (set) (seq))) (seq 0))"])
    assert code == 0 and out.strip() == "<"


def test_ext_compare(capsys):
    code, out = _capture(capsys, [
        "ext", "compare", "--dilator", "omega", "--order", "nat",
        "--left", "(ext (set 0 2) (seq 1 0))", "--right", "(ext (set 3) (seq 0))"])
    assert code == 0 and out.strip() == "<"


def test_oracle_translate(capsys):
    code, out = _capture(capsys, [
        "oracle", "translate", "--term", "(xi (set (xi (set) (seq))) (seq 0 0))"])
    assert code == 0 and out.strip() == "w^0 + w^0"


def test_malformed_term_exits_2(capsys):
    assert run(["oracle", "translate", "--term", "(xi (set"]) == 2
    assert run(["ext", "compare", "--dilator", "omega", "--order", "nat",
                "--left", "(ext (set 0) (seq 0 0 0))", "--right", "(ext (set 1) (seq 0))"]) == 0
    # invalid term (support not full) is a domain error, not a crash
    assert run(["ext", "compare", "--dilator", "omega", "--order", "nat",
                "--left", "(ext (set 0 1) (seq 0))", "--right", "(ext (set 1) (seq 0))"]) == 2


def test_usage_error_exits_2():
    assert run(["no-such-command"]) == 2
    assert run(["deriv", "check", "--suite", "no-such-suite"]) == 2


def test_deriv_check_json_report(capsys):
    code, out = _capture(capsys, ["deriv", "check", "--suite", "normality", "--bound", "4"])
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == "dilators-report/1"
    assert payload["passed"] is True
    assert all("violations" in r and "checks" in r for r in payload["reports"])


def test_report_determinism(capsys):
    argv = ["deriv", "check", "--suite", "heights", "--seed", "7", "--bound", "8"]
    _, first = _capture(capsys, argv)
    _, second = _capture(capsys, argv)
    assert first == second


def test_compose_check(capsys):
    code, out = _capture(capsys, [
        "compose", "check", "--outer", "segment", "--inner", "zplus",
        "--depth", "2", "--bound", "4"])
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_barind_demo(capsys):
    code, out = _capture(capsys, ["barind", "demo", "--family", FIXTURE])
    assert code == 0
    assert "verdict: pass" in out
    code, out = _capture(capsys, ["barind", "demo", "--family", FIXTURE, "--json"])
    assert code == 0 and json.loads(out)["passed"] is True


def test_missing_family_file_exits_2():
    assert run(["barind", "demo", "--family", "/nonexistent.json"]) == 2
