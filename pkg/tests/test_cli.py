"""The `sigma` command: eval, check, repl, flags, output formats."""

import json

from click.testing import CliRunner

from sigmavect.cli import main


def run(*args, input=None):
    return CliRunner().invoke(main, list(args), input=input)


def test_eval_expression():
    r = run("eval", "-e", "truncate((1 - x - x^2)^-1, x^5)")
    assert r.exit_code == 0
    assert r.output.strip() == "1 + x + 2*x^2 + 3*x^3 + 5*x^4 + 8*x^5"


def test_eval_multiple_expressions():
    r = run("eval", "-e", "1 + 1", "-e", "pair(e1, ones)")
    assert r.exit_code == 0
    assert r.output.splitlines() == ["2", "1"]


def test_eval_from_file(tmp_path):
    p = tmp_path / "exprs.txt"
    p.write_text("# comment\n\nx * x\npair(e0, ones)\n")
    r = run("eval", "-f", str(p))
    assert r.exit_code == 0
    assert r.output.splitlines() == ["x^2", "1"]


def test_eval_requires_input():
    r = run("eval")
    assert r.exit_code != 0
    assert "nothing to evaluate" in r.output


def test_eval_json_format():
    r = run("--format", "json", "eval", "-e", "x + x")
    assert r.exit_code == 0
    payload = json.loads(r.output)
    assert payload["schema"] == "sigma.v1"
    assert payload["kind"] == "eval"
    assert payload["result"]["type"] == "series"
    assert payload["result"]["value"]["terms"] == [["x", "2"]]


def test_eval_window_flag():
    long = run("--window", "8", "eval", "-e", "truncate((1-x)^-1, x^20)").output
    assert "x^7" in long and "x^8" not in long


def test_eval_field_flag():
    r = run("--field", "fp:5", "eval", "-e", "truncate((1 - x)^-1, x^2) * 4")
    assert r.exit_code == 0
    assert r.output.strip() == "4 + 4*x + 4*x^2"


def test_eval_bad_field():
    r = run("--field", "real", "eval", "-e", "1")
    assert r.exit_code != 0


def test_eval_parse_error_sets_exit_code():
    r = run("eval", "-e", "1 +")
    assert r.exit_code == 1
    assert "line 1" in r.output


def test_check_suite_text():
    r = run("check", "--suite", "bornology-galois")
    assert r.exit_code == 0
    assert "PASS" in r.output


def test_check_suite_json():
    r = run("--format", "json", "--seed", "3", "--window", "12",
            "check", "--suite", "basis")
    assert r.exit_code == 0
    payload = json.loads(r.output)
    assert payload["schema"] == "sigma.v1"
    assert payload["report"]["verdict"] == "PASS"
    assert payload["report"]["seed"] == 3


def test_check_unknown_suite():
    r = run("check", "--suite", "bogus")
    assert r.exit_code != 0
    assert "unknown suite" in r.output


def test_repl_evaluates_and_exits():
    r = run("repl", input="x + x^2\nexit\n")
    assert r.exit_code == 0
    assert "x + x^2" in r.output


def test_repl_recovers_from_errors():
    r = run("repl", input="1 +\n2 * 3\nexit\n")
    assert r.exit_code == 0
    assert "6" in r.output
    assert "error" in r.output
