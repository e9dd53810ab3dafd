import json
import subprocess
import sys

import pytest

from toeplitz_qf.cli import main


def run(capsys, *argv):
    code = main([*argv, "--no-timing"])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), err


def test_mul(capsys):
    code, rep, _ = run(capsys, "mul", "u", "v")
    assert code == 0 and rep["payload"]["result"] == "1" and rep["verdict"] == "computed"
    assert rep["runtime_ms"] == 0


def test_norm_and_d1(capsys):
    _, rep, _ = run(capsys, "norm", "--family", "smooth", "--k", "1", "v^2*u^3")
    assert rep["payload"]["norm"] == "12"
    _, rep, _ = run(capsys, "d1", "v", "--norm-family", "smooth", "--k", "1")
    assert rep["payload"]["d"] == "(-1 * v (x) v ; 1 * e (x) 1)" and rep["payload"]["norm"] == "9"


def test_dominated(capsys):
    code, rep, _ = run(capsys, "check", "dominated", "--left", "conv:smooth", "--right", "smooth",
                       "--horizon", "200", "--index-bound", "5")
    assert code == 0
    assert [(w["q"], w["C"]) for w in rep["witness"]["per_generator"]] == [(2 * k + 1, "1") for k in range(1, 6)]


def test_counterexample_exit_code(capsys):
    code, rep, _ = run(capsys, "check", "monotone", "--family", "formal")
    assert code == 1 and rep["counterexample"]["i"] == 0


def test_no_witness_exit_code(capsys, tmp_path):
    table = tmp_path / "flat.json"
    table.write_text(json.dumps([[n, "1"] for n in range(60)]))
    code, rep, _ = run(capsys, "check", "kothe", "--family", str(table), "--horizon", "50")
    assert code == 0
    code, rep, _ = run(capsys, "check", "dominated", "--left", "conv:smooth", "--right", "smooth",
                       "--horizon", "200", "--index-bound", "3", "--right-index-bound", "3")
    assert code == 3 and rep["verdict"] == "no_witness_within_bounds"


@pytest.mark.parametrize(
    "argv",
    [
        ["mul", "v^-1", "u"],
        ["check", "kothe", "--family", "nope"],
        ["bogus"],
        ["norm", "v"],
        ["check", "dominated", "--left", "smooth"],
    ],
)
def test_usage_errors(capsys, argv):
    code, rep, err = run(capsys, *argv)
    assert code == 2 and rep is None and err.startswith("error:")


def test_table_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("[[0, 1],")
    assert run(capsys, "construct-weight", "--table", str(bad), "--horizon", "2")[0] == 2
    short = tmp_path / "short.json"
    short.write_text(json.dumps([[n, str(2**n)] for n in range(9)]))
    code, rep, _ = run(capsys, "construct-weight", "--table", str(short), "--horizon", "3")
    assert code == 0 and rep["payload"]["p_prime"] == [1, 4, 16, 64]
    assert run(capsys, "construct-weight", "--table", str(short), "--horizon", "5")[0] == 2
    assert run(capsys, "check", "monotone", "--family", str(short), "--horizon", "20")[0] == 2


def test_split(capsys, tmp_path):
    xi = tmp_path / "xi.json"
    xi.write_text(json.dumps({"xi": [{"monomial": [1, 0], "value": "v*u"}]}))
    code, rep, _ = run(capsys, "split", "--xi", str(xi), "--samples", "30")
    assert code == 0 and rep["payload"]["b_prime"] == "(v, -v*u)"
    xi.write_text(json.dumps({"xi": [{"monomial": [0, 0], "value": "v"}]}))
    assert run(capsys, "split", "--xi", str(xi))[0] == 2


def test_oracle(capsys):
    code, rep, _ = run(capsys, "oracle", "--dim", "20", "--samples", "30", "--degree", "6", "--seed", "7")
    assert code == 0 and rep["verdict"] == "verified"


def test_reports_are_deterministic(capsys):
    argv = ["check", "leibniz", "--samples", "40", "--degree", "4", "--seed", "9"]
    first = run(capsys, *argv)
    assert first == run(capsys, *argv)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "toeplitz_qf", "mul", "v^2*u - 3*e", "v", "--no-timing"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["payload"]["result"] == "v^2"
