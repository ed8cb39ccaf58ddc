import io
import json
import math

import pytest

from hilferbvp import cli


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out)
    return code, out.getvalue()


EX1_CONFIG = {
    "a": 0,
    "b": 1,
    "alpha": 1.75,
    "gamma": 2,
    "q": "t^2",
    "f": "cosh(u)",
    "r1": 0.0833,
    "r2": 0.125,
    "quadrature": {"tol": 1e-10},
    "output": {"format": "csv", "path": "out.csv"},
}


def write_config(tmp_path, data):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(data))
    return str(path)


def test_bound_lyapunov_classical():
    code, text = run("bound", "--kind", "lyapunov", "--alpha", "2", "--gamma", "2", "--q", "9.87")
    assert code == 0
    (rep,) = json.loads(text)
    assert rep["verdict"] == "necessary-condition-holds"
    assert rep["lhs"] == pytest.approx(9.87) and rep["rhs"] == pytest.approx(4.0)


def test_bound_hw_classical():
    code, text = run("bound", "--kind", "hw", "--alpha", "2", "--gamma", "2", "--b", "3", "--q", "1")
    (rep,) = json.loads(text)
    assert code == 0
    assert rep["lhs"] == pytest.approx(27 / 6, rel=1e-13) and rep["rhs"] == pytest.approx(3.0)


def test_nonlinear_needs_omega(capsys):
    code, _ = run("bound", "--kind", "nonlinear", "--alpha", "1.75", "--q", "t^2", "--f", "cosh(u)")
    assert code == 1
    assert "omega" in capsys.readouterr().err


def test_verdict_does_not_change_exit_code():
    code, text = run("bound", "--q", "0")
    assert code == 0 and json.loads(text)[0]["verdict"] == "nontrivial-solution-excluded"


def test_config_and_flag_override(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    path = write_config(tmp_path, EX1_CONFIG)
    code, text = run("theta", "--config", path)
    assert code == 0
    res = json.loads(text)
    assert res["theta_pair"]["theta"] == pytest.approx(13.1307468, rel=1e-7)
    assert res["existence"]["status"] == "hypothesis-A-fails"
    code, text = run("theta", "--config", path, "--q", "t")
    assert json.loads(text)["theta_pair"]["theta"] == pytest.approx(math.gamma(4.75) / math.gamma(3), rel=1e-9)


def test_unknown_keys_rejected(tmp_path, capsys):
    assert run("solve", "--config", write_config(tmp_path, {"alpha": 1.5, "gamma": 1.5, "tol": 1}))[0] == 1
    assert "tol" in capsys.readouterr().err
    assert run("solve", "--config", write_config(tmp_path, {"quadrature": {"order": 3}}))[0] == 1
    assert run("solve", "--config", write_config(tmp_path, {"alpha": "x"}))[0] == 1
    assert run("solve", "--config", str(tmp_path / "missing.json"))[0] == 1


def test_bad_expression_and_parameters():
    assert run("solve", "--q", "t^")[0] == 1
    assert run("bound", "--alpha", "2.5")[0] == 1
    assert run("bound", "--a", "1", "--b", "0")[0] == 1


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        cli.main(["nonsense"], io.StringIO())
    assert info.value.code == 1


def test_solve_writes_csv_deterministically(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    path = write_config(tmp_path, EX1_CONFIG)
    code, text = run("solve", "--config", path)
    assert code == 0
    summary = json.loads(text)
    assert summary["converged"] and summary["in_window"] is False
    assert summary["residual_certified"] <= 1e-5
    first = (tmp_path / "out.csv").read_bytes()
    assert first.startswith(b"t,u\n") and b"\r" not in first
    run("solve", "--config", path)
    assert (tmp_path / "out.csv").read_bytes() == first
    rows = first.decode().splitlines()[1:]
    assert len(rows) == 401 and rows[0] == "0,0"


def test_solve_zero_and_json_output(tmp_path):
    target = tmp_path / "zero.json"
    code, text = run("solve", "--q", "0", "--format", "json", "-o", str(target))
    assert code == 0
    payload = json.loads(target.read_text())
    assert payload["norm"] == 0.0 and payload["residual_certified"] == 0.0
    assert set(payload["u"]) == {0.0}


def test_solve_divergence_exit_code_and_last_iterate(tmp_path):
    target = tmp_path / "div.csv"
    code, text = run("solve", "--q", "10", "--f", "exp(u)", "-o", str(target))
    assert code == 2
    assert json.loads(text)["diverged"] is True
    assert target.exists()


def test_eigen_table_and_curve(tmp_path):
    target = tmp_path / "curve.csv"
    code, text = run("eigen", "--alpha", "2", "--gamma", "2", "--k-max", "3", "-o", str(target))
    assert code == 0
    assert "9.8696044" in text and "39.478417" in text and "88.826439" in text
    lines = target.read_text().splitlines()
    assert lines[0] == "lambda,ml_value" and len(lines) > 100
    values = [float(line.split(",")[1]) for line in lines[1:]]
    assert min(values) < 0 < max(values)


def test_eigen_bounds_below_first_root():
    code, text = run("eigen", "--alpha", "1.75", "--gamma", "2", "--k-max", "2")
    assert code == 0
    rows = [line.split() for line in text.splitlines()[2:4]]
    assert all(r[2] == "True" and r[3] == "True" for r in rows)


def test_ml_plot_stdout():
    code, text = run("ml-plot", "--alpha", "2", "--gamma", "2", "--lambda-max", "10", "--n-samples", "4")
    lines = text.splitlines()
    assert code == 0 and lines[0] == "lambda,ml_value" and len(lines) == 6
    assert float(lines[1].split(",")[1]) == 1.0


def test_ml_plot_three_halves_stays_positive():
    code, text = run("ml-plot", "--alpha", "1.5", "--gamma", "2", "--lambda-max", "80", "--n-samples", "400")
    values = [float(line.split(",")[1]) for line in text.splitlines()[1:]]
    assert code == 0 and min(values) > 0


def test_reproduction_report(tmp_path):
    target = tmp_path / "report.json"
    code, text = run("verify-paper", "--json", str(target))
    assert code == 0
    assert "DISCREPANCY" in text
    rows = {r["quantity"]: r for r in json.loads(target.read_text())}
    assert rows["classical Lyapunov bound 4/(b-a), [0,1]"]["status"] == "ok"
    assert rows["theta (example 1)"]["status"] == "DISCREPANCY"
    assert rows["theta (example 1)"]["published"] == 8.9
    assert rows["r (example 1), first two decimals"]["status"] == "ok"
    assert rows["classical eigenvalue (pi*3)^2"]["status"] == "ok"


def test_json_has_no_nan():
    assert cli._json({"x": float("nan"), "y": [float("inf"), 1.0]}) == cli._json({"x": None, "y": [None, 1.0]})


def test_csv_precision():
    text = cli.csv_text(("x",), [(1 / 3,)])
    assert float(text.splitlines()[1]) == 1 / 3
