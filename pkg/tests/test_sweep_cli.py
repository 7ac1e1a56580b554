"""Tests for the sweep engine and the command-line interface."""

import json

import numpy as np
import pytest

import structsolve as ss
from structsolve import cli
from structsolve.sweep import CSV_COLUMNS, SweepRecord


def _small_config(**kw):
    defaults = dict(n=8, delta_exponents=(2, 3, 4), seed=0)
    defaults.update(kw)
    return ss.SweepConfig(**defaults)


def test_sweep_record_ordering_and_strategies():
    result = ss.run_sweep(_small_config())
    keys = [(r.delta, r.strategy) for r in result.records]
    expected = [
        (10.0**-k, s.value)
        for k in (2, 3, 4)
        for s in (ss.PivotStrategy.PARTIAL_ROW, ss.PivotStrategy.ROW1_COL1)
    ]
    assert keys == expected
    assert result.all_ok


def test_sweep_csv_header_and_determinism():
    r1 = ss.run_sweep(_small_config())
    r2 = ss.run_sweep(_small_config())
    csv1 = ss.records_to_csv(r1.records)
    csv2 = ss.records_to_csv(r2.records)
    assert csv1 == csv2
    header = csv1.splitlines()[0]
    assert header == "delta,strategy,forward_err,residual,cond,g1,g2,g3,bmax_over_bmin,backward_err"
    assert len(csv1.splitlines()) == 1 + len(r1.records)


def test_sweep_failed_record_renders_nan_row():
    rec = SweepRecord(delta=1e-2, strategy="partial_row", ok=False, error="boom")
    row = rec.csv_row().split(",")
    assert row[1] == "partial_row"
    assert row[2] == "nan"
    assert len(row) == len(CSV_COLUMNS)


def test_sweep_summary_slopes_partial_vs_modified():
    result = ss.run_sweep(_small_config(delta_exponents=tuple(range(2, 7))))
    s = result.summary["strategies"]
    assert 1.5 <= s["partial_row"]["slope_forward_err"] <= 2.5
    assert 0.5 <= s["partial_row"]["slope_residual"] <= 1.5
    assert s["row1_col1"]["max_residual_in_window"] <= 1e-13


def test_sweep_random_rhs_mode():
    result = ss.run_sweep(_small_config(rhs="random", delta_exponents=(2, 3)))
    assert result.all_ok
    again = ss.run_sweep(_small_config(rhs="random", delta_exponents=(2, 3)))
    assert ss.records_to_csv(result.records) == ss.records_to_csv(again.records)


def test_sweep_config_validation():
    with pytest.raises(ValueError):
        ss.SweepConfig(n=7)
    with pytest.raises(ValueError):
        ss.SweepConfig(delta_exponents=(0, 1))
    with pytest.raises(ValueError):
        ss.SweepConfig(rhs="zeros")


def _write_json(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


def _identity_toeplitz_doc(n, b):
    a = [0.0] * (2 * n - 1)
    a[n - 1] = 1.0
    return {"toeplitz": {"n": n, "a": a}, "b": b}


def test_cli_solve_identity(tmp_path, capsys):
    path = _write_json(tmp_path / "sys.json", _identity_toeplitz_doc(4, [1.0, 1.0, 1.0, 1.0]))
    assert cli.main(["solve", path]) == 0
    doc = json.loads(capsys.readouterr().out)
    x = np.array([complex(re, im) for re, im in doc["x"]])
    assert np.linalg.norm(x - 1.0) <= 1e-13
    assert doc["report"]["residual"] <= 1e-13


def test_cli_solve_matches_dense_oracle(tmp_path, capsys):
    n = 8
    coeffs = ss.random_toeplitz(n, seed=17)
    T = ss.dense_toeplitz(coeffs)
    b = np.arange(1.0, n + 1.0)
    doc = {"toeplitz": {"n": n, "a": [[v.real, v.imag] for v in coeffs.a]},
           "b": list(b)}
    path = _write_json(tmp_path / "sys.json", doc)
    assert cli.main(["solve", path, "--strategy", "row1col1"]) == 0
    out = json.loads(capsys.readouterr().out)
    x = np.array([complex(re, im) for re, im in out["x"]])
    x_dense = ss.dense_solve(T, b)
    assert np.linalg.norm(x - x_dense) <= 1e-10 * np.linalg.norm(x_dense)


def test_cli_solve_malformed_json(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert cli.main(["solve", str(path)]) == 2
    assert "input error" in capsys.readouterr().err


def test_cli_solve_missing_rhs(tmp_path, capsys):
    doc = _identity_toeplitz_doc(4, [1.0])
    del doc["b"]
    path = _write_json(tmp_path / "norhs.json", doc)
    assert cli.main(["solve", path]) == 2


def test_cli_singular_exit_code(tmp_path, capsys):
    a = [0.5, 0.8, 1.0]
    doc = {
        "cauchy": {
            "t": [1.0, 2.0, 3.0],
            "s": [0.0, 0.5, 1.5],
            "phi": [[v, v] for v in a],
            "psi": [a, [-v for v in a]],
        },
        "b": [1.0, 1.0, 1.0],
    }
    path = _write_json(tmp_path / "singular.json", doc)
    assert cli.main(["solve", path]) == 3
    assert "singular" in capsys.readouterr().err


def test_cli_node_collision_exit_code(tmp_path, capsys):
    doc = {
        "cauchy": {
            "t": [1.0, 2.0],
            "s": [1.0, 3.0],
            "phi": [[1.0], [1.0]],
            "psi": [[1.0, 1.0]],
        },
        "b": [1.0, 1.0],
    }
    path = _write_json(tmp_path / "collide.json", doc)
    assert cli.main(["solve", path]) == 4
    assert "collision" in capsys.readouterr().err


def test_cli_growth_rank_one(tmp_path, capsys):
    gen, nodes = ss.random_cauchy_type(6, 1, seed=3)
    doc = {
        "cauchy": {
            "t": [[v.real, v.imag] for v in nodes.t],
            "s": [[v.real, v.imag] for v in nodes.s],
            "phi": [[[v.real, v.imag] for v in row] for row in gen.phi],
            "psi": [[[v.real, v.imag] for v in row] for row in gen.psi],
        }
    }
    path = _write_json(tmp_path / "gen.json", doc)
    assert cli.main(["growth", path]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert abs(rep["g2"] - 1.0) <= 1e-12


def test_cli_growth_cancellation_file(tmp_path, capsys):
    gen, nodes = ss.cancellation_cauchy(8, f_norm=1e-8, seed=4)
    doc = {
        "cauchy": {
            "t": [v.real for v in nodes.t],
            "s": [v.real for v in nodes.s],
            "phi": [[v.real for v in row] for row in gen.phi],
            "psi": [[v.real for v in row] for row in gen.psi],
        }
    }
    path = _write_json(tmp_path / "cancel.json", doc)
    assert cli.main(["growth", path]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["g3"] >= 1e6


def test_cli_growth_toeplitz_node_spread(tmp_path, capsys):
    coeffs = ss.random_toeplitz(8, seed=5)
    doc = {"toeplitz": {"n": 8, "a": [v.real for v in coeffs.a]}}
    path = _write_json(tmp_path / "toe.json", doc)
    assert cli.main(["growth", path]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["bmax_over_bmin"] < 5.094


def test_cli_factor_output(tmp_path):
    path = _write_json(
        tmp_path / "sys.json", _identity_toeplitz_doc(4, [1.0, 0.0, 0.0, 0.0])
    )
    out_path = tmp_path / "factor.json"
    assert cli.main(["factor", path, "--out", str(out_path)]) == 0
    doc = json.loads(out_path.read_text())
    assert doc["n"] == 4
    assert doc["reconstruction"]["rel_err"] <= 1e-12
    assert len(doc["L"]) == 4
    assert sorted(doc["row_perm"]) == [0, 1, 2, 3]


def test_cli_sweep_csv_and_exit(tmp_path):
    out_path = tmp_path / "sweep.csv"
    code = cli.main(
        ["sweep", "--n", "8", "--delta-exp-min", "2", "--delta-exp-max", "4",
         "--out", str(out_path)]
    )
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0] == "delta,strategy,forward_err,residual,cond,g1,g2,g3,bmax_over_bmin,backward_err"
    assert len(lines) == 1 + 3 * 2


def test_cli_sweep_json_and_env_seed(tmp_path, monkeypatch):
    monkeypatch.setenv("STRUCTSOLVE_SEED", "7")
    out_path = tmp_path / "sweep.json"
    code = cli.main(
        ["sweep", "--delta-exp-min", "2", "--delta-exp-max", "3",
         "--strategy", "partial", "--rhs", "random",
         "--format", "json", "--out", str(out_path)]
    )
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert len(doc["records"]) == 2
    assert "partial_row" in doc["summary"]["strategies"]


def test_cli_sweep_byte_identical_runs(tmp_path):
    args = ["sweep", "--delta-exp-min", "2", "--delta-exp-max", "5"]
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main(args + ["--out", str(p1)]) == 0
    assert cli.main(args + ["--out", str(p2)]) == 0
    assert p1.read_bytes() == p2.read_bytes()
