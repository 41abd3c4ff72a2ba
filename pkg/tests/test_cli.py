import json
import subprocess
import sys

import numpy as np
import pytest

from udaugs import cli
from udaugs.cli import RunConfig, main, run, to_json


def _run_json(argv, tmp_path, name="out.json"):
    out = tmp_path / name
    code = main(argv + ["--out", str(out)])
    return code, json.loads(out.read_text())


def _strip(report):
    return {k: v for k, v in report.items() if k != "wall_time_s"}


def test_dqls_command(tmp_path):
    code, rep = _run_json(["dqls", "--state", "psi6", "--ns", "all2:6"], tmp_path)
    assert code == 0
    assert rep["dimension"] == 18
    assert np.array(rep["basis"]).shape == (18, 64)
    assert rep["tolerances"]["tol_abs"] == 1e-7
    assert rep["inputs"] == {"command": "dqls", "ns": "all2:6", "state": "psi6"}


def test_default_structure(tmp_path):
    code, rep = _run_json(["dqls", "--state", "w:4"], tmp_path)
    assert code == 0 and rep["inputs"]["ns"] == "nn:4" and rep["dimension"] == 2


def test_uda_and_dual(tmp_path):
    code, rep = _run_json(["uda", "--state", "ghz:3", "--ns", "nn:3"], tmp_path)
    assert code == 0 and rep["alpha"] < 1e-4 and rep["is_uda"] is False
    code, rep = _run_json(["dual", "--state", "zero:3", "--ns", "nn:3"], tmp_path)
    assert code == 0 and abs(rep["beta"] - 1) < 1e-6
    assert "heuristic" in rep["attainment_rule"]


def test_ugs_and_witness(tmp_path):
    code, rep = _run_json(["ugs", "--state", "w:3", "--ns", "nn:3"], tmp_path)
    assert code == 0 and rep["is_ugs"] is True
    code, rep = _run_json(["witness", "--state", "psi6"], tmp_path)
    assert code == 0 and rep["certified"] and rep["witness"] == "w6"
    code, rep = _run_json(["witness", "--state", "gw:3:0.5,0.5,0.5,0.5", "--ns", "nn:3"], tmp_path)
    assert code == 0 and rep["certified"] and rep["witness"] == "gw"
    code, rep = _run_json(
        ["witness", "--state", "gw:3:0.5,0.5,0.5,0.5", "--ns", "nn:3", "--convention", "min"], tmp_path
    )
    assert code == 0 and rep["certified"] is False


def test_symmetrize_and_suite(tmp_path):
    code, rep = _run_json(["symmetrize", "--ns", "all2:4", "--seed", "3"], tmp_path)
    assert code == 0 and rep["group_order"] == 8
    assert rep["max_commutator_norm"] < 1e-10 and rep["ql_residual"] < 1e-10
    code, rep = _run_json(["suite", "--ns", "nn:3", "--trials", "5"], tmp_path)
    assert code == 0 and rep["violations"] == 0


def test_parse_errors(tmp_path):
    code, rep = _run_json(["dqls", "--state", "w:x"], tmp_path)
    assert code == cli.EXIT_PARSE and "cannot parse state" in rep["error"]
    code, rep = _run_json(["dqls", "--state", "w:3", "--ns", "nn:4"], tmp_path)
    assert code == cli.EXIT_PARSE
    code, rep = _run_json(["dqls", "--state", "w:4", "--ns", "[[1,2],[3,4]]"], tmp_path)
    assert code == cli.EXIT_PARSE
    assert run(RunConfig("bogus"))[0] == cli.EXIT_PARSE
    with pytest.raises(SystemExit):
        main(["bogus"])


def test_solver_failure_exit_code(tmp_path):
    code, rep = _run_json(["uda", "--state", "psi6", "--max-iter", "3"], tmp_path)
    assert code == cli.EXIT_SOLVER
    assert rep["converged"] is False and "error" in rep


def test_counterexample(tmp_path):
    code, rep = _run_json(["counterexample"], tmp_path)
    assert code == 0
    assert all(rep["verdicts"].values())


def test_counterexample_contradiction(tmp_path, monkeypatch):
    from udaugs.witness import gw_witness

    # a witness that cannot certify the six-qubit state
    monkeypatch.setattr(cli, "w6_witness", lambda: gw_witness(0.5, 0.1, 6))
    code, rep = _run_json(["counterexample"], tmp_path)
    assert code == cli.EXIT_CONTRADICTION
    assert rep["verdicts"]["witness_certified"] is False


def test_deterministic_json(tmp_path):
    argv = ["uda", "--state", "w:4", "--ns", "nn:4:periodic", "--seed", "5"]
    _, a = _run_json(argv, tmp_path, "a.json")
    _, b = _run_json(argv, tmp_path, "b.json")
    assert to_json(_strip(a)) == to_json(_strip(b))
    text = to_json({"b": 1.0 / 3, "a": float("inf"), "c": np.float64(2.5)})
    assert text.index('"a"') < text.index('"b"')
    assert json.loads(text) == {"a": "inf", "b": 0.333333333333, "c": 2.5}


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "udaugs", "dqls", "--state", "w:3", "--ns", "nn:3"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["dimension"] == 2
    assert "DQLS dimension 2" in proc.stderr
