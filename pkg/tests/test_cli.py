import json
import subprocess
import sys

import numpy as np
import pytest

from hamlocality.cli import dumps, main
from hamlocality.linalg import write_matrix

from conftest import CNOT


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--output", "json")
    assert code == 0
    return json.loads(out)


def test_analyze_cnot(capsys):
    code, out, _ = run(capsys, "analyze", "cnot")
    assert code == 0
    rows = {line.split()[0]: line.split()[1:] for line in out.splitlines() if line[:2] in ("II", "ZI", "IX", "ZX")}
    assert rows == {
        "II": ["+1.000000", "+0.785398"],
        "ZI": ["-1.000000", "-0.785398"],
        "IX": ["-1.000000", "-0.785398"],
        "ZX": ["+1.000000", "+0.785398"],
    }
    assert "order: 2" in out.splitlines()


def test_analyze_toffoli(capsys):
    code, out, _ = run(capsys, "analyze", "toffoli")
    assert code == 0
    assert "order: 3" in out.splitlines()
    assert any(line.startswith("ZZX") for line in out.splitlines())
    res = run_json(capsys, "analyze", "toffoli")["result"]
    assert res["paper"]["t"] == pytest.approx(np.pi / 8)
    assert res["paper"]["residual"] < 1e-10
    assert {"string": "ZZX", "coeff": -1.0} in res["paper"]["pauli"]


def test_analyze_identity(capsys):
    code, out, _ = run(capsys, "analyze", "identity")
    assert code == 0
    assert "order: 0" in out
    res = run_json(capsys, "analyze", "identity")["result"]
    assert res["principal_pauli"] == [] and res["qubits"] == 1


def test_analyze_file_gate(capsys, tmp_path):
    path = tmp_path / "cnot.txt"
    write_matrix(path, CNOT)
    res = run_json(capsys, "analyze", f"file:{path}")["result"]
    assert res["order"] == 2
    assert "paper" not in res


def test_file_gate_not_unitary(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    write_matrix(path, 2 * np.eye(2))
    code, _, err = run(capsys, "analyze", f"file:{path}")
    assert code == 2
    assert "residual" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "analyze", f"file:{tmp_path / 'nope.txt'}")
    assert code == 2 and "gate" in err


def test_branches(capsys):
    res = run_json(capsys, "branches", "cnot", "--bound", "0")["result"]
    assert res["min_weight"] == 2
    assert res["argmin_integers"] == [0, 0, 0, 0]
    res = run_json(capsys, "branches", "identity", "--bound", "0")["result"]
    assert res["min_weight"] == 0
    for key in ("gate", "bound", "basis_samples", "branches_examined", "min_weight", "argmin_integers", "argmin_pauli", "seed"):
        assert key in res


def test_branches_guard(capsys):
    code, _, err = run(capsys, "branches", "ccx:4", "--bound", "3")
    assert code == 2 and "--bound" in err
    code, _, err = run(capsys, "branches", "cnot", "--bound", "-1")
    assert code == 2 and "--bound" in err


def test_variational(capsys):
    doc = run_json(capsys, "variational", "cnot", "--locality", "2", "--restarts", "3", "--seed", "1")
    res = doc["result"]
    assert res["best_distance"] < 1e-6
    assert res["parameter_count"] == 16 and len(res["history"]) == 3
    assert doc["config"]["locality"] == 2


def test_variational_bad_locality(capsys):
    code, _, err = run(capsys, "variational", "cnot", "--locality", "5")
    assert code == 2 and "--locality" in err


def test_couplings(capsys):
    res = run_json(capsys, "couplings", "--n", "2", "--alpha", "0,0,0,1")["result"]
    assert res["epsilon"] == [1.0, -1.0, -1.0, 1.0]
    assert res["labels"] == ["II", "IZ", "ZI", "ZZ"]
    res = run_json(capsys, "couplings", "--n", "2", "--epsilon", "1,1,1,1")["result"]
    assert res["alpha"] == [1.0, 0.0, 0.0, 0.0]


def test_couplings_roundtrip(capsys):
    alpha = np.random.default_rng(3).normal(size=8)
    text = ",".join(format(a, ".17g") for a in alpha)
    # --flag=value form because lists may start with a minus sign
    eps = run_json(capsys, "couplings", "--n", "3", f"--alpha={text}")["result"]["epsilon"]
    back = run_json(capsys, "couplings", "--n", "3", "--epsilon=" + ",".join(format(e, ".17g") for e in eps))
    assert np.abs(np.array(back["result"]["alpha"]) - alpha).max() < 1e-12


@pytest.mark.parametrize(
    "argv,flag",
    [
        (["couplings", "--n", "2", "--alpha", "1,2,3"], "--alpha"),
        (["couplings", "--n", "2"], "--alpha/--epsilon"),
        (["couplings", "--n", "2", "--alpha", "1,1,1,1", "--epsilon", "1,1,1,1"], "--alpha/--epsilon"),
        (["couplings", "--n", "2", "--epsilon", "1,x,1,1"], "--epsilon"),
        (["couplings", "--alpha", "1,1"], "--n"),
        (["analyze", "swap"], "gate"),
    ],
)
def test_usage_errors(capsys, argv, flag):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert flag in err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["branches", "cnot", "--bound", "x"])
    assert exc.value.code == 2


def test_numerical_failure_exit_3(capsys, monkeypatch):
    from hamlocality import cli
    from hamlocality.linalg import ConvergenceFailure

    def boom(*args, **kwargs):
        raise ConvergenceFailure("did not converge")

    monkeypatch.setattr(cli, "principal_log", boom)
    code, _, err = run(capsys, "analyze", "cnot")
    assert code == 3 and "numerical" in err


def test_json_schema_stable(capsys):
    for argv in (["analyze", "cnot"], ["branches", "cnot", "--bound", "0"], ["couplings", "--n", "1", "--alpha", "1,0"]):
        doc = run_json(capsys, *argv)
        assert list(doc) == ["command", "config", "result"]
        assert doc["command"] == argv[0]


def test_out_file(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "branches", "cnot", "--bound", "1", "--output", "json", "--out", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["result"]["min_weight"] == 2


def test_dumps_17_digits():
    assert dumps({"x": 0.1, "y": 1, "z": [np.float64(1 / 3)], "w": float("nan")}) == (
        '{"x": 0.10000000000000001, "y": 1, "z": [0.33333333333333331], "w": null}\n'
    )
    assert json.loads(dumps({"x": 1e-20, "y": 2.0}))["x"] == 1e-20


def test_byte_identical_reports(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        main(["branches", "toffoli", "--bound", "1", "--samples", "3", "--seed", "7", "--output", "json", "--out", str(path)])
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hamlocality", "couplings", "--n", "1", "--alpha", "0,1"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert proc.stdout.splitlines()[2].split() == ["1", "Z", "1", "-1"]
