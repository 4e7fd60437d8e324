import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from cyclic_ybe import cli
from cyclic_ybe.cyclic import bn_gate, r_bruteforce, r_closed_form, swap_gate
from cyclic_ybe.families import BnPhi, build_gate
from cyclic_ybe.verification import verify_matrix


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


def test_gate_bn3():
    code, payload = run_json("gate", "--family", "bn", "--n", "3")
    assert code == 0
    assert payload["checks"]["ybeBraidedResidual"] <= 1e-12
    assert np.array_equal(cli.decode_matrix(payload["matrix"]), bn_gate(3))
    assert payload["family"] == {"tag": "bn", "params": {"n": 3}}


def test_gate_barenco_fails_ybe():
    code, payload = run_json("gate", "--family", "barenco", "--alpha", "0.7", "--theta", "1.1", "--phi", "0.4")
    assert code == 1
    assert payload["checks"]["ybeBraidedResidual"] > 1e-6
    assert payload["passed"] is False


def test_gate_bad_order(capsys):
    code, text = run("gate", "--family", "bn", "--n", "1")
    assert code == 2 and text == ""
    assert "n must be >= 2" in capsys.readouterr().err


@pytest.mark.parametrize("argv, field", [
    (["gate", "--family", "bn", "--n", "three"], "--n"),
    (["gate", "--family", "bnphi", "--n", "3"], "--phi"),
    (["gate", "--family", "general", "--alpha", "1+", "--beta", "0", "--q", "1"], "--alpha"),
    (["gate", "--family", "continuous", "--t", "0", "--theta", "nan", "--phi", "0"], "--theta"),
])
def test_parse_failures_name_the_field(argv, field, capsys):
    assert run(*argv)[0] == 2
    assert field in capsys.readouterr().err


def test_gate_general_complex_parameters():
    code, payload = run_json("gate", "--family", "general", "--alpha", "0.6", "--beta", "0.8j", "--q", "1")
    assert code == 0
    assert payload["family"]["params"]["beta"] == [0.0, 0.8]


def test_gate_csv():
    code, text = run("gate", "--family", "bn", "--n", "4", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == 0 and len(rows) == 16
    assert float(rows[3]["im"]) == -1.0


def test_verify_bnphi_passes():
    code, payload = run_json("verify", "--family", "bnphi", "--n", "7", "--phi", "0.9")
    assert code == 0
    assert all(payload["checks"].values())
    assert payload["entangling"] is True


def test_verify_swap_matrix_file(tmp_path):
    path = tmp_path / "swap.json"
    path.write_text(json.dumps(cli.encode_matrix(swap_gate())))
    code, payload = run_json("verify", "--matrix", str(path))
    assert code == 0
    assert payload["checks"]["braidedYbe"] and payload["entangling"] is False
    assert payload["witness"] is None


def test_verify_graded_not_entangling():
    code, payload = run_json("verify", "--family", "graded", "--n", "4", "--d0", "0", "--d1", "2")
    assert code == 0
    assert payload["checks"]["braidedYbe"] and payload["entangling"] is False


@pytest.mark.parametrize("content", ['{"rows": 4}', "not json", '{"rows": 2, "cols": 2, "entries": [[[1,0],[0,0]],[[0,0],[1,0]]]}',
                                     '{"rows": 4, "cols": 4, "entries": [[[1, 0]]]}'])
def test_verify_malformed_matrix(tmp_path, content):
    path = tmp_path / "bad.json"
    path.write_text(content)
    assert run("verify", "--matrix", str(path))[0] == 2


def test_verify_missing_file_and_both_sources(tmp_path):
    assert run("verify", "--matrix", str(tmp_path / "nope.json"))[0] == 2
    assert run("verify")[0] == 2
    assert run("verify", "--family", "bn", "--n", "3", "--matrix", "x.json")[0] == 2


@pytest.mark.parametrize("argv", [
    ["--family", "bn", "--n", "5"],
    ["--family", "bnphi", "--n", "9", "--phi", "-2.1"],
    ["--family", "continuous", "--t", "0.3", "--theta", "0.4", "--phi", "1.7"],
    ["--family", "graded", "--n", "7", "--d0", "2", "--d1", "5"],
    ["--family", "barenco", "--alpha", "0.7", "--theta", "1.1", "--phi", "0.4"],
    ["--family", "general", "--alpha", "0.3+0.2j", "--beta=-1.1j", "--q", "0.5-0.5j"],
])
def test_round_trip_gate_to_verify(tmp_path, argv):
    _, gate_payload = run_json("gate", *argv)
    path = tmp_path / "gate.json"
    path.write_text(json.dumps(gate_payload))
    _, from_file = run_json("verify", "--matrix", str(path))
    _, direct = run_json("verify", *argv)
    assert np.array_equal(cli.decode_matrix(gate_payload), build_gate(cli.family_from_args(_ns(argv))))
    for key in ("unitarityResidual", "ybeBraidedResidual", "ybeAlgebraicResidual", "pauliReconstructionResidual"):
        assert abs(from_file[key] - direct[key]) <= 1e-14
    assert abs(from_file["unitarityResidual"] - gate_payload["checks"]["unitarityResidual"]) <= 1e-14
    assert abs(from_file["ybeBraidedResidual"] - gate_payload["checks"]["ybeBraidedResidual"]) <= 1e-14


def _ns(argv):
    parser = cli.build_parser()
    args = parser.parse_args(["gate", *argv])
    return args


def test_encode_decode_is_lossless():
    rng = np.random.default_rng(0)
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    text = json.dumps(cli.encode_matrix(m))
    assert np.array_equal(cli.decode_matrix(json.loads(text)), m)


def test_determinism():
    for argv in (["verify", "--family", "bn", "--n", "4", "--samples", "300", "--seed", "5"],
                 ["sweep", "--kind", "n-range", "--from", "2", "--to", "6"],
                 ["berry", "--theta", "0.5", "--branch", "minus", "--steps", "1000"]):
        assert run(*argv) == run(*argv)


def test_seed_does_not_move_residuals():
    cz = ["--family", "graded", "--n", "5", "--d0", "1", "--d1", "3"]
    a = run_json("verify", *cz, "--seed", "1")[1]
    b = run_json("verify", *cz, "--seed", "2")[1]
    assert a["ybeBraidedResidual"] == b["ybeBraidedResidual"]
    assert a["entangling"] and b["entangling"]


def test_sweep_n_range():
    code, text = run("sweep", "--kind", "n-range", "--from", "2", "--to", "32")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == 0 and len(rows) == 31
    assert list(rows[0]) == cli.SWEEP_COLUMNS["n-range"]
    for row in rows:
        n = int(row["n"])
        assert float(row["oracle_distance"]) <= 1e-11
        assert float(row["oracle_distance"]) == pytest.approx(float(np.linalg.norm(r_bruteforce(n) - r_closed_form(n))))
        assert (row["entangling"] == "True") == (n not in (2, 4))


def test_sweep_theta_grid():
    code, text = run("sweep", "--kind", "theta-grid", "--steps", "100")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == 0 and len(rows) == 100
    for row in rows:
        theta = float(row["theta"])
        for col in ("concurrence_00", "concurrence_01", "concurrence_10", "concurrence_11"):
            assert float(row[col]) == pytest.approx(abs(math.sin(2 * theta)), abs=1e-12)
        assert float(row["eigen_concurrence"]) == pytest.approx(abs(math.cos(theta)), abs=1e-12)
        assert float(row["fd_distance"]) <= 1e-8


def test_sweep_x_grid(tmp_path):
    out = tmp_path / "x.csv"
    code, text = run("sweep", "--kind", "x-grid", "--n", "3", "--from", "-2", "--to", "2", "--steps", "40",
                     "--out", str(out))
    assert code == 0 and text == ""
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 40
    a, b = math.cos(2 * math.pi / 3), math.sin(2 * math.pi / 3)
    for row in rows:
        x = float(row["x"])
        want = a * a * (x - 1) ** 4 + b * b * (x * x - 1) ** 2
        assert float(row["rho"]) == pytest.approx(want, abs=1e-12)
        assert float(row["rho_formula"]) == pytest.approx(want, abs=1e-12)
        assert float(row["unitarity_residual"]) <= 1e-13


def test_sweep_json_format():
    code, payload = run_json("sweep", "--kind", "n-range", "--from", "3", "--to", "4", "--format", "json")
    assert code == 0 and [r["n"] for r in payload["rows"]] == [3, 4]


def test_sweep_rejects_x_equal_one():
    assert run("sweep", "--kind", "x-grid", "--n", "3", "--from", "0", "--to", "2", "--steps", "3")[0] == 2
    assert run("sweep", "--kind", "x-grid")[0] == 2


def test_sweep_help_lists_columns(capsys):
    assert run("sweep", "--help")[0] == 0
    help_text = capsys.readouterr().out
    for columns in cli.SWEEP_COLUMNS.values():
        for name in columns:
            assert name in help_text


def test_berry_commands():
    code, payload = run_json("berry", "--theta", "0", "--branch", "plus", "--steps", "100000")
    assert code == 0 and payload["closedForm"] == -math.pi and payload["difference"] <= 1e-6
    code, payload = run_json("berry", "--theta", "0.5235987755982988", "--branch", "plus", "--steps", "100000")
    assert code == 0 and abs(payload["numeric"] + 1.5 * math.pi) <= 1e-6
    assert run("berry", "--theta", "1.5707963267948966", "--branch", "minus")[0] == 2
    # too coarse a loop misses the tolerance
    assert run("berry", "--theta", "1.2", "--branch", "plus", "--steps", "100")[0] == 1


def test_hamiltonian_commands():
    code, payload = run_json("hamiltonian", "--kind", "phi", "--theta", "0.7853981633974483", "--phi", "0", "--rate", "1")
    assert code == 0 and payload["fdDistance"] <= 1e-8
    assert payload["eigenResidual"] <= 1e-10 and payload["decompositionResidual"] <= 1e-12
    code, payload = run_json("hamiltonian", "--kind", "phi", "--theta", "0", "--phi", "0.3")
    assert code == 0
    assert not np.any(cli.decode_matrix(payload["closedForm"]))
    code, payload = run_json("hamiltonian", "--kind", "theta", "--rate", "1", "--phi", "0")
    assert code == 0 and payload["eigenvalues"] == [1.0, 1.0, -1.0, -1.0]
    assert run("hamiltonian", "--kind", "phi", "--delta", "0")[0] == 2


def test_usage_errors():
    assert run()[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("gate", "--family", "bn", "--n", "3", "--tol", "abc")[0] == 2
    assert run("gate", "--family", "nope")[0] == 2


def test_global_flags_before_and_after_subcommand():
    a = run("--tol", "1e-3", "gate", "--family", "barenco", "--alpha", "0.7", "--theta", "1.1", "--phi", "0.4")
    b = run("gate", "--family", "barenco", "--alpha", "0.7", "--theta", "1.1", "--phi", "0.4", "--tol", "1e-3")
    assert a == b and a[0] == 1
    assert run("--tol", "10", "gate", "--family", "barenco", "--alpha", "0.7", "--theta", "1.1", "--phi", "0.4")[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cyclic_ybe", "gate", "--family", "bnphi", "--n", "5", "--phi", "1.3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    got = cli.decode_matrix(json.loads(proc.stdout))
    assert np.array_equal(got, BnPhi(5, 1.3).matrix())
    proc = subprocess.run([sys.executable, "-m", "cyclic_ybe", "verify", "--matrix", "-"],
                          input=proc.stdout, capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["ybeBraidedResidual"] == verify_matrix(got).braided_ybe_residual
