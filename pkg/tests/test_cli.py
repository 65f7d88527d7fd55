import json

import numpy as np
import pytest

from stabkit import cli, linalg, permutation_matrix
from stabkit.linalg import tensor_product


def _run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


def test_xs_verify_json(capsys):
    code, out = _run(capsys, ["xs-verify"])
    assert code == 0
    rep = json.loads(out)
    assert rep["passed"] and rep["seed"] == 0
    assert "tolerance" in rep


def test_verify_spectrum(capsys):
    code, out = _run(capsys, ["verify-spectrum", "--n", "3", "--trials", "10"])
    assert code == 0
    rep = json.loads(out)
    assert rep["max_deviation"] < 1e-8


def test_search_counts(capsys):
    code, out = _run(capsys, ["search", "--qubits", "2", "--ops", "2"])
    assert code == 0
    assert json.loads(out)["class_count"] == 4


def test_table_passes_and_embeds_seed(capsys):
    code, out = _run(capsys, ["--seed", "9", "table", "I"])
    assert code == 0
    rep = json.loads(out)
    assert rep["passed"] and rep["seed"] == 9 and "tolerance" in rep


def test_conjecture_scan(capsys):
    code, out = _run(capsys, ["conjecture-scan", "--qubits", "2", "--samples", "30"])
    assert code == 0
    rep = json.loads(out)
    assert rep["counts"]["other"] == 0


def test_gk_sim_and_compare(capsys, tmp_path):
    path = tmp_path / "c.circ"
    path.write_text("H 0\nCX 0 1\nM 0\nM 1\n")
    code, out = _run(capsys, ["gk-sim", "--circuit", str(path), "--shots", "400"])
    assert code == 0
    hist = json.loads(out)["histogram"]
    assert set(hist) <= {"00", "11"}
    assert sum(hist.values()) == 400
    code, out = _run(capsys, ["gk-compare", "--circuit", str(path), "--shots", "4000"])
    assert code == 0
    assert json.loads(out)["passed"]


def test_factorize_round_trip(capsys, tmp_path):
    rng = np.random.default_rng(1)

    def haar():
        z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        q, r = np.linalg.qr(z)
        return q * (np.diag(r) / np.abs(np.diag(r)))

    U = tensor_product(haar(), haar()) @ permutation_matrix((1, 0), 2)
    path = tmp_path / "u.json"
    linalg.save_matrix(U, str(path))
    code, out = _run(capsys, ["factorize", "--matrix", str(path), "--n", "2"])
    assert code == 0
    rep = json.loads(out)
    assert rep["permutation_one_line"] == "(2 1)"
    assert rep["residual"] < 1e-8


def test_factorize_entangling_gate_exits_one(capsys, tmp_path):
    CX = np.eye(4)[[0, 1, 3, 2]]
    path = tmp_path / "cx.json"
    linalg.save_matrix(CX, str(path))
    code, out = _run(capsys, ["factorize", "--matrix", str(path), "--n", "2"])
    assert code == 1
    assert not json.loads(out)["passed"]


def test_densify(capsys, tmp_path):
    P = np.eye(4)[[0, 2, 1, 3]]
    path = tmp_path / "p.json"
    linalg.save_matrix(P, str(path))
    code, out = _run(capsys, ["densify", "--matrix", str(path)])
    assert code == 0
    assert json.loads(out)["min_abs_entry"] > 1e-8


def test_usage_errors_exit_two(capsys, tmp_path):
    code, _ = _run(capsys, ["factorize", "--matrix", "/no/such/file.json", "--n", "2"])
    assert code == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"rows": 2}')
    code, _ = _run(capsys, ["factorize", "--matrix", str(bad), "--n", "1"])
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["no-such-command"])
    assert exc.value.code == 2


def test_reports_byte_identical_for_same_seed(capsys):
    _, a = _run(capsys, ["--seed", "4", "table", "II"])
    _, b = _run(capsys, ["table", "II", "--seed", "4"])
    assert a == b
    _, c = _run(capsys, ["table", "II", "--seed", "5"])
    assert a != c


def test_text_format(capsys):
    code, out = _run(capsys, ["--format", "text", "xs-verify"])
    assert code == 0
    assert "passed" in out and not out.lstrip().startswith("{")


def test_threads_env_echoed(capsys, monkeypatch):
    monkeypatch.setenv("STABKIT_THREADS", "4")
    _, out = _run(capsys, ["xs-verify"])
    assert json.loads(out)["threads"] == 4
    monkeypatch.setenv("STABKIT_THREADS", "junk")
    _, out = _run(capsys, ["xs-verify"])
    assert json.loads(out)["threads"] == 1
