import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from maffkit import cli
from maffkit.cli import main
from maffkit.codec import encode_homomorphism, encode_matrix, encode_quotient, parse_matrix
from maffkit.functor import RepAlgebra, amplification
from maffkit.quotient import Quotient
from maffkit.writer import write_json

E1 = np.diag([1.0, 0.0]).astype(complex)


def _quotient_file(tmp_path, name, a, b):
    path = tmp_path / name
    write_json(path, encode_quotient(Quotient(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))))
    return str(path)


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_op_sum_and_product(tmp_path, capsys):
    a = np.array([[1, 2], [0, 1j]])
    b = np.array([[0, 1], [1, 0]])
    t1 = _quotient_file(tmp_path, "t1.json", a, np.eye(2))
    t2 = _quotient_file(tmp_path, "t2.json", b, np.eye(2))

    code, out = _run(capsys, ["op", "sum", t1, t2])
    assert code == 0
    assert_allclose(parse_matrix(out["A"]), a + b, atol=1e-12)
    assert_allclose(parse_matrix(out["B"]), np.eye(2), atol=1e-12)

    code, out = _run(capsys, ["op", "product", t1, t2])
    assert code == 0
    assert_allclose(parse_matrix(out["A"]), a @ b, atol=1e-12)


def test_op_unary_commands(tmp_path, capsys):
    ident = _quotient_file(tmp_path, "i.json", np.eye(2), np.eye(2))
    code, out = _run(capsys, ["op", "chi", ident])
    assert code == 0
    assert_allclose(parse_matrix(out), 0.5 * np.kron(np.ones((2, 2)), np.eye(2)), atol=1e-12)

    proj = _quotient_file(tmp_path, "e.json", E1, np.eye(2))
    code, out = _run(capsys, ["op", "dagger", proj])
    assert code == 0
    assert_allclose(parse_matrix(out["A"]), E1, atol=1e-12)
    assert_allclose(parse_matrix(out["B"]), E1, atol=1e-12)

    code, out = _run(capsys, ["op", "adjoint", _quotient_file(tmp_path, "r.json", 2 * E1, E1)])
    assert code == 0
    assert_allclose(parse_matrix(out["A"]), 2 * E1, atol=1e-10)
    assert_allclose(parse_matrix(out["B"]), np.eye(2), atol=1e-10)


def test_op_predicates(tmp_path, capsys):
    t1 = _quotient_file(tmp_path, "t1.json", E1, 2 * E1)
    t2 = _quotient_file(tmp_path, "t2.json", 2 * E1, 4 * E1)
    full = _quotient_file(tmp_path, "full.json", 0.5 * np.eye(2), np.eye(2))

    assert _run(capsys, ["op", "equals", t1, t2]) == (0, {"equal": True})
    assert _run(capsys, ["op", "equals", t1, full]) == (0, {"equal": False})
    assert _run(capsys, ["op", "extends", t1, full]) == (0, {"extends": True})
    assert _run(capsys, ["op", "extends", full, t1]) == (0, {"extends": False})


def test_op_errors(tmp_path, capsys):
    bad = _quotient_file(tmp_path, "bad.json", np.eye(2), E1)
    assert _run(capsys, ["op", "chi", bad]) == (3, None)

    ident = _quotient_file(tmp_path, "i.json", np.eye(2), np.eye(2))
    assert _run(capsys, ["op", "sum", ident]) == (2, None)

    broken = tmp_path / "broken.json"
    broken.write_text('{"A": 1}', encoding="utf-8")
    assert _run(capsys, ["op", "chi", str(broken)]) == (2, None)

    tol = tmp_path / "tol.json"
    tol.write_text('{"eq_abs": -1}', encoding="utf-8")
    assert _run(capsys, ["op", "chi", ident, "--tol", str(tol)]) == (2, None)

    with pytest.raises(SystemExit) as exc:
        main(["op", "divide", ident])
    assert exc.value.code == 2


def test_krein_worked_example(tmp_path, capsys):
    s = _quotient_file(tmp_path, "s.json", E1, E1)
    code, out = _run(capsys, ["krein", s])
    assert code == 0
    assert out["friedrichs"] == "unbounded"
    assert_allclose(parse_matrix(out["krein_vn"]["A"]), E1, atol=1e-10)
    assert_allclose(parse_matrix(out["krein_vn"]["B"]), np.eye(2), atol=1e-10)
    assert_allclose(parse_matrix(out["k_min"]), np.diag([0.0, -1.0]), atol=1e-10)
    assert_allclose(parse_matrix(out["k_max"]), np.diag([0.0, 1.0]), atol=1e-10)


def test_krein_total_input(tmp_path, capsys):
    m = np.diag([1.0, 3.0])
    s = _quotient_file(tmp_path, "s.json", m, np.eye(2))
    code, out = _run(capsys, ["krein", s])
    assert code == 0
    assert_allclose(parse_matrix(out["krein_vn"]["A"]), m, atol=1e-10)
    assert_allclose(parse_matrix(out["friedrichs"]["A"]), m, atol=1e-10)


def test_krein_with_witness(tmp_path, capsys):
    w = np.diag([1.0, 2.0]).astype(complex)
    s = _quotient_file(tmp_path, "s.json", w @ E1, E1)
    wp = tmp_path / "w.json"
    write_json(wp, encode_matrix(w))
    code, out = _run(capsys, ["krein", s, "--witness", str(wp)])
    assert code == 0
    assert out["friedrichs"] == "unbounded"


def test_krein_failures(tmp_path, capsys):
    shift = _quotient_file(tmp_path, "shift.json", [[0, 0], [1, 0]], E1)
    assert _run(capsys, ["krein", shift]) == (4, None)
    negative = _quotient_file(tmp_path, "neg.json", -np.eye(2), np.eye(2))
    assert _run(capsys, ["krein", negative]) == (3, None)


def test_phi_command(tmp_path, capsys):
    hom = tmp_path / "hom.json"
    write_json(hom, encode_homomorphism(amplification(RepAlgebra(((1, 1),)), 2)))
    t = _quotient_file(tmp_path, "t.json", [[3.0]], [[1.0]])
    code, out = _run(capsys, ["phi", str(hom), t])
    assert code == 0
    assert_allclose(parse_matrix(out["A"]), 3 * np.eye(2), atol=1e-12)


def test_verify_command(tmp_path, capsys):
    code, out = _run(capsys, ["verify", "--suite", "douglas", "--seed", "7", "--cases", "4", "--dims", "2,3", "--output", str(tmp_path)])
    assert code == 0
    assert out["suite"] == "douglas"
    assert out["cases_run"] == 4
    assert (tmp_path / "checks.csv").exists()

    assert _run(capsys, ["verify", "--suite", "unknown"]) == (2, None)

    with pytest.raises(SystemExit) as exc:
        main(["verify", "--dims", "0,a"])
    assert exc.value.code == 2


def test_verify_acceptance_counts(monkeypatch, capsys):
    seen = {}

    def fake_run_verify(**kwargs):
        seen.update(kwargs)
        return {"suite": kwargs["suite"], "failures": []}, 0

    monkeypatch.setattr(cli, "run_verify", fake_run_verify)
    code, out = _run(capsys, ["verify", "--acceptance", "--dims", "2,3"])
    assert code == 0
    assert out["suite"] == "all"
    assert seen["cases"]["oracle"] == 1000
    assert seen["cases"]["uniqueness"] == 2000
    assert seen["samples"] == 10000
