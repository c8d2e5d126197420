"""CLI: commands, exit codes, determinism, serialization round trips."""

import json
import subprocess
import sys
from fractions import Fraction

import pytest

from qexterior.cli import main
from qexterior.coeffs import FourierCoeff
from qexterior.models import PoissonModel
from qexterior.serialize import (form_from_json, form_to_json,
                                 model_from_json, model_to_json)


def run_cli(args):
    r = subprocess.run([sys.executable, "-m", "qexterior.cli", *args],
                       capture_output=True, text=True)
    return r


@pytest.fixture
def t2_file(tmp_path):
    path = tmp_path / "t2.json"
    path.write_text(json.dumps({"space": "torus", "dim": 2,
                                "symplectic": "darboux"}), encoding="utf-8")
    return str(path)


@pytest.fixture
def t2c_file(tmp_path):
    path = tmp_path / "t2c.json"
    path.write_text(json.dumps({"space": "torus", "dim": 2,
                                "symplectic": "darboux", "complex": True}),
                    encoding="utf-8")
    return str(path)


@pytest.fixture
def affine_file(tmp_path):
    path = tmp_path / "r2.json"
    path.write_text(json.dumps({"space": "affine", "dim": 2,
                                "bivector": [[1, 2, "1"]]}), encoding="utf-8")
    return str(path)


class TestCheck:
    def test_suite_passes(self, t2_file):
        rc = main(["check", "--suite", "frame", "--trials", "10",
                   "--seed", "42", "--model", t2_file, "--out", "/dev/null"])
        assert rc == 0

    def test_all_suites_small(self, tmp_path):
        out = tmp_path / "report.json"
        rc = main(["check", "--trials", "4", "--seed", "3",
                   "--out", str(out)])
        assert rc == 0
        report = json.loads(out.read_text())
        assert report["status"] == "pass"
        assert len(report["results"]) >= 10
        assert "conventions" in report

    def test_negative_control_exits_one(self, tmp_path):
        out = tmp_path / "neg.json"
        rc = main(["check", "--suite", "negative-control", "--trials", "4",
                   "--seed", "1", "--out", str(out)])
        assert rc == 1
        report = json.loads(out.read_text())
        assert report["status"] == "fail"
        assert report["results"][0]["failures"]

    def test_unknown_suite_exits_two(self):
        r = run_cli(["check", "--suite", "nope", "--trials", "1"])
        assert r.returncode == 2
        err = json.loads(r.stderr)
        assert err["error"]["code"] == 2

    def test_malformed_model_exits_two(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json", encoding="utf-8")
        r = run_cli(["check", "--suite", "frame", "--model", str(bad)])
        assert r.returncode == 2

    def test_determinism(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for path in (a, b):
            rc = main(["check", "--suite", "associativity", "--trials", "6",
                       "--seed", "11", "--out", str(path)])
            assert rc == 0
        assert a.read_bytes() == b.read_bytes()


class TestCohomology:
    def test_t2_table(self, t2_file, tmp_path):
        out = tmp_path / "t2.out.json"
        rc = main(["cohomology", "--model", t2_file, "--out", str(out)])
        assert rc == 0
        data = json.loads(out.read_text())
        ranks = {tuple(e["degree"]) if isinstance(e["degree"], list)
                 else e["degree"]: e["rank"] for e in data["table"]}
        assert ranks == {0: 1, 1: 2, 2: 1}
        assert data["meta"]["anomalous_modes"] == []

    def test_affine_rejected(self, affine_file):
        r = run_cli(["cohomology", "--model", affine_file])
        assert r.returncode == 2
        assert "torus" in json.loads(r.stderr)["error"]["message"]

    def test_latex_emission(self, t2_file, tmp_path):
        out = tmp_path / "t2.tex.json"
        rc = main(["cohomology", "--model", t2_file, "--latex",
                   "--out", str(out)])
        assert rc == 0
        assert r"\begin{tabular}" in out.read_text()

    def test_byte_identical_reports(self, t2_file, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for path in (a, b):
            main(["cohomology", "--model", t2_file, "--out", str(path)])
        assert a.read_bytes() == b.read_bytes()


class TestDolbeault:
    def test_t2_complex(self, t2c_file, tmp_path):
        out = tmp_path / "dolb.json"
        rc = main(["dolbeault", "--model", t2c_file, "--ring", "polynomial",
                   "--out", str(out)])
        assert rc == 0
        data = json.loads(out.read_text())
        ranks = {tuple(e["degree"]): e["rank"] for e in data["table"]}
        assert ranks[(0, 0)] == 1 and ranks[(1, 0)] == 1

    def test_non_complex_rejected(self, t2_file):
        r = run_cli(["dolbeault", "--model", t2_file])
        assert r.returncode == 2


class TestEquivariant:
    def test_circle_action(self, t2_file, tmp_path):
        action = tmp_path / "act.json"
        action.write_text(json.dumps({"generators": [["1", "0"]]}),
                          encoding="utf-8")
        out = tmp_path / "equi.json"
        rc = main(["equivariant", "--model", t2_file, "--action", str(action),
                   "--cutoff", "4", "--out", str(out)])
        assert rc == 0
        data = json.loads(out.read_text())
        ranks = {e["degree"]: e["rank"] for e in data["table"]}
        assert ranks == {n: 1 for n in range(5)}
        assert data["meta"]["cutoff"] == 4

    def test_missing_action(self, t2_file):
        r = run_cli(["equivariant", "--model", t2_file])
        assert r.returncode == 2


class TestLefschetz:
    def test_n1_report(self, tmp_path):
        out = tmp_path / "lef.json"
        rc = main(["lefschetz", "--n", "1", "--out", str(out)])
        assert rc == 0
        data = json.loads(out.read_text())
        assert data["all_invertible"]
        assert data["blocks"]["0"]["paper_conformance"] == "mismatch"
        assert data["blocks"]["0"]["conformance_issues"]
        assert data["blocks"]["1"]["factors"]["rational_roots"] == {"1": 2}
        assert all(data["commutators"].values())

    def test_bad_n(self):
        r = run_cli(["lefschetz", "--n", "9"])
        assert r.returncode == 2


class TestChern:
    def test_zero_connection(self, t2_file, tmp_path):
        conn = tmp_path / "conn.json"
        conn.write_text(json.dumps({"rank": 1, "theta": [[[]]]}),
                        encoding="utf-8")
        out = tmp_path / "chern.json"
        rc = main(["chern", "--model", t2_file, "--connection", str(conn),
                   "--out", str(out)])
        assert rc == 0
        data = json.loads(out.read_text())
        assert data["char_forms"]["1"]["form"] == []
        assert data["char_forms"]["1"]["closed"]

    def test_rank2_certificate(self, t2_file, tmp_path):
        theta_entry = [{"indices": [1], "h": 0,
                        "coeff": {"fourier": [[[0, 1], {"re": "1", "im": "0"}]]}}]
        zero_entry = []
        conn = tmp_path / "conn2.json"
        conn.write_text(json.dumps(
            {"rank": 2, "theta": [[theta_entry, zero_entry],
                                  [zero_entry, theta_entry]]}),
            encoding="utf-8")
        out = tmp_path / "chern2.json"
        rc = main(["chern", "--model", t2_file, "--connection", str(conn),
                   "--power", "2", "--out", str(out)])
        assert rc == 0
        data = json.loads(out.read_text())
        assert data["char_forms"]["2"]["closed"]
        assert data["status"] == "pass"

    def test_missing_connection(self, t2_file):
        r = run_cli(["chern", "--model", t2_file])
        assert r.returncode == 2


class TestIntegral:
    def test_volume(self, t2_file, tmp_path):
        form = tmp_path / "one.json"
        form.write_text(json.dumps(
            [{"indices": [], "h": 0,
              "coeff": {"fourier": [[[0, 0], {"re": "1", "im": "0"}]]}}]),
            encoding="utf-8")
        out = tmp_path / "int.json"
        rc = main(["integral", "--model", t2_file, "--form", str(form),
                   "--out", str(out)])
        assert rc == 0
        data = json.loads(out.read_text())
        assert data["integral"] == [[0, {"im": "0", "re": "1"}]]
        assert data["stokes"]["pass"]

    def test_affine_rejected(self, affine_file, tmp_path):
        form = tmp_path / "f.json"
        form.write_text("[]", encoding="utf-8")
        r = run_cli(["integral", "--model", affine_file, "--form", str(form)])
        assert r.returncode == 2


class TestSerialization:
    def test_model_roundtrip(self):
        t2 = PoissonModel.darboux_torus(1, complex_structure=True)
        again = model_from_json(model_to_json(t2))
        assert again.dim == 2 and again.kind == "torus"
        assert again.complex_structure
        assert again.w == t2.w
        assert again.omega == t2.omega

    def test_form_roundtrip(self):
        t2 = PoissonModel.darboux_torus(1)
        a = t2.form_monomial([1, 2], FourierCoeff.character(2, (1, -1)),
                             h=2) + t2.form_scalar(Fraction(1, 3))
        again = form_from_json(form_to_json(a), t2)
        assert again == a

    def test_mismatched_coeff_class_rejected(self):
        bad = {"space": "torus", "dim": 2,
               "bivector": [[1, 2, {"poly": [[[0, 0], "1"]]}]]}
        with pytest.raises(ValueError):
            model_from_json(bad)
