import json

import numpy as np

from tracepoly import cli
from tracepoly.wordpoly import generator_quats


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestPoly:
    def test_table1(self, capsys):
        code, out, _ = run(capsys, "poly", "--table1")
        assert code == 0
        lines = [l for l in out.splitlines() if l.strip()]
        assert len(lines) == 10
        assert lines[0].startswith("bab")

    def test_word(self, capsys):
        code, out, _ = run(capsys, "poly", "a^2")
        assert code == 0
        assert "1/2*x + 1" in out.replace("β", "x") or "β" in out

    def test_json_bundle(self, capsys):
        code, out, _ = run(capsys, "poly", "bab", "--order2", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["checks"]["norm_ok"] and data["checks"]["trace_ok"]

    def test_parse_error_exit_2(self, capsys):
        code, _, err = run(capsys, "poly", "b a b")
        assert code == 2
        assert "word error" in err

    def test_missing_word(self, capsys):
        code, _, _ = run(capsys, "poly")
        assert code == 2


class TestVerify:
    def test_small_pass(self, capsys):
        code, out, _ = run(capsys, "verify", "--samples", "20", "--seed", "5")
        assert code == 0
        assert "VERIFY PASS" in out

    def test_zero_samples_vacuous(self, capsys):
        code, out, _ = run(capsys, "verify", "--samples", "0")
        assert code == 0
        assert "vacuous" in out

    def test_injected_fault_exits_1(self, capsys, monkeypatch):
        import tracepoly.numeric as numeric

        original = numeric.eval_word_matrix

        def corrupted(A, B, w):
            return original(A, B, w) + np.array([[1e-5, 0], [0, 0]])

        monkeypatch.setattr(numeric, "eval_word_matrix", corrupted)
        code, out, _ = run(capsys, "verify", "--samples", "10", "--seed", "5")
        assert code == 1
        assert "VERIFY FAIL" in out

    def test_deterministic_output(self, capsys):
        code1, out1, _ = run(capsys, "verify", "--samples", "15", "--seed", "9")
        code2, out2, _ = run(capsys, "verify", "--samples", "15", "--seed", "9")
        assert (code1, out1) == (code2, out2)


class TestDiscrete:
    def test_certificate_exit_10(self, capsys):
        code, out, _ = run(capsys, "discrete", "--beta", "0", "--gamma", "0.5", "--json")
        assert code == 10
        data = json.loads(out)
        assert data["violated"] == "jorgensen"
        assert data["values"]["lhs"] < data["values"]["rhs"]

    def test_inconclusive_exit_0(self, capsys):
        code, out, _ = run(capsys, "discrete", "--beta", "0", "--gamma", "2")
        assert code == 0
        assert "inconclusive" in out

    def test_complex_argument(self, capsys):
        code, _, _ = run(capsys, "discrete", "--beta", "0.1,0.2", "--gamma", "0.3,0.1")
        assert code == 10


class TestScan:
    def test_csv_deterministic(self, capsys, tmp_path):
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        code1, _, _ = run(capsys, "scan", "--beta", "0", "--max-syllables", "3",
                          "--max-exp", "2", "--out", str(p1))
        code2, _, _ = run(capsys, "scan", "--beta", "0", "--max-syllables", "3",
                          "--max-exp", "2", "--out", str(p2))
        assert code1 == code2 == 0
        assert p1.read_bytes() == p2.read_bytes()

    def test_grid_raster(self, capsys, tmp_path):
        raster = tmp_path / "grid.pgm"
        code, out, _ = run(capsys, "scan", "--beta", "0", "--max-syllables", "2",
                           "--max-exp", "1", "--grid", "--window=-1,1,-1,1",
                           "--resolution", "5x4", "--raster", str(raster))
        assert code == 0
        assert raster.exists() and (tmp_path / "grid.pgm.json").exists()
        assert "grid counts" in out


class TestUnits:
    def test_degree_one(self, capsys):
        code, out, _ = run(capsys, "units", "--max-degree", "1")
        assert code == 0
        assert out.splitlines()[0].startswith("3 units")


class TestArith:
    def test_pass(self, capsys):
        code, out, _ = run(capsys, "arith", "--minpoly=-1,0,1,1")
        assert code == 0
        assert "PASS" in out

    def test_fail_reported(self, capsys):
        code, out, _ = run(capsys, "arith", "--minpoly=-1,-1,0,1", "--json")
        assert code == 0
        assert json.loads(out)["passed"] is False


class TestQuat:
    def test_mul_roundtrip(self, capsys, tmp_path):
        w1 = generator_quats()["a2"]
        w3 = generator_quats()["comm"]
        f1, f3 = tmp_path / "w1.json", tmp_path / "w3.json"
        f1.write_text(json.dumps(w1.to_json()))
        f3.write_text(json.dumps(w3.to_json()))
        code, out, _ = run(capsys, "quat", "mul", "--input", str(f3), "--second", str(f1))
        assert code == 0
        data = json.loads(out)
        assert data["algebra"] == "q0"

    def test_norm(self, capsys, tmp_path):
        w1 = generator_quats()["a2"]
        f1 = tmp_path / "w1.json"
        f1.write_text(json.dumps(w1.to_json()))
        code, out, _ = run(capsys, "quat", "norm", "--input", str(f1))
        assert code == 0
        data = json.loads(out)
        assert data["terms"] == [{"i": 0, "j": 0, "num": "1", "den": "1"}]

    def test_rho(self, capsys, tmp_path):
        w2 = generator_quats()["ba2B"]
        f = tmp_path / "w2.json"
        f.write_text(json.dumps(w2.to_json()))
        code, out, _ = run(capsys, "quat", "rho", "--input", str(f))
        assert code == 0
        assert json.loads(out)["algebra"] == "quv"
