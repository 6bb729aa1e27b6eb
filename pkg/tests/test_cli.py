import json
import math
import random

import pytest

from cubeconv import cli
from cubeconv.core import REAL, CubeFunction, SetFamily


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    payload = json.loads(captured.out) if captured.out else None
    return code, payload, captured.err


class TestFamilyFiles:
    def test_parse_basic(self):
        fam = cli.parse_family("m=3\n# comment\n1,3\n-\n2\n")
        assert fam.m == 3
        assert fam.members == (0, 0b010, 0b101)

    def test_header_optional_m_inferred(self):
        fam = cli.parse_family("1,3,7\n2\n")
        assert fam.m == 7

    def test_inline_comments_and_blank_lines(self):
        fam = cli.parse_family("m=2\n\n1 # just element one\n1,2\n")
        assert fam.members == (0b01, 0b11)

    def test_empty_only_without_header_rejected(self):
        with pytest.raises(ValueError):
            cli.parse_family("-\n")

    def test_duplicate_element_rejected(self):
        with pytest.raises(ValueError):
            cli.parse_family("m=3\n1,1\n")

    def test_duplicate_set_rejected(self):
        with pytest.raises(ValueError):
            cli.parse_family("m=3\n1,2\n2,1\n")

    def test_element_out_of_range(self):
        with pytest.raises(ValueError):
            cli.parse_family("m=2\n0,2\n")
        with pytest.raises(ValueError):
            cli.parse_family("m=2\n3\n")

    def test_late_header_rejected(self):
        with pytest.raises(ValueError):
            cli.parse_family("1\nm=3\n")

    def test_round_trip(self):
        rng = random.Random(6)
        for _ in range(20):
            m = rng.randint(1, 8)
            masks = rng.sample(range(1 << m), rng.randint(1, min(1 << m, 12)))
            fam = SetFamily.from_masks(m, masks)
            assert cli.parse_family(cli.serialize_family(fam)) == fam


class TestFunctionFiles:
    def test_round_trip(self):
        rng = random.Random(12)
        fs = [
            CubeFunction(3, [rng.uniform(-2, 2) for _ in range(8)], REAL) for _ in range(2)
        ]
        parsed = cli.parse_functions(cli.serialize_functions(fs))
        assert len(parsed) == 2
        assert all(p.values == f.values for p, f in zip(parsed, fs))

    def test_bad_header(self):
        with pytest.raises(ValueError):
            cli.parse_functions("count=2 m=1\n1 1\n1 1\n")

    def test_wrong_value_count(self):
        with pytest.raises(ValueError):
            cli.parse_functions("m=2 count=1\n1 2 3\n")


class TestExponentCommand:
    def test_n3(self, capsys):
        code, out, _ = run_cli(capsys, "exponent", "--n", "3")
        assert code == 0
        assert 1.725 <= out["c"] <= 1.727
        assert out["r"] == out["p"] - 1

    def test_n2(self, capsys):
        code, out, _ = run_cli(capsys, "exponent", "--n", "2")
        assert code == 0
        assert out["p"] == 2.0

    def test_n1_exits_2(self, capsys):
        code, out, err = run_cli(capsys, "exponent", "--n", "1")
        assert code == 2
        assert out is None
        assert "error" in err


class TestCountCommand:
    def test_empty_set_family(self, tmp_path, capsys):
        path = tmp_path / "fam.txt"
        path.write_text("m=1\n-\n")
        code, out, _ = run_cli(capsys, "count", "--family", str(path), "--n", "3")
        assert code == 0
        assert out["count"] == 1
        assert out["holds"] is True

    def test_powerset_of_two(self, tmp_path, capsys):
        path = tmp_path / "fam.txt"
        path.write_text("m=2\n-\n1\n2\n1,2\n")
        for method in ("fast", "brute"):
            code, out, _ = run_cli(
                capsys, "count", "--family", str(path), "--n", "3", "--method", method
            )
            assert code == 0
            assert out["count"] == 9
            assert out["ratio"] == pytest.approx(math.log(9) / math.log(4))

    def test_malformed_family_exits_2(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("m=2\n0,2\n")
        code, out, err = run_cli(capsys, "count", "--family", str(path), "--n", "3")
        assert code == 2
        assert "error" in err

    def test_missing_file_exits_2(self, capsys):
        code, _, _ = run_cli(capsys, "count", "--family", "/nonexistent", "--n", "3")
        assert code == 2


class TestVerifyCommand:
    def test_small_run_passes(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--n", "3", "--m", "4", "--trials", "200", "--seed", "42"
        )
        assert code == 0
        assert out["failures"] == 0
        assert out["max_ratio"] < 1.0
        # config echoed for reproducibility
        for key in ("n", "m", "trials", "seed", "distribution", "rel_tol", "abs_tol"):
            assert key in out

    def test_byte_identical_reports(self, capsys):
        argv = ["verify", "--n", "3", "--m", "3", "--trials", "150", "--seed", "7",
                "--distribution", "sparse", "--signed"]
        cli.main(argv)
        first = capsys.readouterr().out
        cli.main(argv)
        second = capsys.readouterr().out
        assert first == second

    def test_witness_mode(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--witness", "--n", "3", "--m", "5")
        assert code == 0
        assert out["max_ratio"] == pytest.approx(1.0, abs=1e-9 * 5)

    def test_trials_zero_exits_2(self, capsys):
        code, _, _ = run_cli(capsys, "verify", "--trials", "0")
        assert code == 2

    def test_functions_file_mode(self, tmp_path, capsys):
        path = tmp_path / "fns.txt"
        path.write_text("m=1 count=2\n1.0 1.0\n1.0 1.0\n")
        code, out, _ = run_cli(capsys, "verify", "--functions", str(path))
        assert code == 0
        assert out["lhs"] == pytest.approx(2.0)
        assert out["max_ratio"] == pytest.approx(1.0)


class TestExtremalCommand:
    def test_t2(self, capsys):
        code, out, _ = run_cli(capsys, "extremal", "--n", "3", "--t", "2")
        assert code == 0
        assert out["ratio"] == pytest.approx(1.323, abs=1e-3)
        assert out["family_size"] == 30

    def test_t1(self, capsys):
        code, out, _ = run_cli(capsys, "extremal", "--n", "3", "--t", "1")
        assert code == 0
        assert out["ratio"] == pytest.approx(1.0)

    def test_cap_exceeded_exits_2(self, capsys):
        code, _, _ = run_cli(capsys, "extremal", "--n", "3", "--t", "9")
        assert code == 2


class TestLemmaCommand:
    def test_solve_n3_k1(self, capsys):
        code, out, _ = run_cli(capsys, "lemma", "solve", "--n", "3", "--k", "1")
        assert code == 0
        assert out["status"] == "ok"
        assert out["residual_eq1"] < 1e-9
        assert out["last_value"] >= -1e-9

    def test_solve_inadmissible_k_is_information(self, capsys):
        code, out, _ = run_cli(capsys, "lemma", "solve", "--n", "3", "--k", "2")
        assert code == 0
        assert out["status"] in ("no-root", "domain-violation")

    def test_scan(self, capsys):
        code, out, _ = run_cli(capsys, "lemma", "scan", "--n", "3", "--grid", "1000")
        assert code == 0
        assert out["min_last_value"] >= -1e-9

    def test_k_out_of_range_exits_2(self, capsys):
        code, _, _ = run_cli(capsys, "lemma", "solve", "--n", "3", "--k", "3")
        assert code == 2

    def test_solve_requires_k(self, capsys):
        code, _, _ = run_cli(capsys, "lemma", "solve", "--n", "3")
        assert code == 2
