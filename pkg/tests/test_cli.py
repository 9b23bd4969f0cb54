import csv
import io
import json
import math
import subprocess
import sys

import pytest

from periodic_sums.cli import main, parse_n_range, UsageError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


class TestSum:
    def test_alt_harmonic(self, capsys):
        code, rep = run_json(capsys, "sum", "--family", "alt-harmonic", "--n", "3")
        assert code == 0
        row = rep["rows"][0]
        assert row["brute_re"] == pytest.approx(-0.5, abs=1e-15)
        assert row["closed_re"] == pytest.approx(-0.5, abs=1e-12)

    def test_expression_weight(self, capsys):
        code, rep = run_json(capsys, "sum", "--weight", "sin(k*pi/2)", "--family", "recip4", "--n", "0..10")
        assert code == 0 and rep["passed"]
        assert len(rep["rows"]) == 11
        assert all(r["abs_err"] <= 1e-10 for r in rep["rows"])

    def test_other_weight_uses_anti_difference(self, capsys):
        code, rep = run_json(capsys, "sum", "--weight", "cos(k*pi/2)", "--family", "log4", "--n", "0..12")
        assert code == 0 and rep["passed"]
        assert all(r["closed_re"] is not None for r in rep["rows"])

    def test_expression_only(self, capsys):
        code, rep = run_json(capsys, "sum", "--f", "k^2", "--weight", "(-1)^k", "--n", "4")
        assert code == 0
        assert rep["rows"][0]["brute_re"] == 0 - 1 + 4 - 9
        assert rep["rows"][0]["closed_re"] is None

    def test_domain_error(self, capsys):
        code, out, err = run(capsys, "sum", "--family", "log3", "--n", "0")
        assert code == 2
        assert out == "" and "n >= 1" in err

    def test_mismatch_is_data(self, capsys):
        code, rep = run_json(capsys, "sum", "--family", "alt-harmonic", "--n", "3", "--tol", "1e-30")
        assert code == 0

    @pytest.mark.parametrize("argv", [
        ["sum", "--n", "3"],
        ["sum", "--f", "k"],
        ["sum", "--family", "log4", "--f", "k"],
        ["sum", "--family", "log4", "--n", "5..2"],
        ["sum", "--f", "k", "--weight", "k", "--n", "2"],
        ["sum", "--f", "foo(k)", "--weight", "1", "--n", "2"],
    ])
    def test_usage_errors(self, capsys, argv):
        assert run(capsys, *argv)[0] == 2

    def test_unknown_family_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["sum", "--family", "nope"])
        assert info.value.code == 2


class TestGauss:
    def test_half(self, capsys):
        code, rep = run_json(capsys, "gauss", "1", "2")
        assert code == 0
        assert rep["rows"][0]["formula"] == pytest.approx(2 - 2 * math.log(2), abs=1e-12)

    def test_third(self, capsys):
        code, rep = run_json(capsys, "gauss", "1", "3")
        assert code == 0 and rep["max_abs_err"] <= 1e-10

    def test_out_of_range(self, capsys):
        assert run(capsys, "gauss", "5", "5")[0] == 2


class TestGf:
    def test_family(self, capsys):
        code, rep = run_json(capsys, "gf", "--family", "recip4", "--q", "4", "--p", "1", "--N", "32")
        assert code == 0 and rep["max_abs_err"] <= 1e-10
        assert len(rep["rows"]) == 32

    def test_alternating_expression(self, capsys):
        code, rep = run_json(capsys, "gf", "--f", "1/(k+1)", "--weight", "(-1)^k", "--N", "16")
        assert code == 0 and rep["passed"]
        assert "special_re" in rep["rows"][0]

    def test_zero_order(self, capsys):
        assert run(capsys, "gf", "--family", "recip4", "--N", "0")[0] == 2

    def test_bad_residue(self, capsys):
        assert run(capsys, "gf", "--family", "recip4", "--q", "4", "--p", "4")[0] == 2


class TestBinomial:
    def test_small(self, capsys):
        code, rep = run_json(capsys, "binomial", "--m", "1", "--q", "3", "--p", "1", "--h", "recip")
        row = rep["rows"][0]
        assert code == 0
        assert row["closed"] == pytest.approx(0.5) and row["brute"] == pytest.approx(0.5)

    def test_large(self, capsys):
        code, rep = run_json(capsys, "binomial", "--m", "30", "--q", "8", "--p", "7", "--h", "one")
        assert code == 0 and rep["max_rel_err"] <= 1e-9

    def test_empty(self, capsys):
        code, rep = run_json(capsys, "binomial", "--m", "0", "--q", "2", "--p", "1", "--h", "one")
        assert code == 0 and rep["rows"][0]["closed"] == 0

    def test_bad(self, capsys):
        assert run(capsys, "binomial", "--m", "3", "--q", "2", "--p", "2")[0] == 2


class TestVerify:
    def test_single_suite(self, capsys):
        code, rep = run_json(capsys, "verify", "--suite", "gauss", "--qmax", "12")
        assert code == 0
        assert rep["rows"][0]["suite"] == "gauss"
        assert rep["max_abs_err"] <= 1e-10

    def test_perturbed(self, capsys):
        code, out, err = run(capsys, "verify", "--suite", "closed", "--perturb")
        assert code == 1
        assert "FAILED" in err

    def test_tight_tolerance_fails(self, capsys):
        code, _, _ = run(capsys, "verify", "--suite", "genfun", "--tol", "1e-20")
        assert code == 1


class TestOutput:
    def test_json_keys(self, capsys):
        _, rep = run_json(capsys, "catalog")
        assert list(rep) == ["command", "params", "rows", "max_abs_err", "max_rel_err", "passed"]
        assert [r["id"] for r in rep["rows"]][:2] == ["log3", "log4"]

    def test_csv_header(self, capsys):
        code, out, _ = run(capsys, "sum", "--family", "log4", "--n", "0..3", "--format", "csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["n", "brute_re", "brute_im", "closed_re", "closed_im", "abs_err"]
        assert len(rows) == 5

    def test_text_has_fifteen_digits(self, capsys):
        _, out, _ = run(capsys, "sum", "--family", "recip4", "--n", "6")
        assert "0.416666666666667" in out

    @pytest.mark.parametrize("ext", ["json", "csv"])
    def test_out_path(self, capsys, tmp_path, ext):
        path = tmp_path / f"report.{ext}"
        code, out, _ = run(capsys, "sum", "--family", "log4", "--n", "2", "--out", str(path))
        assert code == 0 and out == ""
        text = path.read_text()
        if ext == "json":
            assert json.loads(text)["command"] == "sum"
        else:
            assert text.startswith("n,brute_re")


class TestTolerance:
    def test_env(self, capsys, monkeypatch):
        monkeypatch.setenv("PERIODIC_SUM_TOL", "1e-3")
        _, rep = run_json(capsys, "gauss", "1", "4")
        assert rep["params"]["tol"] == 1e-3

    def test_flag_wins(self, capsys, monkeypatch):
        monkeypatch.setenv("PERIODIC_SUM_TOL", "1e-3")
        _, rep = run_json(capsys, "gauss", "1", "4", "--tol", "1e-11")
        assert rep["params"]["tol"] == 1e-11

    def test_default(self, capsys, monkeypatch):
        monkeypatch.delenv("PERIODIC_SUM_TOL", raising=False)
        _, rep = run_json(capsys, "gauss", "1", "4")
        assert rep["params"]["tol"] == 1e-9

    @pytest.mark.parametrize("value", ["abc", "-1"])
    def test_bad_env(self, capsys, monkeypatch, value):
        monkeypatch.setenv("PERIODIC_SUM_TOL", value)
        assert run(capsys, "gauss", "1", "4")[0] == 2


def test_n_range():
    assert parse_n_range("3") == range(3, 4)
    assert parse_n_range("0..10") == range(0, 11)
    for bad in ("x", "4..1", "-2"):
        with pytest.raises(UsageError):
            parse_n_range(bad)


def test_deterministic_subprocess():
    cmd = [sys.executable, "-m", "periodic_sums", "sum", "--family", "harmonic4", "--n", "0..40", "--format", "json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first
