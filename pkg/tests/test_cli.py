import subprocess
import sys
from fractions import Fraction

import pytest

from gcdsum.cli import (
    EXIT_CAP,
    EXIT_FAIL,
    EXIT_IO,
    EXIT_OK,
    EXIT_USAGE,
    UsageError,
    build_grid,
    main,
    parse_args,
)
from gcdsum.reporting import csv_body, read_csv_report


def run(args, tmp_path, name="out.csv"):
    out = tmp_path / name
    code = main(list(args) + ["--out", str(out)])
    return code, (out.read_text() if out.exists() else "")


class TestParsing:
    def test_valid_config(self):
        cfg = parse_args(["verify-identity", "--which", "A", "--s", "2", "--family", "phi_s", "--x-max", "100"])
        assert cfg.command == "verify-identity" and cfg.which == "A" and cfg.x_max == 100
        assert cfg.digits == 40

    def test_negative_a(self):
        assert parse_args(["verify-identity", "--family", "phi_sa", "--a", "-1/4"]).a == Fraction(-1, 4)
        assert parse_args(["verify-identity", "--family", "phi_sa", "--a=-0.25"]).a == Fraction(-1, 4)

    @pytest.mark.parametrize("argv", [
        ["verify-identity", "--a", "-1.5"],
        ["verify-identity", "--a", "0"],
        ["verify-asymptotic", "--s", "1"],
        ["verify-dirichlet", "--s", "1"],
        ["verify-identity", "--family", "chi"],
        ["verify-identity", "--digits", "5"],
        ["verify-identity", "--step", "2", "--ratio", "1.5"],
        ["verify-identity", "--bogus", "1"],
        ["frobnicate"],
    ])
    def test_usage_errors(self, argv, capsys):
        assert main(argv) == EXIT_USAGE
        assert capsys.readouterr().err

    def test_error_names_flag(self):
        with pytest.raises(UsageError, match="--a"):
            parse_args(["verify-identity", "--a", "-1.5"])

    def test_config_precedence(self, tmp_path, monkeypatch):
        monkeypatch.delenv("GCDSUM_DIGITS", raising=False)
        conf = tmp_path / "run.conf"
        conf.write_text("# precision\ndigits = 60\nfamily = psi_s  # trailing comment\nx-max = 20\n")
        cfg = parse_args(["verify-identity", "--config", str(conf), "--digits", "40"])
        assert cfg.digits == 40 and cfg.family == "psi_s" and cfg.x_max == 20
        assert parse_args(["verify-identity", "--config", str(conf)]).digits == 60

    def test_env_digits(self, tmp_path, monkeypatch):
        monkeypatch.setenv("GCDSUM_DIGITS", "50")
        assert parse_args(["sieve"]).digits == 50
        assert parse_args(["sieve", "--digits", "30"]).digits == 30
        conf = tmp_path / "c.conf"
        conf.write_text("digits = 70\n")
        assert parse_args(["sieve", "--config", str(conf)]).digits == 70

    def test_config_errors(self, tmp_path, capsys):
        conf = tmp_path / "bad.conf"
        conf.write_text("colour = blue\n")
        assert main(["sieve", "--config", str(conf)]) == EXIT_USAGE
        assert "colour" in capsys.readouterr().err
        conf.write_text("digits 40\n")
        assert main(["sieve", "--config", str(conf)]) == EXIT_USAGE
        assert main(["sieve", "--config", str(tmp_path / "missing.conf")]) == EXIT_IO

    def test_grids(self):
        assert build_grid(1, 5) == (1, 2, 3, 4, 5)
        assert build_grid(1, 2, Fraction(1, 2)) == (1, Fraction(3, 2), 2)
        g = build_grid(100, 1000, ratio=2)
        assert g == (100, 200, 400, 800, 1000)
        with pytest.raises(UsageError):
            build_grid(5, 2)


class TestCommands:
    def test_sieve(self, tmp_path):
        code, text = run(["sieve", "--function", "jordan_phi(2)", "--N", "6"], tmp_path)
        assert code == EXIT_OK
        assert text == "n,value\n1,1\n2,3\n3,8\n4,12\n5,24\n6,24\n"

    def test_sieve_stdout(self, capsys):
        assert main(["sieve", "--function", "mobius", "--N", "3"]) == EXIT_OK
        assert capsys.readouterr().out == "n,value\n1,1\n2,-1\n3,-1\n"

    def test_verify_identity_H(self, tmp_path):
        code, text = run(["verify-identity", "--which", "H", "--m", "1", "--s", "2", "--family", "phi_s",
                          "--x-max", "300"], tmp_path)
        assert code == EXIT_OK
        meta, rows = read_csv_report(text)
        assert len(rows) == 300 and all(r["pass"] == "true" for r in rows)
        assert meta["which"] == "H" and meta["family"] == "phi_s"

    def test_verify_dirichlet_all(self, tmp_path):
        code, text = run(["verify-dirichlet", "--w", "3", "--N", "10000", "--family", "all"], tmp_path)
        assert code == EXIT_OK
        meta, rows = read_csv_report(text)
        assert {r["family"] for r in rows} == {"phi_s", "psi_s", "phi_sa", "psi_sa"}
        assert all(r["pass"] == "true" for r in rows)

    def test_verify_dirichlet_single(self, tmp_path):
        code, text = run(["verify-dirichlet", "--which", "L", "--m", "2", "--family", "psi_sa", "--N", "1000"],
                         tmp_path)
        assert code == EXIT_OK
        meta, rows = read_csv_report(text)
        assert [r["w"] for r in rows] == ["2", "3", "5"]
        assert list(rows[0])[:2] == ["w", "N"]

    def test_error_term(self, tmp_path):
        code, text = run(["error-term", "--which", "Delta", "--x-max", "100000"], tmp_path)
        assert code == EXIT_OK
        meta, rows = read_csv_report(text)
        assert meta["label"] == "Delta" and rows[-1]["x"] == "100000"
        assert all(float(r["normalized"]) <= 3 for r in rows)

    def test_verify_asymptotic_pass(self, tmp_path):
        code, text = run(["verify-asymptotic", "--which", "H1-phi", "--x-max", "3000"], tmp_path)
        assert code == EXIT_OK
        assert read_csv_report(text)[0]["pass"] == "true"

    def test_verify_asymptotic_fail(self, tmp_path):
        code, text = run(["verify-asymptotic", "--which", "H2m-phi", "--m", "1", "--x-max", "10000"], tmp_path)
        assert code == EXIT_FAIL
        assert read_csv_report(text)[0]["pass"] == "false"

    def test_verify_asymptotic_corrected(self, tmp_path):
        code, _ = run(["verify-asymptotic", "--which", "H2m-phi", "--m", "1", "--x-max", "10000",
                       "--corrected"], tmp_path)
        assert code == EXIT_OK

    def test_resource_cap(self, tmp_path, capsys):
        code, _ = run(["verify-identity", "--which", "M", "--mode", "direct", "--s", "3", "--x-max", "300"],
                      tmp_path)
        assert code == EXIT_CAP
        assert "cap" in capsys.readouterr().err

    def test_io_error(self, tmp_path):
        bad = tmp_path / "no" / "such" / "dir" / "x.csv"
        assert main(["sieve", "--function", "tau", "--N", "5", "--out", str(bad)]) == EXIT_IO

    def test_report_all_subset(self, tmp_path, capsys):
        code, text = run(["report-all", "--criteria", "1"], tmp_path)
        assert code == EXIT_OK
        assert "criterion 1 [PASS]" in capsys.readouterr().err
        meta, rows = read_csv_report(text)
        assert rows[0]["criterion"] == "1" and rows[0]["pass"] == "true"
        assert main(["report-all", "--criteria", "9"]) == EXIT_USAGE


class TestDeterminism:
    ARGS = ["verify-identity", "--which", "A", "--family", "psi_sa", "--x-max", "120"]

    def test_two_runs_identical(self, tmp_path):
        _, a = run(self.ARGS, tmp_path, "a.csv")
        _, b = run(self.ARGS, tmp_path, "b.csv")
        assert csv_body(a) == csv_body(b)

    def test_thread_count_irrelevant(self, tmp_path):
        _, a = run(self.ARGS + ["--threads", "1"], tmp_path, "a.csv")
        _, b = run(self.ARGS + ["--threads", "6"], tmp_path, "b.csv")
        assert csv_body(a) == csv_body(b)
        _, c = run(["verify-dirichlet", "--N", "500", "--threads", "1"], tmp_path, "c.csv")
        _, d = run(["verify-dirichlet", "--N", "500", "--threads", "5"], tmp_path, "d.csv")
        assert csv_body(c) == csv_body(d)

    def test_round_trip(self, tmp_path):
        code, text = run(["verify-identity", "--which", "M", "--r", "3", "--family", "one", "--x-max", "40",
                          "--step", "3"], tmp_path)
        meta, rows = read_csv_report(tmp_path / "out.csv")
        assert len(rows) == 14 and code == EXIT_OK
        assert [r["pass"] for r in rows] == ["true"] * 14


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "gcdsum", "sieve", "--function", "tau", "--N", "4"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == "n,value\n1,1\n2,2\n3,2\n4,3\n"
    proc = subprocess.run([sys.executable, "-m", "gcdsum", "sieve", "--a", "-2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 2
