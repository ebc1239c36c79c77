import json
import os

import numpy as np
import pytest

from tuecount import studies
from tuecount.cli import main
from tuecount.exact_mgf import log_mgf_exact
from tuecount.model import make_params


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestExactCommand:
    def test_matches_library_bitwise(self, capsys):
        code, out, _ = run_cli(
            capsys, "exact", "--n", "500", "--alpha", "10", "--t", "4,1",
            "--u", "0.5,-0.3",
        )
        assert code == 0
        obj = json.loads(out)
        p = make_params(500, 10.0, 2, (4.0, 1.0), (0.5, -0.3))
        assert obj["log_mgf"] == log_mgf_exact(p).log_mgf
        assert set(obj) == {"n", "alpha", "t", "u", "log_mgf", "elapsed_ms"}

    def test_zero_u(self, capsys):
        code, out, _ = run_cli(
            capsys, "exact", "--n", "100", "--alpha", "2", "--t", "1", "--u", "0"
        )
        assert code == 0
        assert json.loads(out)["log_mgf"] == 0.0

    def test_validation_exit_code(self, capsys):
        code, _, err = run_cli(
            capsys, "exact", "--n", "500", "--alpha", "10", "--t", "1,4",
            "--u", "0.5,-0.3",
        )
        assert code == 2
        assert "strictly decreasing" in err

    def test_config_file_with_flag_override(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"n": 100, "alpha": 2.0, "t": [1.0], "u": [0.3]}))
        code, out, _ = run_cli(capsys, "exact", "--config", str(cfg))
        assert code == 0
        base = json.loads(out)["log_mgf"]
        code, out, _ = run_cli(
            capsys, "exact", "--config", str(cfg), "--u", "0.6"
        )
        over = json.loads(out)["log_mgf"]
        assert over != base
        p = make_params(100, 2.0, 1, (1.0,), (0.6,))
        assert over == log_mgf_exact(p).log_mgf


class TestAsymptoticAndCumulants:
    def test_asymptotic_json(self, capsys):
        code, out, _ = run_cli(
            capsys, "asymptotic", "--n", "800", "--alpha", "1", "--t", "1",
            "--u", "0.5",
        )
        assert code == 0
        obj = json.loads(out)
        assert obj["exponent"] == 1.0
        assert abs(obj["predicted_log_mgf"] - (obj["C1"] * 800 + obj["C2"])) < 1e-12

    def test_cumulants_json(self, capsys):
        code, out, _ = run_cli(
            capsys, "cumulants", "--alpha", "2", "--t", "4,1"
        )
        assert code == 0
        obj = json.loads(out)
        for key in ("C1", "C2", "exponent", "b1", "c1", "b11", "c11", "Sigma"):
            assert key in obj
        assert len(obj["b1"]) == 2
        assert obj["Sigma"][0][0] == pytest.approx(1.0)


class TestConvergenceCommand:
    def test_csv_shape_and_slope_line(self, capsys):
        code, out, _ = run_cli(
            capsys, "convergence", "--alpha", "1", "--t", "1", "--u", "0.5",
            "--n-min", "100", "--n-max", "400", "--factor", "2", "--threads", "1",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "n,exact,predicted,abs_error"
        assert len(lines) == 5  # header + 3 rows + slope comment
        assert lines[-1].startswith("# fitted_slope=")
        n_values = [int(l.split(",")[0]) for l in lines[1:-1]]
        assert n_values == [100, 200, 400]

    def test_zero_u_noise_floor(self, capsys):
        code, out, _ = run_cli(
            capsys, "convergence", "--alpha", "1", "--t", "1", "--u", "0",
            "--n-min", "100", "--n-max", "200", "--factor", "2",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert "noise floor" in lines[-1]
        errs = [float(l.split(",")[3]) for l in lines[1:-1]]
        assert all(e <= 1e-10 for e in errs)

    def test_threads_reproduce_serial(self, capsys):
        args = ["convergence", "--alpha", "0.5", "--t", "2", "--u", "0.4",
                "--n-min", "100", "--n-max", "400", "--factor", "2"]
        _, serial, _ = run_cli(capsys, *args, "--threads", "1")
        _, par, _ = run_cli(capsys, *args, "--threads", "2")
        assert serial == par

    def test_validation(self, capsys):
        code, _, err = run_cli(
            capsys, "convergence", "--alpha", "1", "--t", "1", "--u", "0.5",
            "--n-min", "10",
        )
        assert code == 2
        assert "n_min" in err


class TestSampleCommand:
    def test_reproducible_json(self, capsys):
        args = ("sample", "--n", "30", "--alpha", "2", "--t", "1",
                "--samples", "50", "--seed", "5", "--source", "kostlan",
                "--threads", "1")
        code, out1, _ = run_cli(capsys, *args)
        assert code == 0
        code, out2, _ = run_cli(capsys, *args)
        assert out1 == out2
        obj = json.loads(out1)
        assert obj["n_samples"] == 50
        assert len(obj["mean"]) == 1

    def test_points_dir(self, capsys, tmp_path):
        out_dir = tmp_path / "clouds"
        code, out, _ = run_cli(
            capsys, "sample", "--n", "10", "--alpha", "2", "--t", "1",
            "--samples", "3", "--seed", "1", "--source", "haar",
            "--points-dir", str(out_dir), "--threads", "1",
        )
        assert code == 0
        files = sorted(os.listdir(out_dir))
        assert files == ["cloud_0000.csv", "cloud_0001.csv", "cloud_0002.csv"]
        lines = (out_dir / "cloud_0000.csv").read_text().splitlines()
        assert lines[0] == "re,im"
        assert len(lines) == 11

    def test_points_dir_rejected_for_kostlan(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys, "sample", "--n", "10", "--alpha", "2", "--t", "1",
            "--samples", "2", "--source", "kostlan",
            "--points-dir", str(tmp_path / "x"),
        )
        assert code == 2


class TestCltCommand:
    def test_degenerate_radius_is_validation_error(self, capsys):
        code, _, err = run_cli(
            capsys, "clt", "--n", "100", "--alpha", "2", "--t", "1,0",
            "--samples", "100",
        )
        assert code == 2
        assert "t_m" in err or "deterministic" in err

    def test_single_radius_report(self, capsys):
        code, out, _ = run_cli(
            capsys, "clt", "--n", "100", "--alpha", "1", "--t", "1",
            "--samples", "400", "--seed", "3", "--threads", "1",
        )
        assert code == 0
        obj = json.loads(out)
        assert obj["sigma_predicted"] == [[1.0]]
        assert len(obj["ks_distance"]) == 1
        assert obj["empirical_corr"] == [[1.0]]


class TestFiguresCommand:
    def test_fig1(self, capsys, tmp_path):
        code, out, _ = run_cli(
            capsys, "figures", "--which", "fig1", "--outdir", str(tmp_path),
            "--seed", "1",
        )
        assert code == 0
        written = json.loads(out)["written"]
        assert len(written) == 3
        for path in written:
            lines = open(path).read().splitlines()
            assert lines[0] == "re,im"
            assert len(lines) == 501  # header + 500 points

    def test_fig3(self, capsys, tmp_path):
        code, out, _ = run_cli(
            capsys, "figures", "--which", "fig3", "--outdir", str(tmp_path)
        )
        assert code == 0
        written = json.loads(out)["written"]
        assert sorted(os.path.basename(p) for p in written) == [
            "fig3_b1.csv",
            "fig3_b11.csv",
        ]
        b1_lines = open(written[0]).read().splitlines()
        assert b1_lines[0] == "t,alpha_0.34,alpha_1.24,alpha_2.24,alpha_5.24"
        data = np.array([[float(x) for x in l.split(",")] for l in b1_lines[1:]])
        assert np.all((data[:, 1:] >= 0.0) & (data[:, 1:] <= 1.0))
        # small-t limit convention b1 -> 1 (approach is O(t^alpha), so check
        # the alpha = 1.24 curve, where it is already tight at t = 0.01)
        assert data[0, 2] > 0.99

    def test_io_error_exit_code(self, capsys):
        code, _, err = run_cli(
            capsys, "figures", "--which", "fig3",
            "--outdir", "/proc/nonexistent/dir",
        )
        assert code == 4


class TestThreadsAndErrors:
    def test_tue_threads_env_override(self, capsys, monkeypatch):
        args = ["convergence", "--alpha", "1", "--t", "1", "--u", "0.3",
                "--n-min", "100", "--n-max", "200", "--factor", "2"]
        _, serial, _ = run_cli(capsys, *args, "--threads", "1")
        monkeypatch.setenv("TUE_THREADS", "2")
        code, env_out, _ = run_cli(capsys, *args)
        assert code == 0
        assert env_out == serial

    def test_numerical_failure_exit_code(self, capsys, monkeypatch):
        from tuecount import cli
        from tuecount.errors import NonConvergenceError

        def boom(*a, **k):
            raise NonConvergenceError("synthetic")

        monkeypatch.setattr(cli, "log_mgf_exact", boom)
        code, _, err = run_cli(
            capsys, "exact", "--n", "10", "--alpha", "1", "--t", "0.5", "--u", "0.1"
        )
        assert code == 3
        assert "numerical failure" in err


class TestCsvFormatting:
    def test_fmt17_round_trip(self, rng):
        for _ in range(200):
            x = float(rng.normal() * 10.0 ** rng.integers(-8, 8))
            assert float(studies.fmt17(x)) == x
