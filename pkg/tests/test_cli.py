import re
from pathlib import Path

import pytest

from eerpms.cli import main

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestTheory:
    def test_default_operating_point(self, capsys):
        code, out, _ = run_cli(capsys, "theory", "--nodes", "100", "--radius", "150")
        assert code == 0
        assert "K* = 9" in out
        d_star = float(re.search(r"d\* = ([\d.]+) m", out).group(1))
        assert d_star == pytest.approx(91.74, abs=0.01)
        assert "d* inside feasible band: no" in out

    def test_reads_radio_from_config(self, capsys):
        code, out, _ = run_cli(capsys, "theory", "--config",
                               str(CONFIGS / "default.ini"))
        assert code == 0
        assert "d_th = 87.7058 m" in out

    def test_small_population(self, capsys):
        code, out, _ = run_cli(capsys, "theory", "--nodes", "1", "--radius", "50")
        assert code == 0
        assert "K* = 2" in out


class TestSimulate:
    def test_writes_rounds_csv(self, capsys, tmp_path):
        code, out, _ = run_cli(capsys, "simulate", "--seed", "2",
                               "--protocol", "RLEACH", "--max-rounds", "40",
                               "--out", str(tmp_path))
        assert code == 0
        path = tmp_path / "rounds_RLEACH_seed2.csv"
        assert path.is_file()
        assert str(path) in out
        assert len(path.read_text().splitlines()) == 41

    def test_env_var_output_dir(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("EERPMS_OUT_DIR", str(tmp_path / "env_out"))
        code, _, _ = run_cli(capsys, "simulate", "--seed", "1",
                             "--max-rounds", "5")
        assert code == 0
        assert (tmp_path / "env_out" / "rounds_EERPMS_seed1.csv").is_file()

    def test_flag_beats_env_var(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("EERPMS_OUT_DIR", str(tmp_path / "env_out"))
        code, _, _ = run_cli(capsys, "simulate", "--seed", "1",
                             "--max-rounds", "5", "--out", str(tmp_path / "flag"))
        assert code == 0
        assert (tmp_path / "flag" / "rounds_EERPMS_seed1.csv").is_file()
        assert not (tmp_path / "env_out").exists()

    def test_missing_config_file_is_config_error(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "simulate", "--config",
                               str(tmp_path / "absent.ini"))
        assert code == 1
        assert "error" in err

    def test_bad_flag_value_is_config_error(self, capsys):
        code, _, _ = run_cli(capsys, "simulate", "--protocol", "FIGWO")
        assert code == 1


class TestSweep:
    def test_runs_spec_file(self, capsys, tmp_path):
        spec = tmp_path / "exp.ini"
        spec.write_text(
            "[experiment]\n"
            "protocols = RLEACH\n"
            "seeds = 1, 2\n"
            "output_dir = unused\n"
            "[network]\n"
            "node_count = 10\n"
            "max_rounds = 30\n"
        )
        code, out, _ = run_cli(capsys, "sweep", str(spec), "--out",
                               str(tmp_path / "results"))
        assert code == 0
        assert (tmp_path / "results" / "summary.csv").is_file()
        assert out.count("wrote") == 3  # 2 round files + summary

    def test_invalid_spec_exit_code(self, capsys, tmp_path):
        spec = tmp_path / "exp.ini"
        spec.write_text("[experiment]\nseeds =\n")
        code, _, err = run_cli(capsys, "sweep", str(spec))
        assert code == 1
        assert "error" in err


class TestVerify:
    def test_quick_run_emits_landscapes(self, capsys, tmp_path):
        code, out, _ = run_cli(
            capsys, "verify", "--out", str(tmp_path), "--seeds", "2",
            "--mc-samples", "20000", "--histograms", "3")
        assert code == 0
        assert (tmp_path / "landscape_analytic.csv").is_file()
        assert (tmp_path / "landscape_simulated.csv").is_file()
        assert "[thresholds] 3/3" in out
        assert "[wedge-mc]" in out
        assert re.search(r"\[landscape\] analytic argmin: K=\d+", out)
        assert "[coverage]" in out


class TestParsing:
    def test_unknown_subcommand_is_config_error(self, capsys):
        code, _, _ = run_cli(capsys, "frobnicate")
        assert code == 1

    def test_missing_subcommand_is_config_error(self, capsys):
        code, _, _ = run_cli(capsys)
        assert code == 1
