import math

import pytest

from accelphase import correlators
from accelphase.cli import main, read_config


def kv(text):
    return dict(line.split("=", 1) for line in text.splitlines() if "=" in line and " " not in line)


def test_crossing_report(capsys):
    assert main(["crossing"]) == 0
    out = kv(capsys.readouterr().out)
    assert 2.68 <= float(out["a_star"]) <= 2.70
    assert float(out["a_star_residual"]) < 1e-12
    assert float(out["a_gamma"]) == pytest.approx(float(out["a_star"]), abs=1e-10)
    assert 0 < float(out["gamma_at_a_gamma"]) < 1


def test_sweep_command(tmp_path, capsys):
    out = tmp_path / "t.csv"
    args = ["sweep", "--variable", "theta", "--start", "0.05", "--stop", "3.09", "--count", "63",
            "--accel", "a_star", "--out", str(out)]
    assert main(args) == 0
    first = out.read_bytes()
    assert first.count(b"\n") == 127
    assert main(args) == 0
    assert out.read_bytes() == first


def test_sweep_plot(tmp_path):
    assert main(["sweep", "--variable", "z", "--start", "0.1", "--stop", "5", "--count", "10",
                 "--out", str(tmp_path / "z.csv"), "--plot", str(tmp_path / "z.svg")]) == 0
    assert (tmp_path / "z.svg").exists()


def test_config_file_and_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sweep defaults\ncount = 7\ntheta = pi/3\nmethods = closed\n")
    out = tmp_path / "c.csv"
    assert main(["--config", str(cfg), "sweep", "--variable", "accel", "--start", "1", "--stop", "2",
                 "--count", "3", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 1 + 3 * 2
    assert all(",closed," in line for line in lines[1:])
    assert read_config(cfg) == [("count", "7"), ("theta", "pi/3"), ("methods", "closed")]


def test_config_unknown_key_is_usage_error(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = red\n")
    assert main(["--config", str(cfg), "crossing"]) == 2


@pytest.mark.parametrize("argv", [
    [],
    ["sweep", "--variable", "theta", "--start", "1", "--stop", "0", "--out", "x.csv"],
    ["sweep", "--variable", "theta", "--start", "x", "--stop", "1", "--out", "x.csv"],
    ["figure", "9"],
    ["figure", "3", "--panel", "z"],
    ["validate", "--profile", "lenient"],
    ["validate", "--checks", "nope"],
])
def test_bad_arguments_exit_2(argv, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(argv) == 2


@pytest.mark.parametrize("fig", ["1", "2"])
def test_right_panel_out_of_scope(fig, tmp_path, capsys):
    assert main(["figure", fig, "--panel", "right", "--out", str(tmp_path)]) == 3
    assert "Jin" in capsys.readouterr().err


def test_figure_data_only(tmp_path):
    assert main(["figure", "4", "--panel", "a", "--count", "20", "--data-only", "--out", str(tmp_path)]) == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["fig4a.csv"]


def test_validate_default_and_strict(capsys):
    assert main(["validate"]) == 0
    assert "all 19 checks passed" in capsys.readouterr().out
    assert main(["validate", "--profile", "strict"]) == 0


def test_validate_catches_corrupted_constant(monkeypatch, capsys):
    monkeypatch.setattr(correlators, "SQRT3", 1.7)
    assert main(["validate"]) == 1
    out = capsys.readouterr().out
    assert "FAIL circular_response_oracle" in out
    assert "circular_response_oracle" in out.splitlines()[-1]


def test_theta_accepts_pi_expressions(tmp_path):
    out = tmp_path / "p.csv"
    assert main(["sweep", "--variable", "accel", "--start", "1", "--stop", "2", "--count", "2",
                 "--theta", "pi/2", "--out", str(out)]) == 0
    values = [float(line.rsplit(",", 1)[1]) for line in out.read_text().splitlines()[1:]]
    assert max(abs(v) for v in values) < 1e-15
