import io

import numpy as np
import pandas as pd
import pytest

from scripts.analysis.commands import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, attach_signed_values, main
from scripts.analysis.csv_output import CYCLE_COLUMNS, STROKE_COLUMNS, SWEEP_COLUMNS, read_csv
from scripts.physics.units import SI
from scripts.thermodynamics.otto_cycle import run_cycle

from .conftest import OMEGA1, OMEGA2


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def frame(text: str) -> pd.DataFrame:
    return pd.read_csv(io.StringIO(text), comment="#")


def test_cycle_without_tilt_reaches_otto_efficiency(capsys):
    code, out, err = run(capsys, "cycle", "--alpha", "0", "--lambda", "0.5")
    assert code == EXIT_OK
    df = frame(out)
    assert list(df.columns) == CYCLE_COLUMNS
    assert df["eta"].iloc[0] == pytest.approx(5 / 6, abs=1e-12)
    assert "OTTO CYCLE" in err


def test_full_period_cycle_ignores_the_tilt(capsys):
    _, tilted, _ = run(capsys, "cycle", "--lambda", "1", "--alpha", "0.7854")
    _, flat, _ = run(capsys, "cycle", "--lambda", "1", "--alpha", "0")
    a, b = frame(tilted).iloc[0], frame(flat).iloc[0]
    for name in ("w_net", "q_h", "q_c"):
        assert a[name] == pytest.approx(b[name], rel=1e-9, abs=1e-9 * SI.hbar * OMEGA1)
    assert a["eta"] == pytest.approx(b["eta"], rel=1e-9)


def test_cycle_needs_lambda(capsys):
    with pytest.raises(SystemExit) as info:
        main(["cycle"])
    assert info.value.code == EXIT_USAGE


def test_unknown_config_key_is_a_usage_error(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("lambda = 0.5\nflux_capacitor = 1\n")
    code, _, err = run(capsys, "cycle", "--config", str(cfg))
    assert code == EXIT_USAGE
    assert "ConfigError" in err


def test_config_file_supplies_lambda(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("lambda = 0.5\nalpha = 0\n")
    code, out, _ = run(capsys, "cycle", "--config", str(cfg))
    assert code == EXIT_OK
    assert frame(out)["lambda"].iloc[0] == 0.5


def test_invalid_physics_exits_with_failure(capsys):
    code, out, err = run(capsys, "cycle", "--lambda", "0.5", "--th-k", "0.05")
    assert code == EXIT_FAILURE
    assert out == ""
    assert "error: ValidationError" in err


def test_sweep_output_is_byte_identical_across_runs(capsys, tmp_path):
    args = ["sweep", "--lambda-grid", "0:1:5", "--alpha-list", "0,0.5"]
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for path in paths:
        assert main(args + ["--out", str(path)]) == EXIT_OK
    assert paths[0].read_bytes() == paths[1].read_bytes()

    text = paths[0].read_text()
    header = [line for line in text.splitlines() if line.startswith("#")]
    assert len(header) == 4
    assert "seed=42" in header[1]
    df = read_csv(paths[0])
    assert list(df.columns) == SWEEP_COLUMNS
    assert len(df) == 10
    assert (df["status"] == "ok").all()
    assert list(df["alpha_rad"]) == [0.0] * 5 + [0.5] * 5


def test_sweep_without_axis_fails(capsys):
    code, _, err = run(capsys, "sweep", "--lambda", "0.5")
    assert code == EXIT_FAILURE
    assert "--lambda-grid" in err


def test_sweep_over_rotation_rates(capsys):
    code, out, _ = run(capsys, "sweep", "--lambda", "0.5", "--omega-grid", "-12:-6:3")
    assert code == EXIT_OK
    np.testing.assert_allclose(frame(out)["omega_ghz"], [-12.0, -9.0, -6.0])


def test_stroke_trace_without_tilt_is_flat(capsys, tmp_path):
    path = tmp_path / "stroke.csv"
    code = main(["stroke", "--alpha", "0", "--lambda", "0.5", "--samples", "21", "--out", str(path)])
    assert code == EXIT_OK
    df = read_csv(path)
    assert list(df.columns) == STROKE_COLUMNS
    assert len(df) == 21
    power_scale = SI.hbar * OMEGA2 * 6e9
    for name in ("q_dot_diag", "coherence_term", "w_L", "adiabaticity_residual"):
        assert np.abs(df[name]).max() <= 1e-9 * power_scale


def test_stroke_trace_ends_at_the_cycle_coherence_work(capsys, tmp_path, reference_params):
    path = tmp_path / "stroke.csv"
    assert main(["stroke", "--lambda", "0.4", "--out", str(path)]) == EXIT_OK
    df = read_csv(path)
    report = run_cycle(reference_params(lam=0.4))
    assert df["w_L"].iloc[-1] == pytest.approx(report.compression.w_coherence, rel=1e-9)
    assert df["t"].iloc[-1] == pytest.approx(report.tau1, rel=1e-12)


def test_expansion_stroke_uses_the_cold_side(capsys, tmp_path, reference_params):
    path = tmp_path / "stroke.csv"
    assert main(["stroke", "--stroke", "expansion", "--lambda", "0.4", "--out", str(path)]) == EXIT_OK
    report = run_cycle(reference_params(lam=0.4))
    assert read_csv(path)["t"].iloc[-1] == pytest.approx(report.tau2, rel=1e-12)


def test_validate_small_ensemble_passes(capsys):
    code, out, err = run(capsys, "validate", "--draws", "3", "--rk4-draws", "1", "--samples", "41")
    assert code == EXIT_OK
    assert "all" in err and "checks passed" in err
    assert not frame(out).empty


def test_validate_catches_injected_error(capsys):
    code, _, err = run(capsys, "validate", "--draws", "5", "--rk4-draws", "0", "--samples", "11", "--inject-error")
    assert code == EXIT_FAILURE
    assert "coherence_work_" in err


def test_sweep_accepts_a_grid_starting_below_zero(capsys):
    code, out, _ = run(capsys, "sweep", "--lambda", "0.5", "--omega-grid", "-20:20:3")
    assert code == EXIT_OK
    df = frame(out)
    np.testing.assert_allclose(df["omega_ghz"], [-20.0, 0.0, 20.0])
    assert (df["status"] == "ok").all()


def test_negative_scalar_rate_in_exponent_form(capsys):
    code, out, _ = run(capsys, "cycle", "--lambda", "0.5", "--omega-ghz", "-6e0", "--alpha", "0")
    assert code == EXIT_OK
    assert frame(out)["omega_ghz"].iloc[0] == -6.0


def test_signed_values_are_attached_to_their_flag():
    argv = ["sweep", "--omega-grid", "-20:20:81", "--lambda", "0.5", "--out", "x.csv", "--omega-ghz=-3"]
    assert attach_signed_values(argv) == [
        "sweep",
        "--omega-grid=-20:20:81",
        "--lambda",
        "0.5",
        "--out",
        "x.csv",
        "--omega-ghz=-3",
    ]
    assert attach_signed_values(["cycle", "--lambda", "--out", "x.csv"]) == ["cycle", "--lambda", "--out", "x.csv"]
    assert attach_signed_values(["cycle", "--lambda"]) == ["cycle", "--lambda"]
