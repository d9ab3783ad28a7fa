import math

import pytest

from scripts.analysis.run_config import REFERENCE_DEFAULTS, RunConfig, parse_grid, parse_list, read_config_file, resolve_config
from scripts.physics.errors import ConfigError, ValidationError
from scripts.physics.units import NATURAL


def test_parse_grid():
    assert parse_grid("0:1:5") == (0.0, 0.25, 0.5, 0.75, 1.0)
    assert parse_grid("2:3:1") == (2.0,)
    for bad in ("0:1", "a:b:3", "0:1:0", "0:inf:3"):
        with pytest.raises(ValidationError):
            parse_grid(bad)


def test_parse_list():
    assert parse_list("0, 0.5,1") == (0.0, 0.5, 1.0)
    for bad in ("", " , ", "x,1"):
        with pytest.raises(ValidationError):
            parse_list(bad)


def test_defaults_are_the_reference_operating_point():
    cfg = RunConfig(subcommand="cycle", lam=0.5)
    cp = cfg.cycle_params()
    assert cp.omega1 == 6e9
    assert cp.omega2 == 1e9
    assert cp.omega == -6e9
    assert cp.alpha == pytest.approx(math.pi / 4)
    assert (cp.hot.temperature, cp.cold.temperature) == (1.0, 0.1)
    assert REFERENCE_DEFAULTS["alpha_rad"] == cfg.alpha_rad


def test_natural_units_leave_frequencies_unscaled():
    cp = RunConfig(subcommand="cycle", lam=0.5, units="natural", th_k=2.0, tc_k=0.5).cycle_params()
    assert cp.omega1 == 6.0
    assert cp.units is NATURAL


def test_missing_lambda_is_reported():
    with pytest.raises(ValidationError):
        RunConfig(subcommand="cycle").cycle_params()


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(subcommand="plot"),
        dict(subcommand="cycle", units="cgs"),
        dict(subcommand="cycle", lambda_binding="sideways"),
        dict(subcommand="cycle", jobs=0),
        dict(subcommand="stroke", stroke="isochore"),
        dict(subcommand="sweep", alpha_list=()),
    ],
)
def test_run_config_validation(kwargs):
    with pytest.raises(ValueError):
        RunConfig(**kwargs)


def test_config_file_parsing(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# engine\nomega-ghz = -12\nlambda=0.25  # quarter period\n\nalpha_list = 0,0.5\nprogress = yes\n")
    values = read_config_file(path)
    assert values == {"omega_ghz": -12.0, "lam": 0.25, "alpha_list": (0.0, 0.5), "progress": True}


@pytest.mark.parametrize("text", ["colour = blue\n", "lambda = fast\n", "just words\n", "lambda_grid = 0:1\n"])
def test_config_file_errors(tmp_path, text):
    path = tmp_path / "bad.cfg"
    path.write_text(text)
    with pytest.raises(ConfigError):
        read_config_file(path)


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError):
        read_config_file(tmp_path / "absent.cfg")


def test_precedence_flags_over_file_over_defaults(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("omega_ghz = -12\nlambda = 0.25\nth_k = 2\n")
    cfg = resolve_config("cycle", {"lam": 0.75, "th_k": None}, path)
    assert cfg.lam == 0.75
    assert cfg.omega_ghz == -12.0
    assert cfg.th_k == 2.0
    assert cfg.omega1_ghz == REFERENCE_DEFAULTS["omega1_ghz"]
