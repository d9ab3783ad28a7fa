"""
Run Configuration
Defaults, key=value config files and grid strings resolved into one frozen
RunConfig; flags given on the command line win over the file, the file wins
over the defaults
"""

import math
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from scripts.physics.errors import ConfigError, ValidationError
from scripts.physics.state import BathSpec
from scripts.physics.units import UnitSystem, get_units
from scripts.thermodynamics.otto_cycle import CycleParams, LambdaBinding
from scripts.validation.ensemble import DEFAULT_DRAWS, DEFAULT_RK4_DRAWS, DEFAULT_SEED
from scripts.thermodynamics.first_law import DEFAULT_TRACE_SAMPLES

SUBCOMMANDS = ("cycle", "sweep", "stroke", "validate")
STROKES = ("compression", "expansion")

# reference operating point: GHz, rad, K
REFERENCE_DEFAULTS = {
    "omega1_ghz": 6.0,
    "omega2_ghz": 1.0,
    "omega_ghz": -6.0,
    "alpha_rad": math.pi / 4,
    "th_k": 1.0,
    "tc_k": 0.1,
}


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    omega1_ghz: float = REFERENCE_DEFAULTS["omega1_ghz"]
    omega2_ghz: float = REFERENCE_DEFAULTS["omega2_ghz"]
    omega_ghz: float = REFERENCE_DEFAULTS["omega_ghz"]
    alpha_rad: float = REFERENCE_DEFAULTS["alpha_rad"]
    th_k: float = REFERENCE_DEFAULTS["th_k"]
    tc_k: float = REFERENCE_DEFAULTS["tc_k"]
    lam: float | None = None
    lambda_grid: tuple[float, ...] | None = None
    omega_grid: tuple[float, ...] | None = None  # GHz
    alpha_list: tuple[float, ...] | None = None
    units: str = "si"
    lambda_binding: str = LambdaBinding.STAGE.value
    jobs: int = 1
    out: Path | None = None
    seed: int = DEFAULT_SEED
    stroke: str = "compression"
    samples: int = DEFAULT_TRACE_SAMPLES
    draws: int = DEFAULT_DRAWS
    rk4_draws: int = DEFAULT_RK4_DRAWS
    inject_error: bool = False
    progress: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise ValidationError(f"unknown subcommand {self.subcommand!r}")
        if self.stroke not in STROKES:
            raise ValidationError(f"stroke must be one of {STROKES}, got {self.stroke!r}")
        get_units(self.units)
        LambdaBinding(self.lambda_binding)
        for name in ("jobs", "samples", "draws"):
            if getattr(self, name) < 1:
                raise ValidationError(f"{name} must be at least 1, got {getattr(self, name)}")
        if self.rk4_draws < 0:
            raise ValidationError(f"rk4_draws must be non-negative, got {self.rk4_draws}")
        for name in ("lambda_grid", "omega_grid", "alpha_list"):
            axis = getattr(self, name)
            if axis is not None and len(axis) == 0:
                raise ValidationError(f"{name} is empty")

    @property
    def unit_system(self) -> UnitSystem:
        return get_units(self.units)

    def cycle_params(self, lam: float | None = None) -> CycleParams:
        """CycleParams in the configured unit system; frequencies leave GHz here"""
        units = self.unit_system
        lam = self.lam if lam is None else lam
        if lam is None:
            raise ValidationError("lambda is not set")
        scale = units.frequency_scale
        return CycleParams(
            omega1=self.omega1_ghz * scale,
            omega2=self.omega2_ghz * scale,
            alpha=self.alpha_rad,
            omega=self.omega_ghz * scale,
            lam=lam,
            hot=BathSpec(self.th_k, units),
            cold=BathSpec(self.tc_k, units),
            binding=LambdaBinding(self.lambda_binding),
        )

    def echo(self) -> dict[str, object]:
        """Parameters worth repeating in an output header"""
        skip = {"subcommand", "out", "progress", "jobs"}
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name not in skip}


def parse_grid(text: str) -> tuple[float, ...]:
    """'start:stop:count' -> count evenly spaced values, both ends included"""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValidationError(f"grid must look like start:stop:count, got {text!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError:
        raise ValidationError(f"grid must look like start:stop:count, got {text!r}") from None
    if count < 1:
        raise ValidationError(f"grid count must be at least 1, got {count}")
    if not (math.isfinite(start) and math.isfinite(stop)):
        raise ValidationError(f"grid ends must be finite, got {text!r}")
    return tuple(float(v) for v in np.linspace(start, stop, count))


def parse_list(text: str) -> tuple[float, ...]:
    """'v1,v2,...' -> floats"""
    items = [item.strip() for item in text.split(",") if item.strip()]
    if not items:
        raise ValidationError(f"empty value list {text!r}")
    try:
        return tuple(float(item) for item in items)
    except ValueError:
        raise ValidationError(f"value list must be comma-separated numbers, got {text!r}") from None


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(text)


# config-file key -> (RunConfig field, parser)
CONFIG_KEYS = {
    "omega1_ghz": ("omega1_ghz", float),
    "omega2_ghz": ("omega2_ghz", float),
    "omega_ghz": ("omega_ghz", float),
    "alpha_rad": ("alpha_rad", float),
    "alpha": ("alpha_rad", float),
    "th_k": ("th_k", float),
    "tc_k": ("tc_k", float),
    "lambda": ("lam", float),
    "lambda_grid": ("lambda_grid", parse_grid),
    "omega_grid": ("omega_grid", parse_grid),
    "alpha_list": ("alpha_list", parse_list),
    "units": ("units", str),
    "lambda_binding": ("lambda_binding", str),
    "jobs": ("jobs", int),
    "out": ("out", Path),
    "seed": ("seed", int),
    "stroke": ("stroke", str),
    "samples": ("samples", int),
    "draws": ("draws", int),
    "rk4_draws": ("rk4_draws", int),
    "inject_error": ("inject_error", _parse_bool),
    "progress": ("progress", _parse_bool),
}


def read_config_file(path: Path) -> dict[str, object]:
    """
    Parse key=value lines into RunConfig field values

    Blank lines and '#' comments are skipped; keys may use '-' or '_'.
    Unknown keys and unparsable values raise ConfigError.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None

    values = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{number}: expected key=value, got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_").lower()
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{path}:{number}: unknown key {key!r}")
        name, parser = CONFIG_KEYS[key]
        try:
            values[name] = parser(value)
        except (ValueError, ValidationError) as exc:
            raise ConfigError(f"{path}:{number}: bad value for {key}: {exc}") from None
    return values


def resolve_config(subcommand: str, cli_values: dict[str, object], config_path: Path | None = None) -> RunConfig:
    """Defaults < config file < explicit flags"""
    cfg = RunConfig(subcommand=subcommand)
    if config_path is not None:
        cfg = replace(cfg, **read_config_file(config_path))
    return replace(cfg, **{k: v for k, v in cli_values.items() if v is not None})
