"""
Unit Systems
Physical constants and the frequency convention used by the CLI
"""

from dataclasses import dataclass

from .errors import ValidationError


@dataclass(frozen=True)
class UnitSystem:
    """Constants shared by a protocol, its bath and its observables"""

    name: str
    hbar: float  # J*s
    k_b: float  # J/K
    frequency_scale: float  # rad/s per CLI frequency unit


# CODATA 2018; "GHz" on the command line means 1e9 rad/s
SI = UnitSystem(name="si", hbar=1.054571817e-34, k_b=1.380649e-23, frequency_scale=1e9)
NATURAL = UnitSystem(name="natural", hbar=1.0, k_b=1.0, frequency_scale=1.0)

UNIT_SYSTEMS = {SI.name: SI, NATURAL.name: NATURAL}


def get_units(name: str) -> UnitSystem:
    """Look up a unit system by its CLI name"""
    try:
        return UNIT_SYSTEMS[name]
    except KeyError:
        raise ValidationError(f"unknown unit system {name!r} (expected one of {sorted(UNIT_SYSTEMS)})") from None
