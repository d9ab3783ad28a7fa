import math

import pytest

from scripts.physics.dynamics import FieldProtocol
from scripts.physics.state import BathSpec
from scripts.physics.units import NATURAL, SI
from scripts.thermodynamics.otto_cycle import CycleParams

GHZ = SI.frequency_scale
OMEGA1 = 6.0 * GHZ
OMEGA2 = 1.0 * GHZ
OMEGA = -6.0 * GHZ
ALPHA = math.pi / 4
SEED = 42


@pytest.fixture
def hot_bath():
    return BathSpec(1.0)


@pytest.fixture
def cold_bath():
    return BathSpec(0.1)


@pytest.fixture
def reference_params(hot_bath, cold_bath):
    """Factory for the reference parameter set with overrides"""

    def make(lam=0.5, alpha=ALPHA, omega=OMEGA, **overrides):
        values = dict(
            omega1=OMEGA1,
            omega2=OMEGA2,
            alpha=alpha,
            omega=omega,
            lam=lam,
            hot=hot_bath,
            cold=cold_bath,
        )
        values.update(overrides)
        return CycleParams(**values)

    return make


@pytest.fixture
def compression_drive():
    """Stage-I drive at the reference parameters, half a Rabi period long"""
    p = FieldProtocol(OMEGA2, ALPHA, OMEGA)
    return FieldProtocol(OMEGA2, ALPHA, OMEGA, duration=0.5 * p.rabi_period())


@pytest.fixture
def natural_drive():
    p = FieldProtocol(1.0, 0.6, -2.5, units=NATURAL)
    return FieldProtocol(1.0, 0.6, -2.5, duration=1.3 * p.rabi_period(), units=NATURAL)
