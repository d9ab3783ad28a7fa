import math

import numpy as np
import pytest
from scipy.integrate import quad

from scripts.physics.dynamics import FieldProtocol, propagator_lab
from scripts.physics.errors import IntegratorError, QuadratureError, ValidationError
from scripts.physics.state import evolve_stroke, stroke_trajectory, thermal_state, trace_distance
from scripts.physics.units import SI
from scripts.thermodynamics.first_law import coherence_power_closed_form, coherence_work
from scripts.validation.oracle import (
    IntegratorConfig,
    adaptive_simpson,
    fd_population_rate,
    integrate_lvn,
    integrate_propagator,
    quad_coherence_work,
)

from .conftest import ALPHA, OMEGA, OMEGA1, OMEGA2


@pytest.fixture
def two_period_drive():
    p = FieldProtocol(OMEGA2, ALPHA, OMEGA)
    return FieldProtocol(OMEGA2, ALPHA, OMEGA, duration=2 * p.rabi_period())


def test_lvn_with_alpha_zero_keeps_thermal_state(hot_bath):
    p = FieldProtocol(OMEGA2, 0.0, OMEGA, duration=3e-9)
    rho0 = thermal_state(OMEGA1, hot_bath)
    rho = integrate_lvn(p, rho0, p.duration)
    np.testing.assert_allclose(rho.mat, rho0.mat, atol=1e-10)


def test_lvn_matches_exact_propagator(two_period_drive, hot_bath):
    p = two_period_drive
    rho0 = thermal_state(OMEGA1, hot_bath)
    rho = integrate_lvn(p, rho0, p.duration)
    assert trace_distance(rho, evolve_stroke(p, rho0, p.duration)) < 1e-6
    np.testing.assert_allclose(rho.spectrum(), rho0.spectrum(), atol=1e-8)
    assert abs(np.trace(rho.mat) - 1) < 1e-10


def test_lvn_converges_at_fourth_order(two_period_drive, hot_bath):
    p = two_period_drive
    rho0 = thermal_state(OMEGA1, hot_bath)
    exact = evolve_stroke(p, rho0, p.duration)
    errors = [
        trace_distance(integrate_lvn(p, rho0, p.duration, IntegratorConfig(step=p.duration / n)), exact)
        for n in (240, 480)
    ]
    assert 13 < errors[0] / errors[1] < 19


def test_propagator_oracle(two_period_drive):
    p = two_period_drive
    np.testing.assert_allclose(integrate_propagator(p, p.duration), propagator_lab(p, p.duration), atol=1e-8)


def test_trace_drift_raises_with_diagnostics(two_period_drive, hot_bath):
    cfg = IntegratorConfig(trace_tolerance=-1.0)
    with pytest.raises(IntegratorError) as info:
        integrate_lvn(two_period_drive, thermal_state(OMEGA1, hot_bath), two_period_drive.duration, cfg)
    assert info.value.diagnostics["step"] == 0


@pytest.mark.parametrize(
    "kwargs",
    [dict(method="euler"), dict(steps_per_rabi_period=10), dict(step=0.0), dict(step=-1e-12)],
)
def test_integrator_config_validation(kwargs):
    with pytest.raises(ValidationError):
        IntegratorConfig(**kwargs)


def test_adaptive_simpson_on_known_integrals():
    assert adaptive_simpson(math.sin, 0.0, math.pi) == pytest.approx(2.0, rel=1e-10)
    gauss = lambda x: math.exp(-x * x)
    assert adaptive_simpson(gauss, -3.0, 2.0) == pytest.approx(quad(gauss, -3.0, 2.0, epsabs=0, epsrel=1e-13)[0], rel=1e-10)
    assert adaptive_simpson(math.cos, 1.0, 1.0) == 0.0
    assert adaptive_simpson(lambda x: 0.0, 0.0, 1.0) == 0.0


def test_adaptive_simpson_reports_non_convergence():
    step = lambda x: 1.0 if x > 1 / 3 else 0.0
    with pytest.raises(QuadratureError):
        adaptive_simpson(step, 0.0, 1.0, rtol=1e-12, max_depth=8)


def test_quad_coherence_work_alpha_zero(hot_bath):
    p = FieldProtocol(OMEGA2, 0.0, OMEGA)
    assert quad_coherence_work(p, hot_bath, OMEGA1, 1e-9) == 0.0


def test_quad_coherence_work_full_period(hot_bath):
    p = FieldProtocol(OMEGA2, ALPHA, OMEGA)
    w = quad_coherence_work(p, hot_bath, OMEGA1, p.rabi_period())
    assert abs(w) < 1e-12 * SI.hbar * OMEGA2


@pytest.mark.parametrize("lam", [0.13, 0.5, 0.77, 1.4])
def test_quad_coherence_work_matches_closed_form(hot_bath, lam):
    p = FieldProtocol(OMEGA2, ALPHA, OMEGA)
    t = lam * p.rabi_period()
    closed = coherence_work(OMEGA2, OMEGA1, ALPHA, hot_bath, t, OMEGA)
    assert quad_coherence_work(p, hot_bath, OMEGA1, t) == pytest.approx(closed, rel=1e-8)


def test_fd_rate_vanishes_without_tilt(hot_bath):
    p = FieldProtocol(OMEGA2, 0.0, OMEGA, duration=1e-9)
    rho_of_t = stroke_trajectory(p, thermal_state(OMEGA1, hot_bath))
    assert abs(fd_population_rate(p, rho_of_t, 0.5e-9)) < 1e-6 * SI.hbar * OMEGA2 * abs(OMEGA)


def test_fd_rate_converges_at_second_order(hot_bath):
    base = FieldProtocol(OMEGA2, ALPHA, OMEGA)
    p = FieldProtocol(OMEGA2, ALPHA, OMEGA, duration=0.5 * base.rabi_period())
    rho_of_t = stroke_trajectory(p, thermal_state(OMEGA1, hot_bath))
    t = p.duration / 3
    exact = coherence_power_closed_form(OMEGA2, OMEGA1, ALPHA, hot_bath, t, OMEGA)
    h = 1e-2 / p.rabi_omega()
    coarse = abs(fd_population_rate(p, rho_of_t, t, h) - exact)
    fine = abs(fd_population_rate(p, rho_of_t, t, h / 2) - exact)
    assert 3.5 < coarse / fine < 4.5


def test_fd_rate_rejects_bad_step(compression_drive, hot_bath):
    rho_of_t = stroke_trajectory(compression_drive, thermal_state(OMEGA1, hot_bath))
    with pytest.raises(ValidationError):
        fd_population_rate(compression_drive, rho_of_t, 0.0, h=-1.0)
