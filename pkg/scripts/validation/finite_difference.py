"""
Finite-Difference Population Rates
Second-order stencils for d/dt of instantaneous-basis populations
"""

import math

import numpy as np

from scripts.physics.dynamics import FieldProtocol
from scripts.physics.errors import ValidationError
from scripts.physics.state import StateTrajectory, instantaneous_elements


def default_step(p: FieldProtocol) -> float:
    """h = min(1e-4/Omega_j, 1e-4/|omega|), ignoring rates that vanish"""
    rates = [r for r in (p.rabi_omega(), abs(p.omega)) if r > 0]
    if not rates:
        rates = [p.omega_j]
    return min(1e-4 / r for r in rates)


def _populations(p: FieldProtocol, rho_traj: StateTrajectory, s: float) -> np.ndarray:
    s = min(max(s, 0.0), p.duration)
    elements = instantaneous_elements(p, rho_traj(s), s)
    return np.array([elements.rho_pp, elements.rho_mm])


def population_derivative(p: FieldProtocol, rho_traj: StateTrajectory, t: float, h: float) -> np.ndarray:
    """d/dt (rho++, rho--), central inside the stroke, one-sided at its ends"""
    if p.duration == 0.0:
        return np.zeros(2)
    h = min(h, p.duration / 2)

    if t - h < 0.0:
        f0, f1, f2 = (_populations(p, rho_traj, t + k * h) for k in range(3))
        return (-3 * f0 + 4 * f1 - f2) / (2 * h)
    if t + h > p.duration:
        f0, f1, f2 = (_populations(p, rho_traj, t - k * h) for k in range(3))
        return (3 * f0 - 4 * f1 + f2) / (2 * h)
    return (_populations(p, rho_traj, t + h) - _populations(p, rho_traj, t - h)) / (2 * h)


def fd_population_rate(p: FieldProtocol, rho_traj: StateTrajectory, t: float, h: float | None = None) -> float:
    """sum_n d(rho_nn)/dt E_n, the diagonal heat rate"""
    if h is None:
        h = default_step(p)
    if not math.isfinite(h) or h <= 0:
        raise ValidationError(f"finite-difference step must be positive, got {h}")
    rates = population_derivative(p, rho_traj, t, h)
    half_gap = p.units.hbar * p.omega_j / 2
    return float(rates[0] * half_gap - rates[1] * half_gap)
