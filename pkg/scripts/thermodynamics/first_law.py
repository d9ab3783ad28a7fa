"""
First Law With Coherence
Heat and work rates split into population and coherence parts, the
coherence work of a rotating stroke, the work of the sudden field switches
and per-stroke energy ledgers
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np

from scripts.physics.algebra import ComplexMat2, matrix_element
from scripts.physics.dynamics import FieldProtocol, dH_dt, eigenframe, hamiltonian, quantum_adiabatic_parameter
from scripts.physics.errors import ThermodynamicsError, ValidationError
from scripts.physics.state import (
    BathSpec,
    DensityMatrix,
    StateTrajectory,
    evolve_stroke,
    instantaneous_elements,
    stroke_trajectory,
    thermal_state,
)
from scripts.validation.finite_difference import default_step, fd_population_rate

DEFAULT_TRACE_SAMPLES = 401

# |q| allowed on an adiabatic stroke, relative to max(|W|, hbar omega_j)
CLOSURE_TOL = 1e-9

# adiabaticity residual bound, relative to hbar omega_j max(Omega_j, |omega|)
RESIDUAL_TOL = 1e-6


@dataclass(frozen=True)
class PowerSplit:
    """Heat and work rates at one instant of a stroke"""

    at_time: float
    q_dot_diag: float  # sum_n d(rho_nn)/dt E_n
    coherence_term: float  # sum_{n!=m} rho_nm <m|dH/dt|n>
    coherence_imag: float  # numerical residual, should vanish
    q_dot: float
    w_dot: float


@dataclass(frozen=True)
class StrokeLedger:
    """Energy accounting of one thermodynamic adiabatic stroke"""

    protocol: FieldProtocol
    omega_start: float
    w_coherence: float
    w_switch_on: float
    w_switch_off: float
    w_sudden: float
    w_total: float
    delta_u: float
    q: float
    final_state: DensityMatrix = field(repr=False)
    qa_parameter: float = 0.0
    trace: tuple[PowerSplit, ...] = field(default=(), repr=False)

    def trace_table(self) -> dict[str, np.ndarray]:
        """Columns of the time-resolved trace"""
        names = ("at_time", "q_dot_diag", "coherence_term", "coherence_imag", "q_dot", "w_dot")
        return {name: np.array([getattr(s, name) for s in self.trace]) for name in names}


def internal_energy(h: ComplexMat2, rho: DensityMatrix) -> float:
    """U = Tr(H rho)"""
    return rho.expectation(h)


def _z_field(p: FieldProtocol) -> FieldProtocol:
    """The same field flipped back onto the z axis"""
    return replace(p, alpha=0.0)


def _polarization(omega_start: float, bath: BathSpec) -> float:
    return math.tanh(bath.beta * bath.units.hbar * omega_start / 2)


def coherence_sum(p: FieldProtocol, rho: DensityMatrix, t: float) -> complex:
    """sum_{n!=m} rho_nm <m|dH/dt|n> in the instantaneous eigenbasis, as a complex number"""
    frame = eigenframe(p, t)
    elements = instantaneous_elements(p, rho, t)
    dh = dH_dt(p, t)
    plus_to_minus = matrix_element(frame.chi_minus, dh, frame.chi_plus)
    minus_to_plus = matrix_element(frame.chi_plus, dh, frame.chi_minus)
    return elements.rho_pm * plus_to_minus + elements.rho_mp * minus_to_plus


def coherence_power(p: FieldProtocol, rho: DensityMatrix, t: float) -> float:
    """Work rate carried by the instantaneous-basis coherences"""
    return coherence_sum(p, rho, t).real


def coherence_power_closed_form(
    omega_end: float, omega_start: float, alpha: float, bath: BathSpec, t: float, omega: float
) -> float:
    """hbar w w_end^2 sin(Omega t) sin^2 a tanh(beta hbar w_start / 2) / (2 Omega) for a thermal start"""
    p = FieldProtocol(omega_end, alpha, omega, units=bath.units)
    rabi = p.rabi_omega()
    sin_ratio = t if p.is_degenerate() else math.sin(rabi * t) / rabi
    return (
        bath.units.hbar * omega * omega_end**2 * sin_ratio * math.sin(alpha) ** 2
        * _polarization(omega_start, bath) / 2
    )


def coherence_work(
    omega_end: float, omega_start: float, alpha: float, bath: BathSpec, t: float, omega: float
) -> float:
    """W_L = hbar w w_end^2 sin^2(Omega t / 2) sin^2 a tanh(beta hbar w_start / 2) / Omega^2"""
    p = FieldProtocol(omega_end, alpha, omega, units=bath.units)
    rabi = p.rabi_omega()
    if p.is_degenerate():
        sin2_ratio = (t / 2) ** 2
    else:
        sin2_ratio = (math.sin(rabi * t / 2) / rabi) ** 2
    return (
        bath.units.hbar * omega * omega_end**2 * sin2_ratio * math.sin(alpha) ** 2
        * _polarization(omega_start, bath)
    )


def switch_work(p: FieldProtocol, bath: BathSpec, omega_start: float) -> tuple[float, float]:
    """
    Work of the two instantaneous field switches bounding a stroke

    The first switch tilts H(omega_start, 0, 0) into H(omega_end, alpha, 0)
    against the thermal state; the second flips H(omega_end, alpha, tau) back to
    H(omega_end, 0, tau) against the evolved state rho*.
    """
    z_start = FieldProtocol(omega_start, 0.0, p.omega, units=p.units)
    rho_th = thermal_state(omega_start, bath)
    rho_star = evolve_stroke(p, rho_th, p.duration)

    switch_on = internal_energy(hamiltonian(p, 0.0) - hamiltonian(z_start, 0.0), rho_th)
    switch_off = internal_energy(hamiltonian(_z_field(p), p.duration) - hamiltonian(p, p.duration), rho_star)
    return switch_on, switch_off


def sudden_work(
    omega_end: float, omega_start: float, alpha: float, bath: BathSpec, t: float, omega: float
) -> float:
    """W_S, the sum of both switch contributions"""
    p = FieldProtocol(omega_end, alpha, omega, duration=t, units=bath.units)
    return sum(switch_work(p, bath, omega_start))


def power_split(p: FieldProtocol, rho_of_t: StateTrajectory, t: float, h: float | None = None) -> PowerSplit:
    """Heat and work rates at time t; dE_n/dt = 0 for this drive so w_dot is the coherence term"""
    q_dot_diag = fd_population_rate(p, rho_of_t, t, h)
    coherence = coherence_sum(p, rho_of_t(t), t)
    return PowerSplit(
        at_time=t,
        q_dot_diag=q_dot_diag,
        coherence_term=coherence.real,
        coherence_imag=coherence.imag,
        q_dot=q_dot_diag - coherence.real,
        w_dot=coherence.real,
    )


def adiabaticity_residual(p: FieldProtocol, rho_of_t: StateTrajectory, t: float, h: float | None = None) -> float:
    """sum_n d(rho_nn)/dt E_n - coherence_power; vanishes for a thermodynamic adiabat"""
    return fd_population_rate(p, rho_of_t, t, h) - coherence_power(p, rho_of_t(t), t)


def residual_bound(p: FieldProtocol) -> float:
    return RESIDUAL_TOL * p.units.hbar * p.omega_j * max(p.rabi_omega(), abs(p.omega))


def stroke_work(p: FieldProtocol, bath: BathSpec, omega_start: float) -> StrokeLedger:
    """Boundary accounting of a stroke that starts thermal at (omega_start, bath)"""
    rho_th = thermal_state(omega_start, bath)
    rho_star = evolve_stroke(p, rho_th, p.duration)

    w_coherence = coherence_work(p.omega_j, omega_start, p.alpha, bath, p.duration, p.omega)
    switch_on, switch_off = switch_work(p, bath, omega_start)
    w_sudden = switch_on + switch_off
    w_total = w_coherence + w_sudden

    z_start = FieldProtocol(omega_start, 0.0, p.omega, units=p.units)
    delta_u = internal_energy(hamiltonian(_z_field(p), p.duration), rho_star) - internal_energy(
        hamiltonian(z_start, 0.0), rho_th
    )
    q = delta_u - w_total

    scale = max(abs(w_total), p.units.hbar * p.omega_j)
    if abs(q) > CLOSURE_TOL * scale:
        raise ThermodynamicsError(f"stroke does not close: dU - W = {q:.3e} J (scale {scale:.3e} J)")

    return StrokeLedger(
        protocol=p,
        omega_start=omega_start,
        w_coherence=w_coherence,
        w_switch_on=switch_on,
        w_switch_off=switch_off,
        w_sudden=w_sudden,
        w_total=w_total,
        delta_u=delta_u,
        q=q,
        final_state=rho_star,
        qa_parameter=quantum_adiabatic_parameter(p),
    )


def stroke_ledger(
    p: FieldProtocol, bath: BathSpec, omega_start: float, samples: int = DEFAULT_TRACE_SAMPLES
) -> StrokeLedger:
    """stroke_work plus a uniformly sampled PowerSplit trace over [0, tau]"""
    if samples < 2:
        raise ValidationError(f"a stroke trace needs at least 2 samples, got {samples}")
    ledger = stroke_work(p, bath, omega_start)
    rho_of_t = stroke_trajectory(p, thermal_state(omega_start, bath))
    h = default_step(p)
    times = np.linspace(0.0, p.duration, samples)
    trace = tuple(power_split(p, rho_of_t, float(t), h) for t in times)
    return replace(ledger, trace=trace)
