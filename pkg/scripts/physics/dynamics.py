"""
Rotating-Field Drive
Lab-frame Hamiltonian of a spin in a field of fixed incline rotating about z,
its instantaneous eigenstates, the rotating-frame Hamiltonian and the exact
propagators
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    IDENTITY,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    ComplexMat2,
    Ket2,
    as_ket,
    matrix_element,
)
from .errors import ValidationError
from .units import SI, UnitSystem

# Relative threshold on Omega_j below which sin(Omega t/2)/Omega -> t/2
DEGENERATE_RABI = 1e-8


@dataclass(frozen=True)
class FieldProtocol:
    """Constant-incline field of Larmor frequency omega_j rotating at omega"""

    omega_j: float  # rad/s
    alpha: float  # rad, incline from z
    omega: float  # rad/s, signed
    duration: float = 0.0  # s
    units: UnitSystem = field(default=SI, repr=False)

    def __post_init__(self):
        values = (self.omega_j, self.alpha, self.omega, self.duration)
        if not all(math.isfinite(v) for v in values):
            raise ValidationError(f"protocol values must be finite: {values}")
        if self.omega_j <= 0:
            raise ValidationError(f"omega_j must be positive, got {self.omega_j}")
        if not 0.0 <= self.alpha <= math.pi / 2:
            raise ValidationError(f"alpha must lie in [0, pi/2], got {self.alpha}")
        if self.duration < 0:
            raise ValidationError(f"duration must be non-negative, got {self.duration}")

    def rabi_omega(self) -> float:
        """Omega_j = sqrt((omega_j cos a - omega)^2 + omega_j^2 sin^2 a)"""
        return math.hypot(self.detuning(), self.omega_j * math.sin(self.alpha))

    def detuning(self) -> float:
        """z-component omega_j cos a - omega of the rotating-frame field"""
        return self.omega_j * math.cos(self.alpha) - self.omega

    def rabi_period(self) -> float:
        rabi = self.rabi_omega()
        return math.inf if rabi == 0.0 else 2 * math.pi / rabi

    def is_degenerate(self) -> bool:
        return self.rabi_omega() < DEGENERATE_RABI * max(abs(self.omega), self.omega_j)


@dataclass(frozen=True, eq=False)
class EigenFrame:
    """Instantaneous eigenstates |chi+->, |chi-> and their fixed energies"""

    chi_plus: Ket2
    chi_minus: Ket2
    e_plus: float
    e_minus: float
    at_time: float

    @property
    def kets(self) -> tuple[Ket2, Ket2]:
        return self.chi_plus, self.chi_minus

    @property
    def energies(self) -> tuple[float, float]:
        return self.e_plus, self.e_minus


def _check_time(t: float):
    if not math.isfinite(t) or t < 0:
        raise ValidationError(f"time must be finite and non-negative, got {t}")


def hamiltonian(p: FieldProtocol, t: float) -> ComplexMat2:
    """H(t) = (hbar omega_j / 2)[sin a cos wt sx + sin a sin wt sy + cos a sz]"""
    _check_time(t)
    scale = p.units.hbar * p.omega_j / 2
    sa, ca = math.sin(p.alpha), math.cos(p.alpha)
    phase = p.omega * t
    return scale * (sa * math.cos(phase) * SIGMA_X + sa * math.sin(phase) * SIGMA_Y + ca * SIGMA_Z)


def dH_dt(p: FieldProtocol, t: float) -> ComplexMat2:
    """Analytic time derivative of hamiltonian(p, t)"""
    _check_time(t)
    scale = p.units.hbar * p.omega_j * p.omega * math.sin(p.alpha) / 2
    phase = p.omega * t
    return scale * (-math.sin(phase) * SIGMA_X + math.cos(phase) * SIGMA_Y)


def eigenframe(p: FieldProtocol, t: float) -> EigenFrame:
    _check_time(t)
    c, s = math.cos(p.alpha / 2), math.sin(p.alpha / 2)
    phase = np.exp(1j * p.omega * t)
    chi_plus = as_ket([c, phase * s])
    chi_minus = as_ket([s / phase, -c])
    half_gap = p.units.hbar * p.omega_j / 2
    return EigenFrame(chi_plus=chi_plus, chi_minus=chi_minus, e_plus=half_gap, e_minus=-half_gap, at_time=t)


def rotating_hamiltonian(p: FieldProtocol) -> ComplexMat2:
    """H_R = (hbar/2)[omega_j sin a sx + (omega_j cos a - omega) sz]"""
    return (p.units.hbar / 2) * (p.omega_j * math.sin(p.alpha) * SIGMA_X + p.detuning() * SIGMA_Z)


def propagator_rotating(p: FieldProtocol, t: float) -> ComplexMat2:
    """U_R(t) = exp(-i H_R t / hbar), written out with the Rabi frequency"""
    _check_time(t)
    rabi = p.rabi_omega()
    half = rabi * t / 2
    if p.is_degenerate():
        # sin(Omega t/2)/Omega -> t/2 (1 - (Omega t/2)^2/6)
        ratio = (t / 2) * (1.0 - half * half / 6.0)
    else:
        ratio = math.sin(half) / rabi
    generator = p.omega_j * math.sin(p.alpha) * SIGMA_X + p.detuning() * SIGMA_Z
    return math.cos(half) * IDENTITY - 1j * ratio * generator


def frame_rotation(p: FieldProtocol, t: float) -> ComplexMat2:
    """R_z(t)^dagger = diag(exp(-i w t/2), exp(i w t/2))"""
    half = p.omega * t / 2
    return np.diag([np.exp(-1j * half), np.exp(1j * half)]).astype(np.complex128)


def propagator_lab(p: FieldProtocol, t: float) -> ComplexMat2:
    """U(t) = R_z(t)^dagger U_R(t)"""
    return frame_rotation(p, t) @ propagator_rotating(p, t)


def quantum_adiabatic_parameter(p: FieldProtocol, t: float = 0.0) -> float:
    """|hbar <chi-|dH/dt|chi+> / (E+ - E-)^2|; slow driving needs this << 1"""
    frame = eigenframe(p, t)
    coupling = matrix_element(frame.chi_minus, dH_dt(p, t), frame.chi_plus)
    gap = frame.e_plus - frame.e_minus
    return abs(p.units.hbar * coupling) / gap**2
