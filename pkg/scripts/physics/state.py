"""
Density Matrices
Gibbs states, unitary evolution through a stroke, elements in the
instantaneous eigenbasis and effective temperatures
"""

import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    PAULI,
    STRUCTURAL_TOL,
    ComplexMat2,
    adjoint,
    as_mat2,
    matrix_element,
    trace,
)
from .dynamics import FieldProtocol, eigenframe, propagator_lab
from .errors import DomainError, ValidationError
from .units import SI, UnitSystem


@dataclass(frozen=True)
class BathSpec:
    """Heat bath at a fixed positive temperature"""

    temperature: float  # K (energy units in natural mode)
    units: UnitSystem = field(default=SI, repr=False)

    def __post_init__(self):
        if not math.isfinite(self.temperature) or self.temperature <= 0:
            # negative effective temperatures are outputs, never bath inputs
            raise ValidationError(f"bath temperature must be finite and positive, got {self.temperature}")

    @property
    def beta(self) -> float:
        return 1.0 / (self.units.k_b * self.temperature)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite 2x2 state"""

    mat: ComplexMat2
    tol: float = field(default=STRUCTURAL_TOL, repr=False, compare=False)

    def __post_init__(self):
        mat = as_mat2(self.mat)
        mat.flags.writeable = False
        object.__setattr__(self, "mat", mat)

        scale = max(1.0, float(np.linalg.norm(mat)))
        if np.linalg.norm(mat - mat.conj().T) > self.tol * scale:
            raise ValidationError("density matrix is not Hermitian")
        if abs(trace(mat) - 1.0) > self.tol:
            raise ValidationError(f"density matrix trace is {trace(mat)}, expected 1")
        if self.spectrum()[0] < -self.tol:
            raise ValidationError(f"density matrix has negative eigenvalue {self.spectrum()[0]}")

    def spectrum(self) -> np.ndarray:
        """Eigenvalues in ascending order"""
        return np.linalg.eigvalsh(self.mat)

    def purity(self) -> float:
        return float(np.real(trace(self.mat @ self.mat)))

    def expectation(self, op: ComplexMat2) -> float:
        """Tr(op rho) for a Hermitian observable"""
        return float(np.real(trace(op @ self.mat)))

    def bloch_vector(self) -> np.ndarray:
        return np.array([self.expectation(s) for s in PAULI])

    def z_populations(self) -> tuple[float, float]:
        """(rho_up_up, rho_down_down)"""
        return float(self.mat[0, 0].real), float(self.mat[1, 1].real)


@dataclass(frozen=True)
class InstantaneousElements:
    """rho_nm = <chi_n(t)|rho|chi_m(t)> in the instantaneous eigenbasis"""

    rho_pp: float
    rho_mm: float
    rho_pm: complex
    at_time: float

    def __post_init__(self):
        if abs(self.rho_pp + self.rho_mm - 1.0) > STRUCTURAL_TOL:
            raise ValidationError(f"populations sum to {self.rho_pp + self.rho_mm}, expected 1")
        if not -STRUCTURAL_TOL <= self.rho_pp <= 1.0 + STRUCTURAL_TOL:
            raise ValidationError(f"population rho_pp={self.rho_pp} outside [0, 1]")
        if abs(self.rho_pm) ** 2 > self.rho_pp * self.rho_mm + STRUCTURAL_TOL:
            raise ValidationError("coherence exceeds the positivity bound")

    @property
    def rho_mp(self) -> complex:
        return self.rho_pm.conjugate()


StateTrajectory = Callable[[float], DensityMatrix]


def thermal_state(omega_j: float, bath: BathSpec) -> DensityMatrix:
    """
    Gibbs state of (hbar omega_j / 2) sz at the bath temperature

    Populations are written with tanh(beta hbar omega_j / 2) so that the
    limits beta -> 0 and beta -> inf stay finite.
    """
    if not math.isfinite(omega_j) or omega_j <= 0:
        raise ValidationError(f"omega_j must be positive, got {omega_j}")
    polarization = math.tanh(bath.beta * bath.units.hbar * omega_j / 2)
    return DensityMatrix(np.diag([(1 - polarization) / 2, (1 + polarization) / 2]).astype(np.complex128))


def unitary_evolve(u: ComplexMat2, rho: DensityMatrix) -> DensityMatrix:
    return DensityMatrix(u @ rho.mat @ adjoint(u))


def evolve_stroke(p: FieldProtocol, rho0: DensityMatrix, t: float) -> DensityMatrix:
    """rho*(t) = U(t) rho0 U(t)^dagger, kept in the lab frame"""
    if not 0.0 <= t <= p.duration:
        raise ValidationError(f"time {t} outside the stroke [0, {p.duration}]")
    return unitary_evolve(propagator_lab(p, t), rho0)


def stroke_trajectory(p: FieldProtocol, rho0: DensityMatrix) -> StateTrajectory:
    """State of a stroke as a function of elapsed time"""

    def rho_of_t(t: float) -> DensityMatrix:
        return evolve_stroke(p, rho0, t)

    return rho_of_t


def instantaneous_elements(p: FieldProtocol, rho: DensityMatrix, t: float) -> InstantaneousElements:
    frame = eigenframe(p, t)
    rho_pp = matrix_element(frame.chi_plus, rho.mat, frame.chi_plus).real
    rho_mm = matrix_element(frame.chi_minus, rho.mat, frame.chi_minus).real
    rho_pm = matrix_element(frame.chi_plus, rho.mat, frame.chi_minus)
    return InstantaneousElements(rho_pp=rho_pp, rho_mm=rho_mm, rho_pm=rho_pm, at_time=t)


def effective_temperature(gap: float, pop_ratio: float, units: UnitSystem = SI) -> float:
    """
    Temperature for which rho++/rho-- = exp(-gap / (k_B T))

    Returns a signed value (negative under population inversion) and
    math.inf when the populations are equal.
    """
    if not math.isfinite(gap) or gap <= 0:
        raise DomainError(f"energy gap must be positive, got {gap}")
    if not math.isfinite(pop_ratio) or pop_ratio <= 0:
        raise DomainError(f"population ratio must be positive, got {pop_ratio}")
    log_ratio = math.log(pop_ratio)
    if log_ratio == 0.0:
        return math.inf
    return -gap / (units.k_b * log_ratio)


def trace_distance(a: DensityMatrix, b: DensityMatrix) -> float:
    """(1/2) sum |eig(a - b)|"""
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(a.mat - b.mat))))
