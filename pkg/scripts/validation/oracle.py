"""
Numerical Oracles
Fixed-step RK4 integration of the Liouville-von Neumann equation, adaptive
Simpson quadrature of the coherence power and finite-difference population
rates; independent of the closed forms they certify
"""

import math
from collections.abc import Callable
from dataclasses import dataclass, replace

import numpy as np

from scripts.physics.algebra import IDENTITY, ComplexMat2
from scripts.physics.dynamics import FieldProtocol, hamiltonian
from scripts.physics.errors import IntegratorError, QuadratureError, ValidationError
from scripts.physics.state import BathSpec, DensityMatrix, evolve_stroke, thermal_state
from scripts.thermodynamics.first_law import coherence_power

from .finite_difference import fd_population_rate  # noqa: F401  re-exported

QUADRATURE_RTOL = 1e-10
QUADRATURE_MAX_DEPTH = 50


@dataclass(frozen=True)
class IntegratorConfig:
    """Resolution and guards of the RK4 oracle"""

    steps_per_rabi_period: int = 2000
    step: float | None = None  # s; overrides steps_per_rabi_period
    method: str = "rk4"
    trace_tolerance: float = 1e-10
    state_tolerance: float = 1e-8

    def __post_init__(self):
        if self.method != "rk4":
            raise ValidationError(f"only the classic rk4 method is available, got {self.method!r}")
        if self.steps_per_rabi_period < 100:
            raise ValidationError(f"steps_per_rabi_period must be >= 100, got {self.steps_per_rabi_period}")
        if self.step is not None and not (math.isfinite(self.step) and self.step > 0):
            raise ValidationError(f"step must be positive, got {self.step}")

    def step_count(self, p: FieldProtocol, t: float) -> int:
        """Number of uniform steps that land exactly on t"""
        if self.step is not None:
            dt = self.step
        else:
            fastest = max(p.rabi_omega(), abs(p.omega), p.omega_j)
            dt = 2 * math.pi / (fastest * self.steps_per_rabi_period)
        return max(1, math.ceil(t / dt - 1e-9))


def _rk4(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    y0: np.ndarray,
    t: float,
    steps: int,
    after_step: Callable[[int, float, np.ndarray], np.ndarray] | None = None,
) -> np.ndarray:
    dt = t / steps
    y = y0.copy()
    for k in range(steps):
        s = k * dt
        k1 = rhs(s, y)
        k2 = rhs(s + dt / 2, y + dt / 2 * k1)
        k3 = rhs(s + dt / 2, y + dt / 2 * k2)
        k4 = rhs(s + dt, y + dt * k3)
        y = y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        if after_step is not None:
            y = after_step(k, s + dt, y)
    return y


def integrate_lvn(
    p: FieldProtocol, rho0: DensityMatrix, t: float, cfg: IntegratorConfig = IntegratorConfig()
) -> DensityMatrix:
    """
    Integrate d(rho)/dt = -(i/hbar)[H(t), rho] from 0 to t with classic RK4

    The state is re-Hermitized after every step; its trace is monitored but
    never renormalized.
    """
    if t < 0:
        raise ValidationError(f"integration time must be non-negative, got {t}")
    if t == 0:
        return rho0
    hbar = p.units.hbar

    def lvn(s: float, rho: np.ndarray) -> np.ndarray:
        h = hamiltonian(p, s)
        return (-1j / hbar) * (h @ rho - rho @ h)

    def hermitize(k: int, s: float, rho: np.ndarray) -> np.ndarray:
        rho = (rho + rho.conj().T) / 2
        drift = abs(np.trace(rho) - 1.0)
        if drift > cfg.trace_tolerance:
            raise IntegratorError(
                f"trace drift {drift:.3e} exceeded {cfg.trace_tolerance:.1e} at t={s:.6e}",
                diagnostics={"step": k, "time": s, "drift": drift, "dt": t / steps},
            )
        return rho

    steps = cfg.step_count(p, t)
    rho = _rk4(lvn, np.array(rho0.mat), t, steps, hermitize)
    return DensityMatrix(rho, tol=cfg.state_tolerance)


def integrate_propagator(p: FieldProtocol, t: float, cfg: IntegratorConfig = IntegratorConfig()) -> ComplexMat2:
    """Integrate i hbar dU/dt = H(t) U from U(0) = I with classic RK4"""
    if t == 0:
        return IDENTITY.copy()
    hbar = p.units.hbar

    def schrodinger(s: float, u: np.ndarray) -> np.ndarray:
        return (-1j / hbar) * (hamiltonian(p, s) @ u)

    return _rk4(schrodinger, IDENTITY, t, cfg.step_count(p, t))


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    rtol: float = QUADRATURE_RTOL,
    panels: int = 16,
    max_depth: int = QUADRATURE_MAX_DEPTH,
) -> float:
    """
    Adaptive Simpson quadrature of f over [a, b]

    The interval is first cut into `panels` equal panels; the tolerance is
    rtol times the Simpson estimate of the integral of |f|, shared evenly
    between panels and halved at every bisection.
    """
    if a == b:
        return 0.0
    if panels < 1:
        raise ValidationError(f"panels must be positive, got {panels}")

    def recurse(lo, hi, f_lo, f_mid, f_hi, whole, eps, depth):
        mid = (lo + hi) / 2
        f_left, f_right = f((lo + mid) / 2), f((mid + hi) / 2)
        left = (mid - lo) / 6 * (f_lo + 4 * f_left + f_mid)
        right = (hi - mid) / 6 * (f_mid + 4 * f_right + f_hi)
        delta = left + right - whole
        if abs(delta) <= 15 * eps:
            return left + right + delta / 15
        if depth >= max_depth:
            raise QuadratureError(f"adaptive Simpson did not converge on [{lo:.6e}, {hi:.6e}]")
        return recurse(lo, mid, f_lo, f_left, f_mid, left, eps / 2, depth + 1) + recurse(
            mid, hi, f_mid, f_right, f_hi, right, eps / 2, depth + 1
        )

    edges = np.linspace(a, b, panels + 1)
    starts = []
    magnitude = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        f_lo, f_mid, f_hi = f(lo), f((lo + hi) / 2), f(hi)
        starts.append((lo, hi, f_lo, f_mid, f_hi, (hi - lo) / 6 * (f_lo + 4 * f_mid + f_hi)))
        magnitude += abs(hi - lo) / 6 * (abs(f_lo) + 4 * abs(f_mid) + abs(f_hi))

    if magnitude == 0.0:
        return 0.0
    eps = rtol * magnitude / panels
    return math.fsum(recurse(*start, eps, 0) for start in starts)


def quad_coherence_work(
    p: FieldProtocol, bath: BathSpec, omega_start: float, t: float, rtol: float = QUADRATURE_RTOL
) -> float:
    """W_L as the integral of coherence_power over [0, t] for a thermal start"""
    stroke = replace(p, duration=t)
    rho_th = thermal_state(omega_start, bath)

    def power(s: float) -> float:
        return coherence_power(stroke, evolve_stroke(stroke, rho_th, s), s)

    # a few panels per half Rabi period
    panels = max(16, math.ceil(2 * stroke.rabi_omega() * t / math.pi))
    return adaptive_simpson(power, 0.0, t, rtol=rtol, panels=panels)
