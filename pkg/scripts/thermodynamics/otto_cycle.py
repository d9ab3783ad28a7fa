"""
Quantum Otto Cycle
Four strokes of the rotating-field engine: adiabatic compression, cold
isochore, adiabatic expansion, hot isochore; efficiency, effective
temperatures, entropy generation and the quantum-adiabatic reference

Sign convention: Q > 0 is heat absorbed by the atom, W > 0 is work done on
the atom, so the work output is -W.
"""

import math
from dataclasses import dataclass, field
from enum import Enum

from scripts.physics.dynamics import FieldProtocol, hamiltonian
from scripts.physics.errors import ThermodynamicsError, ValidationError
from scripts.physics.state import BathSpec, DensityMatrix, effective_temperature, thermal_state
from scripts.physics.units import UnitSystem

from .first_law import StrokeLedger, internal_energy, stroke_work

CYCLE_CLOSURE_TOL = 1e-10
SECOND_LAW_TOL = 1e-12


class LambdaBinding(str, Enum):
    """Which Rabi frequency turns lambda into each stroke duration"""

    # tau1 from the stage-I drive (omega2), tau2 from the stage-III drive (omega1)
    STAGE = "stage"
    # tau1 from Omega(omega1), tau2 from Omega(omega2)
    SWAPPED = "swapped"


@dataclass(frozen=True)
class CycleParams:
    omega1: float  # rad/s, hot-isochore field
    omega2: float  # rad/s, cold-isochore field
    alpha: float  # rad
    omega: float  # rad/s, signed rotation rate
    lam: float  # stroke duration in Rabi periods
    hot: BathSpec
    cold: BathSpec
    binding: LambdaBinding = LambdaBinding.STAGE

    def __post_init__(self):
        for name in ("omega1", "omega2", "alpha", "omega", "lam"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"{name} must be finite, got {getattr(self, name)}")
        if self.omega1 <= 0 or self.omega2 <= 0:
            raise ValidationError(f"field frequencies must be positive, got {self.omega1}, {self.omega2}")
        if not 0.0 <= self.alpha <= math.pi / 2:
            raise ValidationError(f"alpha must lie in [0, pi/2], got {self.alpha}")
        if self.lam < 0:
            raise ValidationError(f"lambda must be non-negative, got {self.lam}")
        if self.hot.units != self.cold.units:
            raise ValidationError("hot and cold baths use different unit systems")
        if self.hot.temperature <= self.cold.temperature:
            raise ValidationError(
                f"hot bath ({self.hot.temperature}) must be warmer than cold bath ({self.cold.temperature})"
            )
        object.__setattr__(self, "binding", LambdaBinding(self.binding))

    @property
    def units(self) -> UnitSystem:
        return self.hot.units

    def drive(self, omega_j: float, duration: float = 0.0) -> FieldProtocol:
        return FieldProtocol(omega_j, self.alpha, self.omega, duration=duration, units=self.units)


@dataclass(frozen=True)
class OttoLimit:
    """Closed forms of the cycle with alpha = 0 (quantum-adiabatic strokes)"""

    q_h: float
    w: float
    eta_otto: float
    positive_work_condition: bool
    carnot: float


@dataclass(frozen=True)
class CycleReport:
    params: CycleParams
    tau1: float
    tau2: float
    w1: float
    w2: float
    w_net: float
    w_L: float
    w_S: float
    q_h: float
    q_c: float
    eta: float  # nan when the cycle absorbs no heat from the hot bath
    eta_otto: float
    t2_eff: float
    t4_eff: float
    entropy_gen: float
    positive_work: bool
    is_engine: bool
    closure_residual: float
    otto: OttoLimit
    compression: StrokeLedger = field(repr=False)
    expansion: StrokeLedger = field(repr=False)


def stroke_durations(cp: CycleParams) -> tuple[float, float]:
    """(tau1, tau2) = 2 pi lambda / Omega for the bound drives"""
    compression, expansion = cp.drive(cp.omega2), cp.drive(cp.omega1)
    if cp.binding is LambdaBinding.SWAPPED:
        timers = (expansion, compression)
    else:
        timers = (compression, expansion)

    durations = []
    for drive in timers:
        # U_R is the identity at a vanishing Rabi frequency, any duration will do
        if drive.is_degenerate():
            durations.append(0.0)
        else:
            durations.append(cp.lam * drive.rabi_period())
    return durations[0], durations[1]


def otto_limit(cp: CycleParams) -> OttoLimit:
    hbar = cp.units.hbar
    tanh_h = math.tanh(cp.hot.beta * hbar * cp.omega1 / 2)
    tanh_c = math.tanh(cp.cold.beta * hbar * cp.omega2 / 2)
    return OttoLimit(
        q_h=hbar * cp.omega1 / 2 * (tanh_c - tanh_h),
        w=hbar / 2 * (cp.omega1 - cp.omega2) * (tanh_h - tanh_c),
        eta_otto=1.0 - cp.omega2 / cp.omega1,
        positive_work_condition=cp.omega2 / cp.omega1 > cp.hot.beta / cp.cold.beta,
        carnot=1.0 - cp.cold.temperature / cp.hot.temperature,
    )


def entropy_generation(q_h: float, q_c: float, hot: BathSpec, cold: BathSpec) -> float:
    """S = -Q_h/T_h - Q_c/T_c"""
    return -q_h / hot.temperature - q_c / cold.temperature


def _z_energy(cp: CycleParams, omega_j: float, rho: DensityMatrix) -> float:
    """Energy against the field resting on the z axis"""
    return internal_energy(hamiltonian(FieldProtocol(omega_j, 0.0, cp.omega, units=cp.units), 0.0), rho)


def _population_temperature(gap: float, rho: DensityMatrix, units: UnitSystem) -> float:
    """Effective temperature of the post-flip populations (z basis of rho*)"""
    upper, lower = rho.z_populations()
    # fully polarized states sit at T = +0 (ground) or T = -0 (inverted)
    if upper <= 0.0:
        return 0.0
    if lower <= 0.0:
        return -0.0
    return effective_temperature(gap, upper / lower, units)


def run_cycle(cp: CycleParams) -> CycleReport:
    """Run stages I-IV once, starting from the hot Gibbs state at omega1"""
    hbar = cp.units.hbar
    tau1, tau2 = stroke_durations(cp)

    # Stage I: tilt to (omega2, alpha), rotate for tau1, flip back to z
    rho1 = thermal_state(cp.omega1, cp.hot)
    compression = stroke_work(cp.drive(cp.omega2, tau1), cp.hot, cp.omega1)
    rho2 = compression.final_state

    # Stage II: complete thermalization with the cold bath at omega2
    rho3 = thermal_state(cp.omega2, cp.cold)
    q_c = _z_energy(cp, cp.omega2, rho3) - _z_energy(cp, cp.omega2, rho2)

    # Stage III: tilt to (omega1, alpha), rotate for tau2, flip back to z
    expansion = stroke_work(cp.drive(cp.omega1, tau2), cp.cold, cp.omega2)
    rho4 = expansion.final_state

    # Stage IV: complete thermalization with the hot bath at omega1
    q_h = _z_energy(cp, cp.omega1, rho1) - _z_energy(cp, cp.omega1, rho4)

    w1, w2 = compression.w_total, expansion.w_total
    w_net = w1 + w2

    closure = w_net + q_h + q_c
    scale = max(abs(w_net), abs(q_h), abs(q_c))
    if abs(closure) > CYCLE_CLOSURE_TOL * scale:
        raise ThermodynamicsError(f"cycle does not close: W + Q_h + Q_c = {closure:.3e} J")

    entropy = entropy_generation(q_h, q_c, cp.hot, cp.cold)
    entropy_scale = abs(q_h) / cp.hot.temperature + abs(q_c) / cp.cold.temperature
    if entropy < -SECOND_LAW_TOL * entropy_scale:
        raise ThermodynamicsError(f"negative entropy generation {entropy:.3e}")

    otto = otto_limit(cp)
    return CycleReport(
        params=cp,
        tau1=tau1,
        tau2=tau2,
        w1=w1,
        w2=w2,
        w_net=w_net,
        w_L=compression.w_coherence + expansion.w_coherence,
        w_S=compression.w_sudden + expansion.w_sudden,
        q_h=q_h,
        q_c=q_c,
        eta=-w_net / q_h if q_h > 0 else math.nan,
        eta_otto=otto.eta_otto,
        t2_eff=_population_temperature(hbar * cp.omega2, rho2, cp.units),
        t4_eff=_population_temperature(hbar * cp.omega1, rho4, cp.units),
        entropy_gen=entropy,
        positive_work=w_net < 0,
        is_engine=q_h > 0 and w_net < 0,
        closure_residual=closure,
        otto=otto,
        compression=compression,
        expansion=expansion,
    )
