"""
Validation Ensemble
Seeded random draws of (alpha, omega, lambda) around a base cycle; every
closed form is checked against its oracle and the outcome is collected in a
pass/fail table
"""

import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import partial

import numpy as np
import pandas as pd
from scipy.linalg import expm
from tqdm import tqdm

from scripts.physics.algebra import (
    IDENTITY,
    adjoint,
    eigen_gap,
    frobenius_norm,
    is_normalized,
    pauli_components,
    pauli_expi,
    pauli_vector,
)
from scripts.physics.dynamics import FieldProtocol, eigenframe, hamiltonian, propagator_lab, propagator_rotating
from scripts.physics.errors import OttoEngineError, ValidationError
from scripts.physics.state import evolve_stroke, thermal_state, trace_distance
from scripts.thermodynamics.first_law import (
    coherence_power,
    coherence_power_closed_form,
    residual_bound,
    stroke_ledger,
)
from scripts.thermodynamics.otto_cycle import CycleParams, CycleReport, run_cycle

from .oracle import IntegratorConfig, integrate_lvn, integrate_propagator, quad_coherence_work

DEFAULT_SEED = 42
DEFAULT_DRAWS = 100
DEFAULT_RK4_DRAWS = 5
OMEGA_RANGE = 20.0  # |omega| bound in CLI frequency units

# tolerances per check
EXPM_TOL = 1e-12
UNITARITY_TOL = 1e-12
STROKE_CLOSURE_TOL = 1e-10
CYCLE_CLOSURE_TOL = 1e-10
CLOSED_FORM_TOL = 1e-8
TRACE_DISTANCE_TOL = 1e-6
SECOND_LAW_TOL = 1e-12
EFFICIENCY_SLACK = 1e-9

# the RK4 oracle integrates at most this many periods of the fastest frequency
RK4_MAX_PERIODS = 10

# relative perturbation applied to the closed-form W_L by inject_error
INJECTED_ERROR = 1e-6

COLUMNS = ["check", "draw", "value", "bound", "passed", "alpha_rad", "omega_ghz", "lambda"]


@dataclass(frozen=True)
class EnsembleDraw:
    index: int
    alpha: float
    omega: float  # rad/s
    lam: float


def draw_ensemble(base: CycleParams, draws: int = DEFAULT_DRAWS, seed: int = DEFAULT_SEED) -> list[EnsembleDraw]:
    """alpha in (0, pi/2], lambda in (0, 2], omega in [-20, 20] frequency units"""
    if draws < 1:
        raise ValidationError(f"an ensemble needs at least one draw, got {draws}")
    rng = np.random.default_rng(seed)
    alphas = math.pi / 2 - rng.uniform(0.0, math.pi / 2, size=draws)
    lams = 2.0 - rng.uniform(0.0, 2.0, size=draws)
    omegas = rng.uniform(-OMEGA_RANGE, OMEGA_RANGE, size=draws) * base.units.frequency_scale
    return [
        EnsembleDraw(index=k, alpha=float(a), omega=float(w), lam=float(lam))
        for k, (a, w, lam) in enumerate(zip(alphas, omegas, lams))
    ]


def _coherence_amplitude(p: FieldProtocol, polarization: float) -> float:
    """Peak |W_L| of a stroke, used as the scale near full Rabi periods"""
    rabi = p.rabi_omega()
    if rabi == 0.0:
        return 0.0
    return p.units.hbar * abs(p.omega) * p.omega_j**2 * math.sin(p.alpha) ** 2 * abs(polarization) / rabi**2


def _rk4_window(p: FieldProtocol) -> float:
    fastest = max(p.rabi_omega(), abs(p.omega), p.omega_j)
    return min(p.duration, RK4_MAX_PERIODS * 2 * math.pi / fastest)


class _Recorder:
    """Collects check rows for one draw"""

    def __init__(self, draw: EnsembleDraw, frequency_scale: float):
        self.draw = draw
        self.frequency_scale = frequency_scale
        self.rows = []

    def add(self, check: str, value: float, bound: float, passed: bool):
        self.rows.append(
            {
                "check": check,
                "draw": self.draw.index,
                "value": value,
                "bound": bound,
                "passed": bool(passed),
                "alpha_rad": self.draw.alpha,
                "omega_ghz": self.draw.omega / self.frequency_scale,
                "lambda": self.draw.lam,
            }
        )

    def at_most(self, check: str, value: float, bound: float):
        self.add(check, value, bound, math.isfinite(value) and value <= bound)


def _check_algebra(rec: _Recorder, p: FieldProtocol):
    generator = -p.duration / 2 * np.array([p.omega_j * math.sin(p.alpha), 0.0, p.detuning()])
    exact = pauli_expi(generator)
    rec.at_most("pauli_expi_vs_expm", frobenius_norm(exact - expm(1j * pauli_vector(generator))), EXPM_TOL)
    rec.at_most("rotating_propagator_vs_expm", frobenius_norm(propagator_rotating(p, p.duration) - exact), EXPM_TOL)

    u = propagator_lab(p, p.duration)
    rec.at_most("unitarity", frobenius_norm(u @ adjoint(u) - IDENTITY), UNITARITY_TOL)


def _check_eigenframe(rec: _Recorder, p: FieldProtocol):
    t = p.duration
    h = hamiltonian(p, t)
    frame = eigenframe(p, t)
    scale = p.units.hbar * p.omega_j
    residuals = [np.linalg.norm(h @ ket - energy * ket) for ket, energy in zip(frame.kets, frame.energies)]
    worst = float(max(residuals)) / scale
    normalized = all(is_normalized(ket) for ket in frame.kets)
    rec.add("eigenframe", worst, EXPM_TOL, normalized and worst <= EXPM_TOL)

    # gap three ways: fixed energies, numerical spectrum, Pauli decomposition
    _, cx, cy, cz = pauli_components(h)
    gap = frame.e_plus - frame.e_minus
    from_pauli = 2 * math.sqrt(abs(cx) ** 2 + abs(cy) ** 2 + abs(cz) ** 2)
    rec.at_most("eigen_gap", max(abs(eigen_gap(h) - gap), abs(from_pauli - gap)) / scale, EXPM_TOL)


def _check_strokes(rec: _Recorder, report: CycleReport, inject: bool):
    cp = report.params
    hbar_scale = cp.units.hbar * cp.omega1
    for name, ledger, bath in (
        ("compression", report.compression, cp.hot),
        ("expansion", report.expansion, cp.cold),
    ):
        p = ledger.protocol
        rec.at_most(
            f"first_law_{name}",
            abs(ledger.q) / max(abs(ledger.delta_u), hbar_scale),
            STROKE_CLOSURE_TOL,
        )

        rho_th = thermal_state(ledger.omega_start, bath)
        bloch_drift = abs(np.linalg.norm(ledger.final_state.bloch_vector()) - np.linalg.norm(rho_th.bloch_vector()))
        rec.at_most(f"bloch_length_{name}", bloch_drift, UNITARITY_TOL)
        polarization = rho_th.z_populations()[1] - rho_th.z_populations()[0]
        amplitude = _coherence_amplitude(p, polarization)

        midpoint = p.duration / 2
        assembled = coherence_power(p, evolve_stroke(p, rho_th, midpoint), midpoint)
        closed = coherence_power_closed_form(p.omega_j, ledger.omega_start, p.alpha, bath, midpoint, p.omega)
        power_scale = max(abs(closed), amplitude * p.rabi_omega() / 2, sys.float_info.min)
        rec.at_most(f"coherence_power_{name}", abs(assembled - closed) / power_scale, CLOSED_FORM_TOL)

        w_closed = ledger.w_coherence * (1.0 + INJECTED_ERROR) if inject else ledger.w_coherence
        w_quad = quad_coherence_work(p, bath, ledger.omega_start, p.duration)
        work_scale = max(abs(w_closed), amplitude, sys.float_info.min)
        rec.at_most(f"coherence_work_{name}", abs(w_closed - w_quad) / work_scale, CLOSED_FORM_TOL)


def _check_residual(rec: _Recorder, report: CycleReport, samples: int):
    ledger = report.compression
    p = ledger.protocol
    traced = stroke_ledger(p, report.params.hot, ledger.omega_start, samples=samples)
    table = traced.trace_table()
    worst = float(np.max(np.abs(table["q_dot_diag"] - table["coherence_term"])))
    bound = residual_bound(p)
    rec.add("adiabaticity_residual", worst / bound if bound > 0 else worst, 1.0, worst <= bound)


def _check_rk4(rec: _Recorder, report: CycleReport, cfg: IntegratorConfig):
    ledger = report.compression
    p = ledger.protocol
    t = _rk4_window(p)
    rho_th = thermal_state(ledger.omega_start, report.params.hot)
    distance = trace_distance(evolve_stroke(p, rho_th, t), integrate_lvn(p, rho_th, t, cfg))
    rec.at_most("propagator_vs_rk4", distance, TRACE_DISTANCE_TOL)

    u_rk4 = integrate_propagator(p, t, cfg)
    rec.at_most("unitary_vs_rk4", frobenius_norm(u_rk4 - propagator_lab(p, t)), TRACE_DISTANCE_TOL)


def _check_cycle(rec: _Recorder, report: CycleReport):
    scale = max(abs(report.w_net), abs(report.q_h), abs(report.q_c))
    rec.at_most("cycle_closure", abs(report.closure_residual) / scale, CYCLE_CLOSURE_TOL)

    cp = report.params
    entropy_scale = abs(report.q_h) / cp.hot.temperature + abs(report.q_c) / cp.cold.temperature
    bound = -SECOND_LAW_TOL * entropy_scale
    rec.add("second_law", report.entropy_gen, bound, report.entropy_gen >= bound)

    bound = report.eta_otto + EFFICIENCY_SLACK
    rec.add("efficiency_bound", report.eta, bound, not report.is_engine or report.eta <= bound)


def check_draw(
    base: CycleParams,
    draw: EnsembleDraw,
    samples: int = 401,
    rk4: bool = False,
    inject: bool = False,
    cfg: IntegratorConfig = IntegratorConfig(),
) -> list[dict]:
    """Every check row of one draw; an engine error fails the draw instead of raising"""
    rec = _Recorder(draw, base.units.frequency_scale)
    try:
        report = run_cycle(replace(base, alpha=draw.alpha, omega=draw.omega, lam=draw.lam))
        _check_algebra(rec, report.compression.protocol)
        _check_eigenframe(rec, report.compression.protocol)
        _check_strokes(rec, report, inject)
        _check_cycle(rec, report)
        _check_residual(rec, report, samples)
        if rk4:
            _check_rk4(rec, report, cfg)
    except OttoEngineError as exc:
        rec.add(f"error:{type(exc).__name__}", math.nan, math.nan, False)
    return rec.rows


def run_ensemble(
    base: CycleParams,
    draws: int = DEFAULT_DRAWS,
    seed: int = DEFAULT_SEED,
    rk4_draws: int = DEFAULT_RK4_DRAWS,
    samples: int = 401,
    inject_error: bool = False,
    jobs: int = 1,
    progress: bool = False,
) -> pd.DataFrame:
    """
    Run the oracle suite over a seeded ensemble

    The first `rk4_draws` draws are also integrated with RK4. Rows come back in
    draw order whatever the number of worker processes.
    """
    if jobs < 1:
        raise ValidationError(f"jobs must be at least 1, got {jobs}")
    if rk4_draws < 0:
        raise ValidationError(f"rk4_draws must be non-negative, got {rk4_draws}")

    ensemble = draw_ensemble(base, draws, seed)
    rk4_flags = [d.index < rk4_draws for d in ensemble]
    worker = partial(_check_one, base, samples, inject_error)
    bar = partial(tqdm, total=len(ensemble), disable=not progress, file=sys.stderr, desc="validate")

    if jobs == 1:
        per_draw = list(bar(map(worker, ensemble, rk4_flags)))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_draw = list(bar(pool.map(worker, ensemble, rk4_flags)))

    return pd.DataFrame([row for rows in per_draw for row in rows], columns=COLUMNS)


def _check_one(base: CycleParams, samples: int, inject: bool, draw: EnsembleDraw, rk4: bool) -> list[dict]:
    return check_draw(base, draw, samples=samples, rk4=rk4, inject=inject)


def failures(table: pd.DataFrame) -> pd.DataFrame:
    return table.loc[~table["passed"]]
