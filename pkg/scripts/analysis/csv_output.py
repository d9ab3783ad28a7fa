"""
CSV Output
Cycle rows, sweep grids, stroke traces and validation tables as DataFrames,
written with a '#' provenance header and fixed 17-digit float formatting
"""

import math
import sys
from collections.abc import Sequence
from pathlib import Path

import numpy as np
import pandas as pd

from scripts import __version__
from scripts.physics.state import BathSpec
from scripts.thermodynamics.first_law import StrokeLedger, coherence_work
from scripts.thermodynamics.otto_cycle import CycleReport
from scripts.thermodynamics.sweep import SweepResult

FLOAT_FORMAT = "%.17g"

CYCLE_COLUMNS = [
    "lambda",
    "omega_ghz",
    "alpha_rad",
    "w_net",
    "w_L",
    "w_S",
    "q_h",
    "q_c",
    "eta",
    "eta_otto",
    "t2_eff",
    "t4_eff",
    "entropy_gen",
    "positive_work",
]
SWEEP_COLUMNS = CYCLE_COLUMNS + ["is_engine", "status"]
STROKE_COLUMNS = ["t", "q_dot_diag", "coherence_term", "w_dot", "w_L", "adiabaticity_residual"]

_OBSERVABLES = ("w_net", "w_L", "w_S", "q_h", "q_c", "eta", "eta_otto", "t2_eff", "t4_eff", "entropy_gen")


def cycle_record(report: CycleReport) -> dict[str, object]:
    cp = report.params
    record = {
        "lambda": cp.lam,
        "omega_ghz": cp.omega / cp.units.frequency_scale,
        "alpha_rad": cp.alpha,
    }
    record.update({name: getattr(report, name) for name in _OBSERVABLES})
    record["positive_work"] = report.positive_work
    return record


def cycle_frame(reports: Sequence[CycleReport]) -> pd.DataFrame:
    return pd.DataFrame([cycle_record(r) for r in reports], columns=CYCLE_COLUMNS)


def sweep_frame(results: Sequence[SweepResult], frequency_scale: float) -> pd.DataFrame:
    """One row per grid point; failed points keep their coordinates and carry NaN observables"""
    records = []
    for result in results:
        if result.ok:
            record = cycle_record(result.report)
            record["is_engine"] = result.report.is_engine
        else:
            record = {
                "lambda": result.lam,
                "omega_ghz": result.omega / frequency_scale,
                "alpha_rad": result.alpha,
                **{name: math.nan for name in _OBSERVABLES},
                "positive_work": False,
                "is_engine": False,
            }
        record["status"] = result.status
        records.append(record)
    return pd.DataFrame(records, columns=SWEEP_COLUMNS)


def stroke_frame(ledger: StrokeLedger, bath: BathSpec) -> pd.DataFrame:
    """Time-resolved rates of a traced stroke plus the running coherence work"""
    table = ledger.trace_table()
    p = ledger.protocol
    running = [coherence_work(p.omega_j, ledger.omega_start, p.alpha, bath, float(t), p.omega) for t in table["at_time"]]
    return pd.DataFrame(
        {
            "t": table["at_time"],
            "q_dot_diag": table["q_dot_diag"],
            "coherence_term": table["coherence_term"],
            "w_dot": table["w_dot"],
            "w_L": np.array(running),
            "adiabaticity_residual": table["q_dot_diag"] - table["coherence_term"],
        },
        columns=STROKE_COLUMNS,
    )


def _format_value(value) -> str:
    if isinstance(value, float):
        return FLOAT_FORMAT % value
    if isinstance(value, tuple):
        return ",".join(_format_value(v) for v in value)
    return str(value)


def provenance_lines(subcommand: str, seed: int, echo: dict[str, object], units: str) -> list[str]:
    unit_note = "frequencies in GHz (1e9 rad/s), angles in rad, temperatures in K, energies in J"
    if units == "natural":
        unit_note = "natural units (hbar = k_B = 1)"
    params = " ".join(f"{key}={_format_value(value)}" for key, value in echo.items())
    return [
        f"# larmor-otto-engine {__version__} {subcommand}",
        f"# seed={seed}",
        f"# units={units}: {unit_note}",
        f"# params: {params}",
    ]


def write_csv(df: pd.DataFrame, out: Path | None, header: Sequence[str] = ()):
    """Write to `out`, or to stdout when out is None"""
    if out is None:
        _write(df, sys.stdout, header)
        return
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", encoding="utf-8", newline="") as handle:
        _write(df, handle, header)


def _write(df: pd.DataFrame, handle, header: Sequence[str]):
    for line in header:
        handle.write(line + "\n")
    df.to_csv(handle, float_format=FLOAT_FORMAT, na_rep="nan", index=False, lineterminator="\n")


def read_csv(path: Path) -> pd.DataFrame:
    """Read back a table written by write_csv"""
    return pd.read_csv(path, comment="#")
