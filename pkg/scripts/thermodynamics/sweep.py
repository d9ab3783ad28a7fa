"""
Cycle Sweeps
Evaluates run_cycle over a (alpha, omega, lambda) grid in row-major order,
optionally across worker processes, without letting one bad point abort the grid
"""

import math
import sys
from collections.abc import Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import partial

from tqdm import tqdm

from scripts.physics.errors import OttoEngineError, ValidationError

from .otto_cycle import CycleParams, CycleReport, run_cycle

STATUS_OK = "ok"


@dataclass(frozen=True)
class SweepGrid:
    """Axes of a sweep around a base parameter set; lambda varies fastest"""

    base: CycleParams
    lambdas: tuple[float, ...]
    omegas: tuple[float, ...]
    alphas: tuple[float, ...]

    def __post_init__(self):
        for name in ("lambdas", "omegas", "alphas"):
            axis = tuple(float(v) for v in getattr(self, name))
            if not axis:
                raise ValidationError(f"sweep axis {name} is empty")
            if not all(math.isfinite(v) for v in axis):
                raise ValidationError(f"sweep axis {name} has non-finite values")
            object.__setattr__(self, name, axis)

    @classmethod
    def around(
        cls,
        base: CycleParams,
        lambdas: Sequence[float] | None = None,
        omegas: Sequence[float] | None = None,
        alphas: Sequence[float] | None = None,
    ) -> "SweepGrid":
        """Unswept axes collapse onto the base value"""
        return cls(
            base=base,
            lambdas=tuple(lambdas) if lambdas is not None else (base.lam,),
            omegas=tuple(omegas) if omegas is not None else (base.omega,),
            alphas=tuple(alphas) if alphas is not None else (base.alpha,),
        )

    def coordinates(self) -> Iterator[tuple[float, float, float]]:
        """(alpha, omega, lambda) triples in output order"""
        for alpha in self.alphas:
            for omega in self.omegas:
                for lam in self.lambdas:
                    yield alpha, omega, lam

    def __len__(self) -> int:
        return len(self.alphas) * len(self.omegas) * len(self.lambdas)


@dataclass(frozen=True)
class SweepResult:
    alpha: float
    omega: float
    lam: float
    report: CycleReport | None
    status: str
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.status == STATUS_OK


def evaluate_point(base: CycleParams, alpha: float, omega: float, lam: float) -> SweepResult:
    """One grid point; engine errors become a status instead of propagating"""
    try:
        report = run_cycle(replace(base, alpha=alpha, omega=omega, lam=lam))
    except OttoEngineError as exc:
        return SweepResult(alpha, omega, lam, None, type(exc).__name__, str(exc))
    return SweepResult(alpha, omega, lam, report, STATUS_OK)


def sweep(grid: SweepGrid, jobs: int = 1, progress: bool = False) -> list[SweepResult]:
    """One result per grid point, in grid order regardless of completion order"""
    if jobs < 1:
        raise ValidationError(f"jobs must be at least 1, got {jobs}")

    alphas, omegas, lambdas = zip(*grid.coordinates())
    worker = partial(evaluate_point, grid.base)
    bar = partial(tqdm, total=len(grid), disable=not progress, file=sys.stderr, desc="sweep")

    if jobs == 1:
        return list(bar(map(worker, alphas, omegas, lambdas)))

    chunksize = max(1, len(grid) // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(bar(pool.map(worker, alphas, omegas, lambdas, chunksize=chunksize)))
