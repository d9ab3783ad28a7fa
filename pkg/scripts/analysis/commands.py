"""
Command-Line Front End
Subcommands cycle, sweep, stroke and validate; CSV on stdout or --out,
progress banners on stderr

Exit codes: 0 success, 1 invalid parameters or failed validation, 2 usage or
config-file error.
"""

import argparse
import sys
from pathlib import Path

from scripts import __version__
from scripts.physics.errors import ConfigError, OttoEngineError, ValidationError
from scripts.thermodynamics.first_law import stroke_ledger
from scripts.thermodynamics.otto_cycle import LambdaBinding, run_cycle, stroke_durations
from scripts.thermodynamics.sweep import SweepGrid, sweep
from scripts.validation.ensemble import failures, run_ensemble

from .csv_output import cycle_frame, provenance_lines, stroke_frame, sweep_frame, write_csv
from .run_config import STROKES, RunConfig, parse_grid, parse_list, resolve_config

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _banner(title: str):
    print("=" * 70, file=sys.stderr)
    print(title, file=sys.stderr)
    print("=" * 70, file=sys.stderr)


def _status(line: str):
    print(line, file=sys.stderr)


def _header(cfg: RunConfig) -> list[str]:
    return provenance_lines(cfg.subcommand, cfg.seed, cfg.echo(), cfg.units)


def cmd_cycle(cfg: RunConfig) -> int:
    _banner("OTTO CYCLE")
    report = run_cycle(cfg.cycle_params())
    _status(f"   tau1 = {report.tau1:.6e} s, tau2 = {report.tau2:.6e} s")
    _status(f"   W = {report.w_net:.6e}, Q_h = {report.q_h:.6e}, eta = {report.eta:.6f} (Otto {report.eta_otto:.6f})")
    write_csv(cycle_frame([report]), cfg.out, _header(cfg))
    _status("✅ cycle complete")
    return EXIT_OK


def cmd_sweep(cfg: RunConfig) -> int:
    if cfg.lambda_grid is None and cfg.omega_grid is None and cfg.alpha_list is None:
        raise ValidationError("sweep needs at least one of --lambda-grid, --omega-grid, --alpha-list")
    if cfg.lam is None and cfg.lambda_grid is None:
        raise ValidationError("sweep needs --lambda or --lambda-grid")

    _banner("OTTO CYCLE SWEEP")
    scale = cfg.unit_system.frequency_scale
    base = cfg.cycle_params(lam=cfg.lam if cfg.lam is not None else cfg.lambda_grid[0])
    grid = SweepGrid.around(
        base,
        lambdas=cfg.lambda_grid,
        omegas=None if cfg.omega_grid is None else [w * scale for w in cfg.omega_grid],
        alphas=cfg.alpha_list,
    )
    _status(f"   {len(grid.alphas)} alpha x {len(grid.omegas)} omega x {len(grid.lambdas)} lambda = {len(grid)} points")

    results = sweep(grid, jobs=cfg.jobs, progress=cfg.progress)
    write_csv(sweep_frame(results, scale), cfg.out, _header(cfg))

    failed = sum(not r.ok for r in results)
    if failed:
        _status(f"⚠️  {failed} of {len(results)} points failed (see the status column)")
    _status("✅ sweep complete")
    return EXIT_OK


def cmd_stroke(cfg: RunConfig) -> int:
    _banner(f"STROKE TRACE: {cfg.stroke.upper()}")
    cp = cfg.cycle_params()
    tau1, tau2 = stroke_durations(cp)
    if cfg.stroke == "compression":
        drive, bath, omega_start = cp.drive(cp.omega2, tau1), cp.hot, cp.omega1
    else:
        drive, bath, omega_start = cp.drive(cp.omega1, tau2), cp.cold, cp.omega2

    ledger = stroke_ledger(drive, bath, omega_start, samples=cfg.samples)
    _status(f"   tau = {drive.duration:.6e} s, {cfg.samples} samples")
    _status(f"   W_L = {ledger.w_coherence:.6e}, W_S = {ledger.w_sudden:.6e}, dU = {ledger.delta_u:.6e}")
    _status(f"   quantum adiabatic parameter = {ledger.qa_parameter:.6e}")
    write_csv(stroke_frame(ledger, bath), cfg.out, _header(cfg))
    _status("✅ stroke trace complete")
    return EXIT_OK


def cmd_validate(cfg: RunConfig) -> int:
    _banner("ORACLE VALIDATION")
    base = cfg.cycle_params(lam=1.0 if cfg.lam is None else cfg.lam)
    _status(f"   {cfg.draws} draws (seed {cfg.seed}), RK4 on the first {cfg.rk4_draws}")
    if cfg.inject_error:
        _status("   ⚠️  injecting a relative error into the closed-form coherence work")

    table = run_ensemble(
        base,
        draws=cfg.draws,
        seed=cfg.seed,
        rk4_draws=cfg.rk4_draws,
        samples=cfg.samples,
        inject_error=cfg.inject_error,
        jobs=cfg.jobs,
        progress=cfg.progress,
    )
    write_csv(table, cfg.out, _header(cfg))

    failed = failures(table)
    if len(failed):
        _status(f"❌ {len(failed)} of {len(table)} checks failed")
        for row in failed.to_dict("records"):
            _status(
                f"   {row['check']} draw={row['draw']} value={row['value']:.3e} bound={row['bound']:.3e} "
                f"alpha_rad={row['alpha_rad']:.17g} omega_ghz={row['omega_ghz']:.17g} lambda={row['lambda']:.17g}"
            )
        return EXIT_FAILURE
    _status(f"✅ all {len(table)} checks passed")
    return EXIT_OK


COMMANDS = {
    "cycle": cmd_cycle,
    "sweep": cmd_sweep,
    "stroke": cmd_stroke,
    "validate": cmd_validate,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    physics = common.add_argument_group("physical parameters")
    physics.add_argument("--omega1-ghz", type=float, help="hot-isochore field frequency (default 6)")
    physics.add_argument("--omega2-ghz", type=float, help="cold-isochore field frequency (default 1)")
    physics.add_argument("--omega-ghz", type=float, help="signed rotation rate of the field (default -6)")
    physics.add_argument("--alpha-rad", "--alpha", dest="alpha_rad", type=float, help="field incline (default pi/4)")
    physics.add_argument("--th-k", type=float, help="hot bath temperature in K (default 1)")
    physics.add_argument("--tc-k", type=float, help="cold bath temperature in K (default 0.1)")
    physics.add_argument("--lambda", dest="lam", type=float, help="stroke duration in Rabi periods")
    physics.add_argument("--units", choices=["si", "natural"])
    physics.add_argument(
        "--lambda-binding",
        choices=[b.value for b in LambdaBinding],
        help="which Rabi frequency times each stroke (default stage)",
    )

    run = common.add_argument_group("run control")
    run.add_argument("--out", type=Path, help="CSV path (default stdout)")
    run.add_argument("--seed", type=int)
    run.add_argument("--jobs", type=int, help="worker processes")
    run.add_argument("--config", type=Path, help="key=value file; flags override it")
    run.add_argument("--progress", action="store_true", default=None, help="progress bar on stderr")

    parser = argparse.ArgumentParser(
        prog="run_engine.py",
        description="Spin-1/2 quantum Otto engine driven by a rotating magnetic field",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    sub.add_parser("cycle", parents=[common], help="one cycle, one CSV row")

    sweep_parser = sub.add_parser("sweep", parents=[common], help="cycle over a parameter grid")
    sweep_parser.add_argument("--lambda-grid", metavar="A:B:N")
    sweep_parser.add_argument("--omega-grid", metavar="A:B:N", help="rotation rates in GHz")
    sweep_parser.add_argument("--alpha-list", metavar="V1,V2,...")

    stroke_parser = sub.add_parser("stroke", parents=[common], help="time-resolved rates of one stroke")
    stroke_parser.add_argument("--stroke", choices=STROKES)
    stroke_parser.add_argument("--samples", type=int)

    validate_parser = sub.add_parser("validate", parents=[common], help="oracle suite over a seeded ensemble")
    validate_parser.add_argument("--draws", type=int)
    validate_parser.add_argument("--rk4-draws", type=int)
    validate_parser.add_argument("--samples", type=int)
    validate_parser.add_argument("--inject-error", action="store_true", default=None, help=argparse.SUPPRESS)
    return parser


def _cli_values(args: argparse.Namespace) -> dict[str, object]:
    values = {k: v for k, v in vars(args).items() if k not in ("subcommand", "config")}
    for name, parser in (("lambda_grid", parse_grid), ("omega_grid", parse_grid), ("alpha_list", parse_list)):
        if values.get(name) is not None:
            values[name] = parser(values[name])
    return values


def _error(exc: Exception):
    print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)


# flags whose value may start with "-" (negative rates, grids such as -20:20:81)
SIGNED_VALUE_FLAGS = (
    "--omega-grid",
    "--lambda-grid",
    "--alpha-list",
    "--omega-ghz",
    "--omega1-ghz",
    "--omega2-ghz",
    "--alpha-rad",
    "--alpha",
    "--lambda",
    "--th-k",
    "--tc-k",
)


def attach_signed_values(argv: list[str]) -> list[str]:
    """Fold `--flag -value` into `--flag=-value` so argparse does not read the value as an option"""
    folded = []
    tokens = iter(argv)
    for token in tokens:
        if token in SIGNED_VALUE_FLAGS:
            value = next(tokens, None)
            if value is None:
                folded.append(token)
            elif value.startswith("-") and not value.startswith("--"):
                folded.append(f"{token}={value}")
            else:
                folded.extend((token, value))
        else:
            folded.append(token)
    return folded


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(attach_signed_values(argv))

    try:
        cfg = resolve_config(args.subcommand, _cli_values(args), args.config)
    except ConfigError as exc:
        _error(exc)
        return EXIT_USAGE
    except ValidationError as exc:
        _error(exc)
        return EXIT_FAILURE

    if cfg.subcommand in ("cycle", "stroke") and cfg.lam is None:
        parser.error(f"{cfg.subcommand} needs --lambda")

    try:
        return COMMANDS[cfg.subcommand](cfg)
    except OttoEngineError as exc:
        _error(exc)
        return EXIT_FAILURE
