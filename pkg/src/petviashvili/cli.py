"""
Command-line front end.

    petviashvili solve --equation rosenau --p 1 --c 1.8 --L 15 --h 0.05 --guess gaussian
    petviashvili sweep-p --equation rosenau --p-values 1 2 3 4
    petviashvili sweep-gamma --gamma-values 0.1 1 7
    petviashvili threshold --c 1.8 --bracket -0.3 0
    petviashvili validate-bbm --p 4 --c 1.8 --L 12 --h 0.05

Settings come from built-in defaults, then an optional ``--config`` JSON file,
then flags (flags win). Exit codes: 0 success, 1 configuration or I/O error,
2 non-convergence (or a failed validation / threshold search).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import align_to_peak, amplitude, find_gamma_threshold, sweep_gamma, sweep_p
from .errors import BadBracket, ConfigError, PetviashviliError
from .grid_spectral import make_grid
from .guesses import GuessSpec, sample_guess
from .io import write_json, write_profile, write_sweep, write_trace
from .models import EquationSpec, ExactBBMWave, SymbolKind
from .solver import SolverConfig, Status, solve

COMMANDS = ("solve", "sweep-p", "sweep-gamma", "threshold", "validate-bbm")
EQUATIONS = ("rosenau", "bbm", "cubic-quintic")

# (L, h) per equation
GRID_DEFAULTS = {"bbm": (12.0, 0.05), "rosenau": (15.0, 0.05), "cubic-quintic": (15.0, 0.1)}

EXIT_OK, EXIT_CONFIG, EXIT_NOT_CONVERGED = 0, 1, 2


@dataclass
class RunConfig:
    command: str = "solve"
    equation: str = "rosenau"
    p: int = 1
    gamma: float = 1.0
    c: float = 1.8
    L: float | None = None
    h: float | None = None
    guess: str | None = None
    tol: float = 1e-14
    max_iter: int = 500
    theta: float | None = None
    output_dir: str = "results"
    p_values: list[int] | None = None
    gamma_values: list[float] | None = None
    closed_form: bool = False
    bracket: list[float] | None = None
    width: float = 1e-4
    max_deviation: float = 1e-6

    def __post_init__(self):
        if self.command == "threshold":
            self.equation = "cubic-quintic"
        elif self.command == "validate-bbm":
            self.equation = "bbm"
        elif self.command == "sweep-gamma":
            self.equation = "cubic-quintic"
        if self.guess is None:
            self.guess = "warm" if self.command == "threshold" else "gaussian"
        if self.equation in GRID_DEFAULTS:
            L, h = GRID_DEFAULTS[self.equation]
            self.L = L if self.L is None else self.L
            self.h = h if self.h is None else self.h
        if self.p_values is None:
            self.p_values = [1, 2, 3, 4]
        if self.gamma_values is None:
            self.gamma_values = [0.1, 1.0, 7.0]
        if self.bracket is None:
            self.bracket = [-0.3, 0.0]

    def validate(self) -> None:
        """Check every field against the library preconditions before any computation."""

        def bad(name, why):
            raise ConfigError(f"{name}: {why}")

        if self.command not in COMMANDS:
            bad("command", f"must be one of {COMMANDS}")
        if self.equation not in EQUATIONS:
            bad("equation", f"must be one of {EQUATIONS}")
        if not (isinstance(self.c, (int, float)) and math.isfinite(self.c) and self.c > 1):
            bad("c", f"wave speed must exceed 1, got {self.c}")
        if self.equation != "cubic-quintic" and (int(self.p) != self.p or self.p < 1):
            bad("p", f"must be a positive integer, got {self.p}")
        if not math.isfinite(self.gamma):
            bad("gamma", "must be finite")
        try:
            make_grid(self.L, self.h)
        except (PetviashviliError, ValueError, TypeError) as exc:
            bad("L/h", str(exc))
        if self.guess == "warm":
            if self.command != "threshold":
                bad("guess", "'warm' is only meaningful for the threshold command")
        else:
            try:
                GuessSpec.parse(self.guess)
            except ValueError as exc:
                bad("guess", str(exc))
        try:
            self.solver_config()
        except ConfigError as exc:
            bad("tol/max_iter/theta", str(exc))
        if not self.p_values or any(int(p) != p or p < 1 for p in self.p_values):
            bad("p_values", "need one or more positive integers")
        if not self.gamma_values:
            bad("gamma_values", "need one or more values")
        if len(self.bracket) != 2 or not self.bracket[0] < self.bracket[1]:
            bad("bracket", f"need lo < hi, got {self.bracket}")
        if not self.width > 0:
            bad("width", "must be positive")
        if self.closed_form and self.equation != "bbm":
            bad("closed_form", "only available for --equation bbm")

    def solver_config(self) -> SolverConfig:
        return SolverConfig(
            tol_residual=self.tol, tol_stabilizing=self.tol, max_iterations=self.max_iter, theta=self.theta
        )

    def equation_spec(self) -> EquationSpec:
        if self.equation == "bbm":
            return EquationSpec.bbm(self.p, self.c)
        if self.equation == "rosenau":
            return EquationSpec.rosenau(self.p, self.c)
        return EquationSpec.cubic_quintic(self.gamma, self.c)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", dest="config_file", help="JSON file of RunConfig fields")
    common.add_argument("--equation", choices=EQUATIONS)
    common.add_argument("--p", type=int)
    common.add_argument("--gamma", type=float)
    common.add_argument("--c", type=float)
    common.add_argument("--L", type=float)
    common.add_argument("--h", type=float)
    common.add_argument("--guess", help="gaussian | exp | triangle | file:PATH (threshold also: warm)")
    common.add_argument("--tol", type=float)
    common.add_argument("--max-iter", dest="max_iter", type=int)
    common.add_argument("--theta", type=float)
    common.add_argument("--output-dir", dest="output_dir")

    parser = _Parser(prog="petviashvili", description="Solitary waves of Rosenau/BBM equations by Petviashvili iteration.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("solve", parents=[common], argument_default=argparse.SUPPRESS, help="compute one solitary wave")
    sp = sub.add_parser("sweep-p", parents=[common], argument_default=argparse.SUPPRESS, help="amplitude against p")
    sp.add_argument("--p-values", dest="p_values", type=int, nargs="+")
    sp.add_argument("--closed-form", dest="closed_form", action="store_true")
    sg = sub.add_parser("sweep-gamma", parents=[common], argument_default=argparse.SUPPRESS, help="cubic-quintic amplitude against gamma")
    sg.add_argument("--gamma-values", dest="gamma_values", type=float, nargs="+")
    th = sub.add_parser("threshold", parents=[common], argument_default=argparse.SUPPRESS, help="bisect for the cubic-quintic gamma threshold")
    th.add_argument("--bracket", type=float, nargs=2, metavar=("LO", "HI"))
    th.add_argument("--width", type=float)
    vb = sub.add_parser("validate-bbm", parents=[common], argument_default=argparse.SUPPRESS, help="compare a BBM solve with the exact wave")
    vb.add_argument("--max-deviation", dest="max_deviation", type=float)
    return parser


def config_from_args(argv=None) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    settings = {}
    cfg_file = ns.pop("config_file", None)
    if cfg_file is not None:
        try:
            with open(cfg_file) as fh:
                settings.update(json.load(fh))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"config: cannot read {cfg_file}: {exc}") from exc
    settings.update(ns)
    known = {f.name for f in fields(RunConfig)}
    unknown = set(settings) - known
    if unknown:
        raise ConfigError(f"config: unknown fields {sorted(unknown)}")
    return RunConfig(**settings)


def _record(cfg: RunConfig, **extra) -> dict:
    return {"config": asdict(cfg), **extra}


def _solve_command(cfg: RunConfig, out: Path, t0: float) -> int:
    grid = make_grid(cfg.L, cfg.h)
    res = solve(cfg.equation_spec(), sample_guess(GuessSpec.parse(cfg.guess), grid), cfg.solver_config())
    write_profile(out / "profile.csv", res.profile)
    write_trace(out / "trace.csv", res.trace)
    extra = {}
    code = EXIT_OK if res.converged else EXIT_NOT_CONVERGED
    if cfg.command == "validate-bbm" and res.converged:
        exact = ExactBBMWave(cfg.p, cfg.c)(grid.x)
        deviation = float(np.max(np.abs(align_to_peak(res.profile).values - exact)))
        extra = {"max_deviation": deviation, "tolerance": cfg.max_deviation}
        print(f"max-norm deviation from exact: {deviation:.3e}")
        if not deviation <= cfg.max_deviation:
            code = EXIT_NOT_CONVERGED
    final = res.final
    write_json(
        out / "run.json",
        _record(
            cfg,
            status=res.status.value,
            iterations=res.iterations,
            amplitude=amplitude(res.profile),
            final_E_r=final.E_r if final else None,
            final_E_s=final.E_s if final else None,
            message=res.message,
            wall_time_s=time.perf_counter() - t0,
            **extra,
        ),
    )
    print(f"{res.status.value}: {res.iterations} iterations, amplitude {amplitude(res.profile):.15g}")
    if final:
        print(f"final E_r = {final.E_r:.3e}, E_s = {final.E_s:.3e}")
    return code


def _sweep_command(cfg: RunConfig, out: Path, t0: float) -> int:
    grid = make_grid(cfg.L, cfg.h)
    guess = GuessSpec.parse(cfg.guess)
    if cfg.command == "sweep-p":
        kind = SymbolKind.BBM if cfg.equation == "bbm" else SymbolKind.ROSENAU
        sw = sweep_p(kind, cfg.p_values, cfg.c, cfg.solver_config(), grid, guess, closed_form=cfg.closed_form)
    else:
        sw = sweep_gamma(cfg.gamma_values, cfg.c, cfg.solver_config(), grid, guess)
    write_sweep(out / "sweep.csv", sw)
    write_json(
        out / "run.json",
        _record(cfg, status="sweep_complete", points=len(sw), converged_points=sum(s is Status.CONVERGED for s in sw.statuses), wall_time_s=time.perf_counter() - t0),
    )
    for p, a, s, n in zip(sw.params, sw.amplitudes, sw.statuses, sw.iterations):
        print(f"{p:g}\t{a:.15g}\t{s.value}\t{n}")
    return EXIT_OK


def _threshold_command(cfg: RunConfig, out: Path, t0: float) -> int:
    grid = make_grid(cfg.L, cfg.h)
    guess = None if cfg.guess == "warm" else GuessSpec.parse(cfg.guess)
    try:
        gamma = find_gamma_threshold(cfg.c, cfg.solver_config(), grid, guess, tuple(cfg.bracket), cfg.width)
    except BadBracket as exc:
        write_json(out / "run.json", _record(cfg, status="bad_bracket", message=str(exc), wall_time_s=time.perf_counter() - t0))
        print(f"bad bracket: {exc}", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    write_json(out / "run.json", _record(cfg, status="threshold_found", threshold=gamma, wall_time_s=time.perf_counter() - t0))
    print(f"{gamma:.6f}")
    return EXIT_OK


def run(cfg: RunConfig) -> int:
    cfg.validate()
    out = Path(cfg.output_dir)
    t0 = time.perf_counter()
    if cfg.command in ("solve", "validate-bbm"):
        return _solve_command(cfg, out, t0)
    if cfg.command in ("sweep-p", "sweep-gamma"):
        return _sweep_command(cfg, out, t0)
    return _threshold_command(cfg, out, t0)


def main(argv=None) -> int:
    try:
        cfg = config_from_args(argv)
        return run(cfg)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PetviashviliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
