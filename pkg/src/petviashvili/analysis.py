"""Experiment drivers built on `solve`: sweeps, alignment, tails and the gamma threshold."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import BadBracket, FlatField, TailBelowFloor, TailTooShort
from .grid_spectral import Field, Grid, evaluate, translate
from .guesses import GAUSSIAN, GuessSpec, sample_guess
from .models import EquationSpec, ExactBBMWave, SymbolKind, DispersionSymbol, SinglePower
from .solver import SolveResult, SolverConfig, Status, solve

TAIL_FLOOR = 1e-13
MIN_TAIL_POINTS = 40
PEAK_TIE_RTOL = 1e-12


def amplitude(profile: Field) -> float:
    """Peak value; equals phi(0) for a centred profile."""
    return float(np.max(profile.values))


def peak_location(profile: Field) -> float:
    """Location of the maximum of the trigonometric interpolant.

    Starts from the grid maximum (smallest x on ties) and refines with Newton
    on the interpolant's derivative, staying within one cell.
    """
    v = profile.values
    top = v.max()
    ties = np.count_nonzero(v >= top - PEAK_TIE_RTOL * max(abs(top), 1e-300))
    if ties > 2 or top == v.min():
        raise FlatField(f"maximum attained at {ties} grid points")
    i = int(np.argmax(v))
    x_i = float(profile.grid.x[i])
    h = profile.grid.spacing
    a = x_i
    for _ in range(50):
        d1 = evaluate(profile, a, 1)[0]
        d2 = evaluate(profile, a, 2)[0]
        if not d2 < 0:
            return x_i
        step = d1 / d2
        a -= step
        if abs(a - x_i) > h:
            return x_i
        if abs(step) <= 1e-15 * max(1.0, abs(a)):
            break
    return a


def align_to_peak(profile: Field, subcell: bool = True) -> Field:
    """Translate the profile so its peak sits at x = 0.

    By default the trigonometric interpolant is translated by the sub-cell
    peak location, which is exact for resolved periodic profiles such as
    solver output. ``subcell=False`` instead rolls by whole cells to the grid
    maximum: exact for any samples, but leaves up to h/2 of misalignment.
    """
    if not subcell:
        peak_location(profile)  # same flat-field check
        i = int(np.argmax(profile.values))
        return Field(profile.grid, np.roll(profile.values, profile.grid.n_half - i))
    return translate(profile, -peak_location(profile))


@dataclass
class SweepResult:
    params: np.ndarray
    amplitudes: np.ndarray  # NaN where the point did not converge
    statuses: list[Status]
    iterations: np.ndarray
    results: list[SolveResult | None] = field(default_factory=list, repr=False)

    def __len__(self):
        return len(self.params)

    @property
    def all_converged(self) -> bool:
        return all(s is Status.CONVERGED for s in self.statuses)


def _as_field(guess: Field | GuessSpec, grid: Grid) -> Field:
    return guess if isinstance(guess, Field) else sample_guess(guess, grid)


def _run_points(eqs, guess: Field, config, max_workers) -> list[SolveResult]:
    job = lambda eq: solve(eq, guess, config)  # noqa: E731
    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers) as pool:
            return list(pool.map(job, eqs))
    return [job(eq) for eq in eqs]


def _collect(params, results: Sequence[SolveResult]) -> SweepResult:
    return SweepResult(
        params=np.asarray(params, dtype=float),
        amplitudes=np.array([amplitude(r.profile) if r.converged else math.nan for r in results]),
        statuses=[r.status for r in results],
        iterations=np.array([r.iterations for r in results], dtype=int),
        results=list(results),
    )


def sweep_p(
    kind: SymbolKind,
    p_values: Sequence[int],
    c: float,
    config: SolverConfig | None = None,
    grid: Grid | None = None,
    guess: Field | GuessSpec = GAUSSIAN,
    closed_form: bool = False,
    max_workers: int | None = None,
) -> SweepResult:
    """Amplitude against p. ``closed_form`` takes BBM amplitudes from the exact wave."""
    if len(p_values) == 0:
        raise ValueError("p_values is empty")
    for p in p_values:
        SinglePower(p)
    if closed_form:
        if kind is not SymbolKind.BBM:
            raise ValueError("closed-form amplitudes exist only for BBM")
        return SweepResult(
            params=np.asarray(p_values, dtype=float),
            amplitudes=np.array([ExactBBMWave(p, c).amplitude for p in p_values]),
            statuses=[Status.CONVERGED] * len(p_values),
            iterations=np.zeros(len(p_values), dtype=int),
            results=[None] * len(p_values),
        )
    if grid is None:
        raise ValueError("a grid is required for numerical sweeps")
    symbol = DispersionSymbol(kind, c)
    eqs = [EquationSpec(symbol, SinglePower(p)) for p in p_values]
    return _collect(p_values, _run_points(eqs, _as_field(guess, grid), config, max_workers))


def sweep_gamma(
    gamma_values: Sequence[float],
    c: float,
    config: SolverConfig | None,
    grid: Grid,
    guess: Field | GuessSpec = GAUSSIAN,
    max_workers: int | None = None,
) -> SweepResult:
    if len(gamma_values) == 0:
        raise ValueError("gamma_values is empty")
    eqs = [EquationSpec.cubic_quintic(g, c) for g in gamma_values]
    return _collect(gamma_values, _run_points(eqs, _as_field(guess, grid), config, max_workers))


def gamma_predicate(c: float, config: SolverConfig | None, guess: Field) -> Callable[[float], bool]:
    """gamma -> whether the cubic-quintic solve from ``guess`` converges."""

    def converges(gamma: float) -> bool:
        return solve(EquationSpec.cubic_quintic(gamma, c), guess, config).converged

    return converges


def find_gamma_threshold(
    c: float,
    config: SolverConfig | None,
    grid: Grid,
    guess: Field | GuessSpec | None = None,
    bracket: tuple[float, float] = (-0.3, 0.0),
    width: float = 1e-4,
) -> float:
    """Bisect for the gamma below which the cubic-quintic iteration stops converging.

    The predicate is "solve converges within config.max_iterations" from a
    fixed starting profile. With ``guess=None`` that profile is the converged
    solution at the upper bracket end (itself computed from a Gaussian), since
    no gamma < 0 converges from the Gaussian directly.
    """
    lo, hi = map(float, bracket)
    if not lo < hi:
        raise BadBracket(f"bracket {bracket} must satisfy lo < hi")
    if hi - lo <= width:
        return 0.5 * (lo + hi)
    if guess is None:
        warm = solve(EquationSpec.cubic_quintic(hi, c), sample_guess(GAUSSIAN, grid), config)
        if not warm.converged:
            raise BadBracket(f"no converged solution at gamma = {hi} to start from")
        start = warm.profile
    else:
        start = _as_field(guess, grid)
    converges = gamma_predicate(c, config, start)
    if not converges(hi) or converges(lo):
        raise BadBracket(f"convergence does not change across {bracket}")
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if converges(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class TailAnalysis:
    decay_rate: float
    oscillation_wavenumber: float
    c0: float
    sign_changes: int

    @property
    def predicted_rate(self) -> float:
        """Real (and imaginary) part of the root c0 (1 + i)/sqrt(2) for the Rosenau symbol."""
        return self.c0 / math.sqrt(2.0)


def tail_analysis(
    profile: Field,
    c: float,
    tail_start: float,
    tail_end: float | None = None,
    side: str = "right",
) -> TailAnalysis:
    """Fit the decay of |profile| over tail_start < x <= tail_end.

    The envelope is the log of the oscillation peaks of |profile|, fitted by
    least squares; a monotone tail has no interior peaks and all its samples
    are fitted instead. ``side="left"`` analyses x < -tail_start.
    """
    x = profile.grid.x
    v = profile.values
    if side == "left":
        x, v = -x[::-1], v[::-1]
    elif side != "right":
        raise ValueError("side must be 'left' or 'right'")
    end = np.inf if tail_end is None else tail_end
    mask = (x > tail_start) & (x <= end)
    if np.count_nonzero(mask) < MIN_TAIL_POINTS:
        raise TailTooShort(f"only {np.count_nonzero(mask)} points beyond x = {tail_start}")
    xs, vs = x[mask], v[mask]
    av = np.abs(vs)
    if np.all(av < TAIL_FLOOR):
        raise TailBelowFloor("tail is below 1e-13 everywhere; choose a smaller tail_start")

    keep = av >= TAIL_FLOOR
    signs = np.sign(vs[keep])
    sign_changes = int(np.count_nonzero(signs[1:] != signs[:-1]))

    inner = np.arange(1, len(av) - 1)
    peaks = inner[(av[inner] >= av[inner - 1]) & (av[inner] > av[inner + 1]) & keep[inner]]
    fit_idx = peaks if len(peaks) >= 2 else np.flatnonzero(keep)
    slope = np.polyfit(xs[fit_idx], np.log(av[fit_idx]), 1)[0]

    crossings = []
    xk, vk = xs[keep], vs[keep]
    for j in np.flatnonzero(np.sign(vk[1:]) != np.sign(vk[:-1])):
        crossings.append(xk[j] - vk[j] * (xk[j + 1] - xk[j]) / (vk[j + 1] - vk[j]))
    if len(crossings) >= 2:
        k_osc = math.pi / float(np.mean(np.diff(crossings)))
    elif len(peaks) >= 2:
        k_osc = math.pi / float(np.mean(np.diff(xs[peaks])))
    else:
        k_osc = 0.0

    c0 = ((c - 1.0) / c) ** 0.25
    return TailAnalysis(float(-slope), k_osc, c0, sign_changes)
