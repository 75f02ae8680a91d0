"""
Petviashvili iteration for L phi = g(phi) with a positive Fourier multiplier L.

Single power g(u) = u^(p+1)/(p+1):

    P_n      = (p+1) <l psi_n^, psi_n^> / <(psi_n^(p+1))^, psi_n^>
    psi_n+1^ = P_n^theta / (p+1) * (psi_n^(p+1))^ / l,   theta = (p+1)/p

Cubic-quintic g(u) = u^3/3 + gamma u^5/5 uses the two factors

    P_n = 3 <l psi^, psi^> / <(psi^3)^, psi^>,   Q_n = (5/gamma) <l psi^, psi^> / <(psi^5)^, psi^>

whose reciprocals sum to 1 at a solution. The update raises the combined
factor M_n = 1 / (1/P_n + 1/Q_n) = <l psi^, psi^> / <g(psi)^, psi^> to the
per-term optimal exponents:

    psi_n+1^ = [M_n^(3/2) (psi^3)^ / 3 + gamma M_n^(5/4) (psi^5)^ / 5] / l

so a solution is a fixed point, the step stays real for gamma < 0, and
gamma -> 0 recovers the p = 2 scheme.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ConfigError, GammaZero, NumericalFailure, ZeroDenominator
from .grid_spectral import IMAG_TOL, Field, Grid, ModalField, forward, inner_product, inverse, inverse_complex, multiply
from .models import CubicQuintic, EquationSpec, Nonlinearity, SinglePower, symbol_values

# <a, b> is treated as zero below this fraction of its Cauchy-Schwarz bound
VANISHING_RTOL = 1e-12
IMAG_RTOL = 1e-8


class Status(enum.Enum):
    CONVERGED = "converged"
    MAX_ITERATIONS = "max_iterations_reached"
    DIVERGED_TO_ZERO = "diverged_to_zero"
    DIVERGED_TO_INFINITY = "diverged_to_infinity"
    NUMERICAL_FAILURE = "numerical_failure"


@dataclass(frozen=True)
class SolverConfig:
    """Stopping rules. ``theta`` overrides (p+1)/p for single-power runs only.

    With ``require_both`` (default) a run converges when E_r and E_s are both
    within tolerance; otherwise either one suffices.
    """

    tol_residual: float = 1e-14
    tol_stabilizing: float = 1e-14
    max_iterations: int = 500
    theta: float | None = None
    require_both: bool = True
    zero_threshold: float = 1e-10
    blowup_threshold: float = 1e10

    def __post_init__(self):
        if not (self.tol_residual > 0 and self.tol_stabilizing > 0):
            raise ConfigError("tolerances must be positive")
        if int(self.max_iterations) != self.max_iterations or self.max_iterations < 1:
            raise ConfigError("max_iterations must be a positive integer")
        if self.theta is not None and not (math.isfinite(self.theta) and self.theta > 0):
            raise ConfigError("theta must be a positive finite number")


@dataclass(frozen=True)
class IterationRecord:
    n: int
    P: float
    Q: float | None
    E_r: float
    E_s: float
    E_a: float


@dataclass
class SolveResult:
    profile: Field
    trace: list[IterationRecord] = field(default_factory=list)
    status: Status = Status.MAX_ITERATIONS
    message: str = ""

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED

    @property
    def iterations(self) -> int:
        """Number of steps applied to the guess to reach ``profile``."""
        return self.trace[-1].n if self.converged else len(self.trace)

    @property
    def final(self) -> IterationRecord | None:
        return self.trace[-1] if self.trace else None


def _cs_bound(a: np.ndarray, b: np.ndarray, grid: Grid) -> float:
    return math.sqrt(inner_product(a, a, grid).real * inner_product(b, b, grid).real)


def _real_inner(a: np.ndarray, b: np.ndarray, grid: Grid, denominator: bool = False) -> float:
    val = inner_product(a, b, grid)
    bound = _cs_bound(a, b, grid)
    if not (math.isfinite(val.real) and math.isfinite(val.imag)):
        raise NumericalFailure("non-finite inner product")
    if denominator and abs(val) <= VANISHING_RTOL * bound:
        raise ZeroDenominator("stabilizing-factor denominator vanishes")
    if abs(val.imag) > IMAG_RTOL * bound:
        raise NumericalFailure(f"inner product has imaginary part {val.imag:.3e}")
    return val.real


def _real_inverse(m: ModalField) -> Field:
    """Inverse transform with the imaginary residue judged relative to the field's size.

    Absolute below size 1; relative above it, so a runaway iterate reaches
    the blow-up check instead of failing on roundoff.
    """
    z = inverse_complex(m)
    residue = float(np.max(np.abs(z.imag)))
    if residue > IMAG_TOL * max(1.0, float(np.max(np.abs(z.real)))):
        raise NumericalFailure(f"imaginary residue {residue:.3e} exceeds tolerance")
    return Field(m.grid, z.real.copy(), m)


def _finish(grid: Grid, coeffs: np.ndarray) -> Field:
    if not np.all(np.isfinite(coeffs)):
        raise NumericalFailure("non-finite modal coefficients")
    return _real_inverse(ModalField(grid, coeffs))


def _single_factor(psi: Field, symbol: np.ndarray, p: int) -> tuple[float, np.ndarray]:
    g = psi.grid
    psi_hat = psi.modal.coeffs
    pow_hat = forward(Field(g, psi.values ** (p + 1))).coeffs
    den = _real_inner(pow_hat, psi_hat, g, denominator=True)
    return (p + 1) * _real_inner(symbol * psi_hat, psi_hat, g) / den, pow_hat


def stabilizing_factor(psi: Field, symbol: np.ndarray, p: int) -> float:
    return _single_factor(psi, symbol, p)[0]


def petviashvili_step_single(psi: Field, symbol: np.ndarray, p: int, theta: float) -> tuple[Field, float]:
    """One step of the single-factor scheme; returns (psi_next, P)."""
    P, pow_hat = _single_factor(psi, symbol, p)
    if not P > 0:
        raise NumericalFailure(f"stabilizing factor P = {P!r} is not positive")
    return _finish(psi.grid, (P**theta / (p + 1)) * pow_hat / symbol), P


def petviashvili_step_double(psi: Field, symbol: np.ndarray, gamma: float) -> tuple[Field, float, float]:
    """One step of the cubic-quintic scheme; returns (psi_next, P, Q)."""
    if gamma == 0:
        raise GammaZero("gamma == 0: use the single-power scheme with p = 2")
    g = psi.grid
    psi_hat = psi.modal.coeffs
    u = psi.values
    u3 = u * u * u
    cub_hat = forward(Field(g, u3)).coeffs
    quin_hat = forward(Field(g, u3 * u * u)).coeffs
    lin = _real_inner(symbol * psi_hat, psi_hat, g)
    cub = _real_inner(cub_hat, psi_hat, g, denominator=True)
    quin = _real_inner(quin_hat, psi_hat, g, denominator=True)
    P = 3.0 * lin / cub
    Q = (5.0 / gamma) * lin / quin
    M = 1.0 / (1.0 / P + 1.0 / Q)
    if not (M > 0 and math.isfinite(M)):
        raise NumericalFailure(f"combined stabilizing factor {M!r} is not positive")
    coeffs = (M**1.5 / 3.0 * cub_hat + gamma * M**1.25 / 5.0 * quin_hat) / symbol
    return _finish(g, coeffs), P, Q


def linear_operator(psi: Field, symbol: np.ndarray) -> Field:
    return inverse(multiply(psi.modal, symbol))


def residual_error(psi: Field, symbol: np.ndarray, n: Nonlinearity) -> float:
    """max_j |(L psi)_j - g(psi_j)|, with L psi formed from psi's modal view."""
    lpsi = _real_inverse(multiply(psi.modal, symbol)).values
    r = float(np.max(np.abs(lpsi - n(psi.values))))
    if not math.isfinite(r):
        raise NumericalFailure("non-finite residual")
    return r


def _route(n: Nonlinearity) -> Nonlinearity:
    # Q carries 5/gamma, so gamma == 0 is the pure cubic, i.e. p = 2
    if isinstance(n, CubicQuintic) and n.gamma == 0:
        return SinglePower(2)
    return n


def solve(
    eq: EquationSpec,
    guess: Field,
    config: SolverConfig | None = None,
    callback: Callable[[int, Field], None] | None = None,
) -> SolveResult:
    """Iterate from ``guess`` until convergence, divergence or the iteration cap.

    Record n describes iterate psi_n: its factor(s), E_r, E_s, and the step
    size E_a = max|psi_{n+1} - psi_n|. On convergence ``profile`` is the
    iterate whose record met the tolerances. ``callback(n, psi_n)`` sees every
    iterate.
    """
    config = config or SolverConfig()
    nl = _route(eq.nonlinearity)
    symbol = symbol_values(eq.symbol, guess.grid)
    if isinstance(nl, SinglePower):
        theta = config.theta if config.theta is not None else (nl.p + 1) / nl.p
    psi = guess
    trace: list[IterationRecord] = []
    combine = all if config.require_both else any

    for n in range(config.max_iterations):
        if callback is not None:
            callback(n, psi)
        try:
            if isinstance(nl, SinglePower):
                nxt, P = petviashvili_step_single(psi, symbol, nl.p, theta)
                Q = None
                E_s = abs(1.0 - P)
            else:
                nxt, P, Q = petviashvili_step_double(psi, symbol, nl.gamma)
                E_s = abs(1.0 - (1.0 / P + 1.0 / Q))
            E_r = residual_error(psi, symbol, nl)
        except ZeroDenominator as exc:
            return SolveResult(psi, trace, Status.DIVERGED_TO_ZERO, str(exc))
        except NumericalFailure as exc:
            return SolveResult(psi, trace, Status.NUMERICAL_FAILURE, str(exc))

        E_a = float(np.max(np.abs(nxt.values - psi.values)))
        trace.append(IterationRecord(n, P, Q, E_r, E_s, E_a))
        if combine((E_r <= config.tol_residual, E_s <= config.tol_stabilizing)):
            return SolveResult(psi, trace, Status.CONVERGED)

        size = float(np.max(np.abs(nxt.values)))
        if size > config.blowup_threshold:
            return SolveResult(psi, trace, Status.DIVERGED_TO_INFINITY, f"max|psi| = {size:.3e}")
        if size < config.zero_threshold:
            return SolveResult(nxt, trace, Status.DIVERGED_TO_ZERO, f"max|psi| = {size:.3e}")
        psi = nxt

    return SolveResult(psi, trace, Status.MAX_ITERATIONS, f"no convergence in {config.max_iterations} iterations")
