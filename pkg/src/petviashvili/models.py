"""Equation catalog: dispersion symbols, nonlinearities and closed-form references."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import InvalidNonlinearity, InvalidSpeed
from .grid_spectral import Field, Grid, ModalField, inverse


class SymbolKind(enum.Enum):
    ROSENAU = "rosenau"
    BBM = "bbm"


@dataclass(frozen=True)
class DispersionSymbol:
    """l(xi) = c xi^4 + c - 1 (Rosenau) or c xi^2 + c - 1 (BBM); needs c > 1."""

    kind: SymbolKind
    c: float

    def __post_init__(self):
        if not math.isfinite(self.c) or self.c <= 1:
            raise InvalidSpeed(f"wave speed must exceed 1, got {self.c}")

    @property
    def order(self) -> int:
        return 4 if self.kind is SymbolKind.ROSENAU else 2

    @property
    def minimum(self) -> float:
        return self.c - 1.0

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=float)
        return self.c * xi**self.order + (self.c - 1.0)


@dataclass(frozen=True)
class SinglePower:
    """g(u) = u^(p+1) / (p+1)."""

    p: int

    def __post_init__(self):
        if isinstance(self.p, bool) or int(self.p) != self.p or self.p < 1:
            raise InvalidNonlinearity(f"p must be a positive integer, got {self.p!r}")
        object.__setattr__(self, "p", int(self.p))

    def __call__(self, u):
        return u ** (self.p + 1) / (self.p + 1)


@dataclass(frozen=True)
class CubicQuintic:
    """g(u) = u^3/3 + gamma u^5/5."""

    gamma: float

    def __post_init__(self):
        if not math.isfinite(self.gamma):
            raise InvalidNonlinearity(f"gamma must be finite, got {self.gamma!r}")

    def __call__(self, u):
        u2 = u * u
        return u * u2 / 3.0 + self.gamma * u * u2 * u2 / 5.0


Nonlinearity = Union[SinglePower, CubicQuintic]


@dataclass(frozen=True)
class EquationSpec:
    symbol: DispersionSymbol
    nonlinearity: Nonlinearity

    @classmethod
    def rosenau(cls, p: int, c: float) -> "EquationSpec":
        return cls(DispersionSymbol(SymbolKind.ROSENAU, c), SinglePower(p))

    @classmethod
    def bbm(cls, p: int, c: float) -> "EquationSpec":
        return cls(DispersionSymbol(SymbolKind.BBM, c), SinglePower(p))

    @classmethod
    def cubic_quintic(cls, gamma: float, c: float) -> "EquationSpec":
        return cls(DispersionSymbol(SymbolKind.ROSENAU, c), CubicQuintic(gamma))


def symbol_values(d: DispersionSymbol, grid: Grid) -> np.ndarray:
    """l(xi_k) at every grid wavenumber, in modal layout."""
    return d(grid.xi)


def apply_nonlinearity(n: Nonlinearity, f: Field) -> Field:
    return Field(f.grid, n(f.values))


def _sech(z):
    a = np.abs(z)
    e = np.exp(-a)
    return 2.0 * e / (1.0 + e * e)


@dataclass(frozen=True)
class ExactBBMWave:
    """u(x) = A sech^(2/p)(B (x - x0)), the generalized BBM solitary wave at t = 0."""

    p: int
    c: float
    x0: float = 0.0

    def __post_init__(self):
        SinglePower(self.p)
        if not math.isfinite(self.c) or self.c <= 1:
            raise InvalidSpeed(f"wave speed must exceed 1, got {self.c}")

    @property
    def amplitude(self) -> float:
        p, c = self.p, self.c
        return ((p + 1) * (p + 2) * (c - 1) / 2.0) ** (1.0 / p)

    @property
    def width(self) -> float:
        return 0.5 * self.p * math.sqrt(1.0 - 1.0 / self.c)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return self.amplitude * _sech(self.width * (x - self.x0)) ** (2.0 / self.p)


def exact_bbm(p: int, c: float, x0: float, grid: Grid) -> Field:
    return Field(grid, ExactBBMWave(p, c, x0)(grid.x))


def rosenau_kernel(x):
    """Green's function of 1 + D^4 on the line."""
    s = np.abs(np.asarray(x, dtype=float)) / math.sqrt(2.0)
    out = np.exp(-s) * (np.cos(s) + np.sin(s)) / (2.0 * math.sqrt(2.0))
    return out if out.ndim else float(out)


def greens_function(multiplier: np.ndarray, grid: Grid) -> Field:
    """Sample (1/2pi) int m(xi) e^{i xi x} dxi on the grid from m at the grid wavenumbers.

    ``multiplier`` is in modal layout. The (-1)^k factor moves the origin of
    the transform from x_0 = -L to x = 0.
    """
    m = np.asarray(multiplier, dtype=float)
    k = np.rint(grid.xi / grid.dxi).astype(int)
    sign = np.where(k % 2 == 0, 1.0, -1.0)
    coeffs = m * sign / grid.spacing
    n = grid.n_points
    coeffs = coeffs / {"backward": 1.0, "ortho": np.sqrt(n), "forward": float(n)}[grid.norm]
    return inverse(ModalField(grid, coeffs))
