"""
Uniform periodic grid and Fourier-pseudospectral primitives.

The computational interval [-L, L) is split into 2N cells of width h = L/N.
Transforms follow ``numpy.fft`` layout and, by default, its "backward"
normalization (unnormalized forward, 1/2N inverse):

    c_k = sum_j f_j exp(-2 pi i jk / 2N)
    f_j = (1/2N) sum_k c_k exp(2 pi i jk / 2N)

with physical wavenumbers xi_k = k pi / L. Every quantity the solver derives
from modal data is a ratio or a multiplier, so the normalization is a free
choice; ``norm="ortho"`` and ``norm="forward"`` are accepted for checking that
claim.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from .errors import ImaginaryResidueTooLarge, LengthMismatch, NonDivisible, TooFewPoints

NORMS = ("backward", "ortho", "forward")

# absolute bound on the imaginary part discarded by `inverse`
IMAG_TOL = 1e-8
DIVISIBILITY_TOL = 1e-9


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Grid:
    """Uniform grid on [-L, L) with 2N points.

    Attributes:
        half_length: L.
        n_half: N, so there are 2N points and spacing L/N.
        norm: transform normalization, one of ``NORMS``.
    """

    half_length: float
    n_half: int
    norm: str = "backward"

    def __post_init__(self):
        if self.norm not in NORMS:
            raise ValueError(f"norm must be one of {NORMS}, got {self.norm!r}")

    @property
    def n_points(self) -> int:
        return 2 * self.n_half

    @property
    def spacing(self) -> float:
        return self.half_length / self.n_half

    @cached_property
    def x(self) -> np.ndarray:
        return _readonly(-self.half_length + self.spacing * np.arange(self.n_points))

    @cached_property
    def xi(self) -> np.ndarray:
        # fftfreq layout: 0, 1, ..., N-1, -N, ..., -1 (times pi/L)
        k = np.fft.fftfreq(self.n_points, d=1.0 / self.n_points)
        return _readonly(k * (np.pi / self.half_length))

    @property
    def dxi(self) -> float:
        return np.pi / self.half_length

    @cached_property
    def quadrature_weights(self) -> np.ndarray:
        """Trapezoid weights over one period of the modal sequence.

        Modal data repeat with period 2N in k, so the trapezoid rule on the
        closed node set k = -N..N (k = N being the copy of k = -N) puts the
        same weight dxi on every stored mode.
        """
        return _readonly(np.full(self.n_points, self.dxi))

    def with_norm(self, norm: str) -> "Grid":
        return Grid(self.half_length, self.n_half, norm)


def make_grid(half_length: float, spacing: float, norm: str = "backward") -> Grid:
    """Build the grid covering [-half_length, half_length) with the given spacing.

    Raises NonDivisible when half_length/spacing is not an integer (to 1e-9)
    and TooFewPoints when that integer is below 2.
    """
    if not (half_length > 0 and spacing > 0):
        raise ValueError("half_length and spacing must be positive")
    ratio = half_length / spacing
    n = int(round(ratio))
    if abs(ratio - n) > DIVISIBILITY_TOL * max(1.0, ratio):
        raise NonDivisible(f"L/h = {ratio!r} is not an integer")
    if n < 2:
        raise TooFewPoints(f"L/h = {n} < 2")
    return Grid(float(half_length), n, norm)


@dataclass(frozen=True, eq=False)
class ModalField:
    grid: Grid
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != (self.grid.n_points,):
            raise LengthMismatch(f"expected {self.grid.n_points} coefficients, got {c.shape}")
        object.__setattr__(self, "coeffs", _readonly(c))


@dataclass(frozen=True, eq=False)
class Field:
    """Real samples on a grid.

    A field produced by `inverse` remembers the modal coefficients it came
    from. Re-transforming the samples would inject roundoff at every mode,
    which the fourth-order symbol then amplifies by up to ~1e7.
    """

    grid: Grid
    values: np.ndarray
    _modal: ModalField | None = dc_field(default=None, repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.grid.n_points,):
            raise LengthMismatch(f"expected {self.grid.n_points} values, got {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("field values must be finite")
        object.__setattr__(self, "values", _readonly(v))
        if self._modal is not None and self._modal.grid != self.grid:
            raise LengthMismatch("cached modal view lives on a different grid")

    @property
    def modal(self) -> ModalField:
        if self._modal is None:
            object.__setattr__(self, "_modal", forward(self))
        return self._modal

    @property
    def x(self) -> np.ndarray:
        return self.grid.x


def forward(f: Field) -> ModalField:
    if f.values.shape != (f.grid.n_points,):
        raise LengthMismatch("field length does not match its grid")
    return ModalField(f.grid, np.fft.fft(f.values, norm=f.grid.norm))


def inverse_complex(m: ModalField) -> np.ndarray:
    return np.fft.ifft(m.coeffs, norm=m.grid.norm)


def inverse(m: ModalField) -> Field:
    """Inverse transform to a real field; the returned Field caches ``m``."""
    if m.coeffs.shape != (m.grid.n_points,):
        raise LengthMismatch("modal length does not match its grid")
    z = inverse_complex(m)
    residue = float(np.max(np.abs(z.imag))) if z.size else 0.0
    if not residue <= IMAG_TOL:
        raise ImaginaryResidueTooLarge(f"imaginary residue {residue:.3e} exceeds {IMAG_TOL:g}")
    return Field(m.grid, z.real.copy(), m)


def inner_product(a, b, grid: Grid) -> complex:
    """Trapezoid approximation of the integral of a * conj(b) over one period in xi.

    ``a`` and ``b`` are arrays (or ModalFields) in the grid's modal layout.
    With the backward convention, inner_product(f^, f^) = (2 pi / h^2) * h sum f_j^2.
    """
    a = a.coeffs if isinstance(a, ModalField) else np.asarray(a)
    b = b.coeffs if isinstance(b, ModalField) else np.asarray(b)
    if a.shape != b.shape or a.shape != (grid.n_points,):
        raise LengthMismatch(f"shapes {a.shape} and {b.shape} do not match grid of {grid.n_points}")
    return complex(np.sum(grid.quadrature_weights * a * np.conj(b)))


def multiply(m: ModalField, symbol: np.ndarray) -> ModalField:
    return ModalField(m.grid, m.coeffs * symbol)


def _unnormalized(m: ModalField) -> np.ndarray:
    """Coefficients rescaled to the backward convention."""
    n = m.grid.n_points
    scale = {"backward": 1.0, "ortho": np.sqrt(n), "forward": float(n)}[m.grid.norm]
    return m.coeffs * scale


def evaluate(f: Field, x, derivative: int = 0) -> np.ndarray:
    """Evaluate the trigonometric interpolant of ``f`` (or a derivative) at arbitrary x.

    The Nyquist mode is taken as a cosine so the interpolant stays real.
    """
    g = f.grid
    ny = g.n_half
    c = _unnormalized(f.modal).copy()
    c_ny = c[ny].real
    c[ny] = 0.0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    phase = np.exp(1j * np.outer(x - g.x[0], g.xi))
    out = (phase @ (c * (1j * g.xi) ** derivative)).real
    out += c_ny * np.real((1j * g.xi[ny]) ** derivative * phase[:, ny])
    return out / g.n_points


def translate(f: Field, shift: float) -> Field:
    """Return the field translated by ``shift``: result(x) = f(x - shift), spectrally exact."""
    g = f.grid
    xi = g.xi
    factor = np.exp(-1j * xi * shift)
    factor[g.n_half] = np.cos(xi[g.n_half] * shift)
    return inverse(ModalField(g, f.modal.coeffs * factor))
