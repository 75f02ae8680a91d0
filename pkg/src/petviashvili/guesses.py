"""Starting profiles for the iteration."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import FileLengthMismatch, FileUnreadable, MalformedCSV
from .grid_spectral import Field, Grid
from .io import read_profile_columns


class GuessKind(enum.Enum):
    GAUSSIAN = "gaussian"
    NONSMOOTH_EXPONENTIAL = "exp"
    ASYMMETRIC_TRIANGLE = "triangle"
    FROM_FILE = "file"


@dataclass(frozen=True)
class GuessSpec:
    kind: GuessKind
    path: Path | None = None

    @classmethod
    def parse(cls, text: str) -> "GuessSpec":
        """Accepts ``gaussian``, ``exp``, ``triangle`` or ``file:PATH``."""
        if text.startswith("file:"):
            return cls(GuessKind.FROM_FILE, Path(text[5:]))
        try:
            return cls(GuessKind(text))
        except ValueError:
            raise ValueError(f"unknown guess {text!r}; use gaussian, exp, triangle or file:PATH") from None

    def __str__(self):
        return f"file:{self.path}" if self.kind is GuessKind.FROM_FILE else self.kind.value


GAUSSIAN = GuessSpec(GuessKind.GAUSSIAN)
NONSMOOTH_EXPONENTIAL = GuessSpec(GuessKind.NONSMOOTH_EXPONENTIAL)
ASYMMETRIC_TRIANGLE = GuessSpec(GuessKind.ASYMMETRIC_TRIANGLE)


def triangle(x):
    """x/3 + 2 on [-6, -3], -x/9 + 2/3 on (-3, 6], zero elsewhere."""
    x = np.asarray(x, dtype=float)
    left = (x >= -6) & (x <= -3)
    right = (x > -3) & (x <= 6)
    return np.where(left, x / 3 + 2, np.where(right, -x / 9 + 2.0 / 3.0, 0.0))


def sample_guess(spec: GuessSpec, grid: Grid) -> Field:
    x = grid.x
    if spec.kind is GuessKind.GAUSSIAN:
        return Field(grid, np.exp(-x * x))
    if spec.kind is GuessKind.NONSMOOTH_EXPONENTIAL:
        return Field(grid, np.exp(-np.abs(x)))
    if spec.kind is GuessKind.ASYMMETRIC_TRIANGLE:
        return Field(grid, triangle(x))
    try:
        _, psi = read_profile_columns(spec.path)
    except (OSError, MalformedCSV) as exc:
        raise FileUnreadable(f"cannot read guess from {spec.path}: {exc}") from exc
    if len(psi) != grid.n_points:
        raise FileLengthMismatch(f"{spec.path} has {len(psi)} samples, grid has {grid.n_points}")
    return Field(grid, psi)
