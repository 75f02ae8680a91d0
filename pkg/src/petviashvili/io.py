"""Plain-text output formats: profile, trace and sweep CSV plus the run record JSON."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .errors import MalformedCSV, NonUniformGrid
from .grid_spectral import Field, Grid

PROFILE_HEADER = ["x", "psi"]
TRACE_HEADER = ["n", "P", "Q", "E_r", "E_s", "E_a"]
SWEEP_HEADER = ["param", "amplitude", "status", "iterations"]

UNIFORM_RTOL = 1e-9


def fmt(v) -> str:
    """17 significant digits: enough to round-trip any double."""
    if v is None:
        return ""
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return format(float(v), ".17g")


def _write_rows(path, header, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    return path


def write_profile(path, f: Field) -> Path:
    return _write_rows(path, PROFILE_HEADER, ([fmt(x), fmt(v)] for x, v in zip(f.grid.x, f.values)))


def write_trace(path, trace) -> Path:
    rows = ([fmt(r.n), fmt(r.P), fmt(r.Q), fmt(r.E_r), fmt(r.E_s), fmt(r.E_a)] for r in trace)
    return _write_rows(path, TRACE_HEADER, rows)


def write_sweep(path, sweep) -> Path:
    rows = (
        [fmt(p), fmt(a) if math.isfinite(a) else "", s.value, fmt(n)]
        for p, a, s, n in zip(sweep.params, sweep.amplitudes, sweep.statuses, sweep.iterations)
    )
    return _write_rows(path, SWEEP_HEADER, rows)


def write_json(path, record: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        json.dump(record, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def read_profile_columns(path) -> tuple[np.ndarray, np.ndarray]:
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except UnicodeDecodeError as exc:
        raise MalformedCSV(f"{path}: not a text file") from exc
    if not rows:
        raise MalformedCSV(f"{path}: empty file")
    if [h.strip() for h in rows[0]] != PROFILE_HEADER:
        raise MalformedCSV(f"{path}: expected header x,psi, got {rows[0]}")
    body = [r for r in rows[1:] if r]
    if not body:
        raise MalformedCSV(f"{path}: no data rows")
    try:
        data = np.array([[float(a), float(b)] for a, b in body])
    except ValueError as exc:
        raise MalformedCSV(f"{path}: {exc}") from exc
    if not np.all(np.isfinite(data)):
        raise MalformedCSV(f"{path}: non-finite entries")
    return data[:, 0], data[:, 1]


def grid_from_points(x: np.ndarray) -> Grid:
    """Recover the Grid whose points are ``x`` (must be -L, -L+h, ..., L-h)."""
    n = len(x)
    if n < 4 or n % 2:
        raise NonUniformGrid(f"need an even number (>= 4) of points, got {n}")
    L = -float(x[0])
    if L <= 0:
        raise NonUniformGrid(f"first point must be -L < 0, got {x[0]}")
    grid = Grid(L, n // 2)
    h = grid.spacing
    d = np.diff(x)
    if np.any(np.abs(d - h) > UNIFORM_RTOL * h) or np.any(np.abs(x - grid.x) > UNIFORM_RTOL * L):
        raise NonUniformGrid("x column is not a uniform grid on [-L, L)")
    return grid


def load_profile(path) -> Field:
    x, psi = read_profile_columns(path)
    return Field(grid_from_points(x), psi)
