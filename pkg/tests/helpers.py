"""Cached reference solves shared across test modules (each is deterministic)."""

from functools import lru_cache

from petviashvili import (
    ASYMMETRIC_TRIANGLE,
    GAUSSIAN,
    NONSMOOTH_EXPONENTIAL,
    EquationSpec,
    make_grid,
    sample_guess,
    solve,
)

C = 1.8
GUESSES = {"gaussian": GAUSSIAN, "exp": NONSMOOTH_EXPONENTIAL, "triangle": ASYMMETRIC_TRIANGLE}
BBM_GRID = (12.0, 0.05)
ROSENAU_GRID = (15.0, 0.05)
CQ_GRID = (15.0, 0.1)


@lru_cache(maxsize=None)
def grid(L, h):
    return make_grid(L, h)


@lru_cache(maxsize=None)
def bbm(p, guess="gaussian", L=BBM_GRID[0], h=BBM_GRID[1]):
    g = grid(L, h)
    return solve(EquationSpec.bbm(p, C), sample_guess(GUESSES[guess], g))


@lru_cache(maxsize=None)
def rosenau(p, guess="gaussian", L=ROSENAU_GRID[0], h=ROSENAU_GRID[1]):
    g = grid(L, h)
    return solve(EquationSpec.rosenau(p, C), sample_guess(GUESSES[guess], g))


@lru_cache(maxsize=None)
def cubic_quintic(gamma, L=CQ_GRID[0], h=CQ_GRID[1]):
    g = grid(L, h)
    return solve(EquationSpec.cubic_quintic(gamma, C), sample_guess(GAUSSIAN, g))
