"""Solitary waves of the Rosenau and generalized BBM equations by Petviashvili iteration."""

__version__ = "0.1.0"

from .analysis import (
    SweepResult,
    TailAnalysis,
    align_to_peak,
    amplitude,
    find_gamma_threshold,
    peak_location,
    sweep_gamma,
    sweep_p,
    tail_analysis,
)
from .grid_spectral import Field, Grid, ModalField, forward, inner_product, inverse, make_grid, translate
from .guesses import ASYMMETRIC_TRIANGLE, GAUSSIAN, NONSMOOTH_EXPONENTIAL, GuessKind, GuessSpec, sample_guess
from .io import load_profile, write_profile
from .models import (
    CubicQuintic,
    DispersionSymbol,
    EquationSpec,
    ExactBBMWave,
    SinglePower,
    SymbolKind,
    apply_nonlinearity,
    exact_bbm,
    rosenau_kernel,
    symbol_values,
)
from .solver import (
    IterationRecord,
    SolveResult,
    SolverConfig,
    Status,
    petviashvili_step_double,
    petviashvili_step_single,
    residual_error,
    solve,
)
