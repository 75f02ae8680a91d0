"""Exit criteria, one test each, at their stated tolerances.

A per-criterion PASS/FAIL summary is printed at the end of the session (see
conftest.py). Run just these with ``pytest -m acceptance``.
"""

import math
import time

import numpy as np
import pytest

import helpers
import oracles
from petviashvili.analysis import align_to_peak, amplitude, find_gamma_threshold, sweep_p, tail_analysis
from petviashvili.grid_spectral import Field, forward, inverse, make_grid
from petviashvili.guesses import GAUSSIAN, sample_guess
from petviashvili.models import EquationSpec, ExactBBMWave, SymbolKind, greens_function, rosenau_kernel, symbol_values
from petviashvili.solver import petviashvili_step_double, petviashvili_step_single, solve, stabilizing_factor

pytestmark = pytest.mark.acceptance

C = 1.8
TOL = 1e-14


def first_reaching(series, tol):
    return next((i for i, v in enumerate(series) if v <= tol), None)


def test_criterion_01_bbm_exact_solution_reproduction():
    deviations, times = {}, {}
    for p in (1, 4):
        g = make_grid(12, 0.05)
        t0 = time.perf_counter()
        res = solve(EquationSpec.bbm(p, C), sample_guess(GAUSSIAN, g))
        times[p] = time.perf_counter() - t0
        assert res.converged
        deviations[p] = float(np.max(np.abs(align_to_peak(res.profile).values - ExactBBMWave(p, C)(g.x))))
    print(f"max-norm deviation from exact: {deviations}; seconds: {times}")
    assert all(t < 5.0 for t in times.values())
    assert all(d <= 1e-6 for d in deviations.values()), deviations


def test_criterion_02_convergence_speed():
    runs = {
        "bbm p=1": helpers.bbm(1),
        "bbm p=4": helpers.bbm(4),
        "rosenau p=1": helpers.rosenau(1),
        "rosenau p=4": helpers.rosenau(4),
    }
    counts = {k: r.iterations for k, r in runs.items()}
    print(f"iterations: {counts}")
    for name, r in runs.items():
        assert r.converged, name
        assert r.final.E_r <= TOL and r.final.E_s <= TOL
        assert r.iterations <= 100, name


def test_criterion_03_error_decay_shape():
    runs = [helpers.bbm(1), helpers.bbm(4), helpers.rosenau(1), helpers.rosenau(4)]
    for r in runs:
        assert r.converged
        for key in ("E_s", "E_r"):
            series = [getattr(rec, key) for rec in r.trace]
            stop = first_reaching(series, TOL)
            assert stop is not None and stop >= 10
            window = series[stop - 10 : stop + 1]
            ratios = [b / a for a, b in zip(window, window[1:])]
            assert max(ratios) <= 10.0, (key, ratios)


def test_criterion_04_robustness_to_initial_guess():
    for family in (helpers.rosenau, helpers.bbm):
        results = {guess: family(4, guess=guess) for guess in helpers.GUESSES}
        assert all(r.converged for r in results.values())
        aligned = {k: align_to_peak(r.profile).values for k, r in results.items()}
        keys = list(aligned)
        for i, a in enumerate(keys):
            for b in keys[i + 1 :]:
                assert np.max(np.abs(aligned[a] - aligned[b])) <= 1e-6, (family.__name__, a, b)
        counts = [r.iterations for r in results.values()]
        print(f"{family.__name__} p=4 iterations by guess: {dict(zip(keys, counts))}")
        assert max(counts) - min(counts) <= 15


def test_criterion_05_rosenau_tail_structure():
    c0 = (0.8 / 1.8) ** 0.25
    ros = helpers.rosenau(1).profile
    for side in ("left", "right"):
        t = tail_analysis(ros, C, 4.0, side=side)
        print(f"rosenau {side} tail: rate {t.decay_rate:.4f} vs {c0 / math.sqrt(2):.4f}, sign changes {t.sign_changes}")
        assert t.sign_changes >= 1
        assert abs(t.decay_rate - c0 / math.sqrt(2)) <= 0.15 * c0 / math.sqrt(2)
    b = tail_analysis(helpers.bbm(1).profile, C, 4.0)
    print(f"bbm tail: rate {b.decay_rate:.4f} vs {2 / 3:.4f}, sign changes {b.sign_changes}")
    assert b.sign_changes == 0
    assert abs(b.decay_rate - 2 / 3) <= 0.10 * 2 / 3


def test_criterion_06_amplitude_monotone_in_p():
    ros = sweep_p(SymbolKind.ROSENAU, [1, 2, 3, 4], C, grid=helpers.grid(*helpers.ROSENAU_GRID))
    assert ros.all_converged
    assert np.all(np.diff(ros.amplitudes) < 0), ros.amplitudes
    bbm = sweep_p(SymbolKind.BBM, list(range(1, 9)), C, closed_form=True)
    a = bbm.amplitudes
    print(f"rosenau amplitudes {ros.amplitudes}; bbm closed form {a}")
    assert np.all(np.diff(a) < 0)
    assert np.all(a > 1)
    assert a[7] - 1 < a[3] - 1


def test_criterion_07_cubic_quintic_behaviour():
    runs = [helpers.cubic_quintic(g) for g in (0.1, 1.0, 7.0)]
    for r in runs:
        assert r.converged
        assert r.final.E_r <= TOL and r.final.E_s <= TOL
        assert r.iterations <= 100
        assert abs(1 - (1 / r.final.P + 1 / r.final.Q)) <= TOL
    amps = [amplitude(r.profile) for r in runs]
    print(f"amplitudes {amps}; iterations {[r.iterations for r in runs]}")
    assert amps[0] > amps[1] > amps[2]


def test_criterion_08_convergence_threshold():
    t0 = time.perf_counter()
    gamma = find_gamma_threshold(C, None, helpers.grid(*helpers.CQ_GRID), bracket=(-0.3, 0.0))
    elapsed = time.perf_counter() - t0
    print(f"threshold {gamma:.6f} in {elapsed:.2f} s")
    assert -0.145 <= gamma <= -0.134
    assert elapsed < 120


def test_criterion_09_oracle_equivalence():
    L, h = 4.0, 0.5
    g = make_grid(L, h)
    rng = np.random.default_rng(9)
    worst = 0.0
    for _ in range(20):
        amp, width, shift = rng.uniform(0.5, 3.0), rng.uniform(1.0, 2.5), rng.uniform(-1, 1)
        psi = Field(g, amp * np.exp(-(((g.x - shift) / width) ** 2)) + 0.05 * rng.random(g.n_points))
        for p in (1, 2):
            sym = EquationSpec.rosenau(p, C).symbol
            new, _ = petviashvili_step_single(psi, sym(g.xi), p, (p + 1) / p)
            ref, _ = oracles.step_single(psi.values, L, sym, p, (p + 1) / p)
            worst = max(worst, np.max(np.abs(new.values - ref)))
        sym = EquationSpec.cubic_quintic(1.0, C).symbol
        new, _, _ = petviashvili_step_double(psi, sym(g.xi), 1.0)
        ref, _, _ = oracles.step_double(psi.values, L, sym, 1.0)
        worst = max(worst, np.max(np.abs(new.values - ref)))
    print(f"largest library/oracle difference {worst:.2e}")
    assert worst <= 1e-12


def test_criterion_10_invariant_suite():
    rng = np.random.default_rng(10)
    g = make_grid(15, 0.05)

    # transform round trip and conjugate symmetry
    for _ in range(10):
        f = Field(g, rng.standard_normal(g.n_points) * rng.uniform(0.01, 100))
        c = forward(f).coeffs
        assert np.max(np.abs(inverse(forward(f)).values - f.values)) <= 1e-12 * np.max(np.abs(f.values))
        assert np.max(np.abs(c - np.conj(c[(-np.arange(g.n_points)) % g.n_points]))) <= 1e-12 * np.max(np.abs(c))

    # P is independent of the transform normalization
    psi = helpers.rosenau(1).profile
    P = {}
    for norm in ("backward", "ortho", "forward"):
        gn = g.with_norm(norm)
        P[norm] = stabilizing_factor(Field(gn, psi.values * 1.3), symbol_values(EquationSpec.rosenau(1, C).symbol, gn), 1)
    assert max(P.values()) - min(P.values()) <= 1e-12 * abs(P["backward"])

    # parity preservation along the whole run
    asym = []
    solve(
        EquationSpec.rosenau(1, C),
        sample_guess(GAUSSIAN, g),
        callback=lambda n, f: asym.append(np.max(np.abs(f.values[1:] - f.values[1:][::-1]))),
    )
    assert max(asym) <= 1e-12

    # shift equivariance for a grid-aligned shift
    shifted = solve(EquationSpec.rosenau(1, C), Field(g, np.roll(sample_guess(GAUSSIAN, g).values, 23)))
    assert shifted.converged
    assert np.max(np.abs(shifted.profile.values - np.roll(helpers.rosenau(1).profile.values, 23))) <= 1e-8

    # Green's kernel of 1 + D^4 from the spectral inverse
    wide = make_grid(40, 0.05)
    beta = greens_function(1.0 / (1.0 + wide.xi**4), wide)
    assert np.max(np.abs(beta.values - rosenau_kernel(wide.x))) <= 1e-6
