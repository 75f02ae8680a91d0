import numpy as np
import pytest

from petviashvili.errors import FileLengthMismatch, FileUnreadable
from petviashvili.grid_spectral import Field, make_grid
from petviashvili.guesses import (
    ASYMMETRIC_TRIANGLE,
    GAUSSIAN,
    NONSMOOTH_EXPONENTIAL,
    GuessKind,
    GuessSpec,
    sample_guess,
    triangle,
)
from petviashvili.io import write_profile


class TestTriangle:
    @pytest.mark.parametrize("x,expected", [(-3.0, 1.0), (-6.0, 0.0), (6.0, 0.0), (0.0, 2 / 3), (-4.5, 0.5), (-7.0, 0.0), (7.0, 0.0)])
    def test_values(self, x, expected):
        assert triangle(x) == pytest.approx(expected, abs=1e-15)

    def test_continuous_at_breakpoints(self):
        for b in (-6.0, -3.0, 6.0):
            eps = 1e-9
            assert abs(triangle(b - eps) - triangle(b + eps)) < 1e-8

    def test_sampled_on_grid(self):
        g = make_grid(12, 0.05)
        f = sample_guess(ASYMMETRIC_TRIANGLE, g)
        assert f.values[np.argmin(np.abs(g.x + 3))] == pytest.approx(1.0)


class TestSampleGuess:
    def test_gaussian_peak(self):
        g = make_grid(12, 0.05)
        assert sample_guess(GAUSSIAN, g).values[g.n_half] == 1.0

    @pytest.mark.parametrize("spec", [GAUSSIAN, NONSMOOTH_EXPONENTIAL])
    def test_even(self, spec):
        g = make_grid(12, 0.05)
        v = sample_guess(spec, g).values
        np.testing.assert_allclose(v[1:], v[1:][::-1], atol=1e-14)

    @pytest.mark.parametrize("spec", [GAUSSIAN, NONSMOOTH_EXPONENTIAL, ASYMMETRIC_TRIANGLE])
    def test_nonnegative_and_bounded(self, spec):
        v = sample_guess(spec, make_grid(15, 0.05)).values
        assert np.all(v >= 0) and np.all(v <= 2)

    def test_from_file(self, tmp_path):
        g = make_grid(2, 0.5)
        src = Field(g, np.exp(-g.x**2) * 1.25)
        path = write_profile(tmp_path / "p.csv", src)
        np.testing.assert_array_equal(sample_guess(GuessSpec.parse(f"file:{path}"), g).values, src.values)

    def test_file_wrong_length(self, tmp_path):
        path = write_profile(tmp_path / "p.csv", Field(make_grid(2, 0.5), np.ones(8)))
        with pytest.raises(FileLengthMismatch):
            sample_guess(GuessSpec.parse(f"file:{path}"), make_grid(3, 0.5))

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileUnreadable):
            sample_guess(GuessSpec.parse(f"file:{tmp_path / 'nope.csv'}"), make_grid(2, 0.5))

    def test_garbage_file(self, tmp_path):
        p = tmp_path / "junk.csv"
        p.write_text("hello\n1,2,3\n")
        with pytest.raises(FileUnreadable):
            sample_guess(GuessSpec.parse(f"file:{p}"), make_grid(2, 0.5))


class TestGuessSpec:
    @pytest.mark.parametrize("text,kind", [("gaussian", GuessKind.GAUSSIAN), ("exp", GuessKind.NONSMOOTH_EXPONENTIAL), ("triangle", GuessKind.ASYMMETRIC_TRIANGLE)])
    def test_parse(self, text, kind):
        spec = GuessSpec.parse(text)
        assert spec.kind is kind and str(spec) == text

    def test_parse_file(self):
        spec = GuessSpec.parse("file:/tmp/a.csv")
        assert spec.kind is GuessKind.FROM_FILE and str(spec.path) == "/tmp/a.csv"

    def test_unknown(self):
        with pytest.raises(ValueError):
            GuessSpec.parse("random")
