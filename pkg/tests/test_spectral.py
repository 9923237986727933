"""Grid, unitary DFT, derivative and Helmholtz symbols."""

import numpy as np
import pytest

from epdiff1d.errors import RealityError
from epdiff1d.spectral import (
    Grid,
    apply_helmholtz,
    as_real,
    derivative_matrix,
    dft,
    discretize,
    fourier_matrix,
    idft,
    invert_helmholtz,
    make_grid,
    reconstruct,
    spectral_derivative,
)


class TestGrid:
    def test_three_points(self):
        g = make_grid(1, 1.0)
        assert g.n_points == 3
        np.testing.assert_allclose(g.points, [-np.pi, -np.pi + 2 * np.pi / 3, -np.pi + 4 * np.pi / 3])

    def test_five_points(self):
        g = make_grid(2, 1.0)
        assert g.n_points == 5
        assert g.spacing == pytest.approx(2 * np.pi / 5)
        assert np.all(np.diff(g.points) > 0)

    @pytest.mark.parametrize("n", [0, -3, 2.5, True])
    def test_bad_mode_count(self, n):
        with pytest.raises(ValueError):
            make_grid(n, 1.0)

    @pytest.mark.parametrize("alpha", [0.0, -1.0, np.nan, np.inf])
    def test_bad_alpha(self, alpha):
        with pytest.raises(ValueError):
            make_grid(4, alpha)

    def test_immutable(self):
        g = make_grid(4, 1.0)
        with pytest.raises(Exception):
            g.n_modes = 5
        with pytest.raises(ValueError):
            g.points[0] = 1.0

    def test_equality_by_parameters(self):
        assert Grid(4, 1.0) == make_grid(4, 1.0)
        assert Grid(4, 1.0) != make_grid(4, 0.5)

    def test_helmholtz_symbol(self):
        g = make_grid(3, 0.5)
        np.testing.assert_allclose(g.helmholtz_symbol, 1 + 0.5 * np.arange(-3, 4) ** 2)
        assert g.modes[g.zero_mode] == 0


class TestTransform:
    def test_constant(self, grid9):
        c = dft(grid9, np.ones(9))
        expected = np.zeros(9)
        expected[grid9.zero_mode] = 3.0
        np.testing.assert_allclose(c, expected, atol=1e-14)

    def test_cosine(self, grid9):
        c = dft(grid9, np.cos(grid9.points))
        expected = np.zeros(9)
        expected[grid9.zero_mode - 1] = expected[grid9.zero_mode + 1] = 1.5
        np.testing.assert_allclose(c, expected, atol=1e-14)

    def test_matches_direct_summation(self, grid17, rng):
        f = rng.standard_normal(17)
        direct = fourier_matrix(grid17) @ f
        np.testing.assert_allclose(dft(grid17, f), direct, atol=1e-13)
        assert np.linalg.norm(direct) == pytest.approx(np.linalg.norm(f), rel=1e-12)

    def test_round_trip(self, grid17, rng):
        f = rng.standard_normal(17)
        back = idft(grid17, dft(grid17, f))
        assert np.abs(back - f).max() <= 1e-12

    def test_inverse_of_constant_mode(self, grid9):
        c = np.zeros(9, complex)
        c[grid9.zero_mode] = 3.0
        np.testing.assert_allclose(idft(grid9, c), np.ones(9), atol=1e-14)

    def test_hermitian_coefficients_give_real_field(self, grid17, rng):
        c = rng.standard_normal(17) + 1j * rng.standard_normal(17)
        c = 0.5 * (c + np.conj(c[::-1]))
        assert np.abs(idft(grid17, c).imag).max() <= 1e-12

    def test_real_field_is_hermitian(self, grid17, rng):
        c = dft(grid17, rng.standard_normal(17))
        np.testing.assert_allclose(c[::-1], np.conj(c), atol=1e-13)

    def test_length_checked(self, grid9):
        with pytest.raises(ValueError):
            dft(grid9, np.ones(8))


class TestOperators:
    def test_derivative_of_sine(self):
        g = make_grid(16, 1.0)
        assert np.abs(spectral_derivative(g, np.sin(g.points)) - np.cos(g.points)).max() <= 1e-12

    def test_derivative_of_constant(self, grid9):
        assert np.abs(spectral_derivative(grid9, np.full(9, 4.2))).max() <= 1e-13

    def test_derivative_matches_dense_matrix(self, grid17, rng):
        f = rng.standard_normal(17)
        F = fourier_matrix(grid17)
        dense = F.conj().T @ (1j * grid17.modes * (F @ f))
        np.testing.assert_allclose(spectral_derivative(grid17, f), dense.real, atol=1e-12)
        np.testing.assert_allclose(derivative_matrix(grid17) @ f, dense.real, atol=1e-12)

    def test_helmholtz_examples(self, grid9):
        x = grid9.points
        np.testing.assert_allclose(apply_helmholtz(grid9, np.sin(x)), 2 * np.sin(x), atol=1e-13)
        np.testing.assert_allclose(apply_helmholtz(grid9, np.full(9, 0.3)), 0.3, atol=1e-14)
        g = make_grid(4, 0.5)
        np.testing.assert_allclose(apply_helmholtz(g, np.cos(2 * x)), 3 * np.cos(2 * x), atol=1e-13)

    def test_helmholtz_inverse(self, grid17, rng):
        x = grid17.points
        np.testing.assert_allclose(invert_helmholtz(grid17, 2 * np.sin(x)), np.sin(x), atol=1e-14)
        np.testing.assert_allclose(invert_helmholtz(grid17, np.full(17, -1.5)), -1.5, atol=1e-14)
        m = rng.standard_normal(17)
        assert np.abs(apply_helmholtz(grid17, invert_helmholtz(grid17, m)) - m).max() <= 1e-12

    def test_complex_input_rejected(self, grid9):
        with pytest.raises(RealityError):
            spectral_derivative(grid9, np.ones(9) + 1e-3j)

    def test_tiny_imaginary_part_dropped(self):
        assert as_real(np.array([1.0 + 1e-14j])).dtype == float


class TestInterpolation:
    def test_single_exponential(self, grid9):
        c = discretize(grid9, lambda x: np.exp(1j * x))
        expected = np.zeros(9)
        expected[grid9.zero_mode + 1] = 3.0
        np.testing.assert_allclose(c, expected, atol=1e-13)

    def test_band_limited_reconstruction(self, grid9, rng):
        c = discretize(grid9, lambda x: np.sin(3 * x))
        x = rng.uniform(-np.pi, np.pi, 100)
        assert np.abs(reconstruct(grid9, c, x) - np.sin(3 * x)).max() <= 1e-12

    def test_gaussian_reconstruction_between_nodes(self):
        g = make_grid(64, 1.0)
        f = lambda x: sum(np.exp(-((x + 2 * np.pi * n) / 0.8) ** 2) for n in range(-3, 4))  # noqa: E731
        mid = g.points + g.spacing / 2
        err = np.abs(reconstruct(g, discretize(g, f), mid) - f(mid)).max()
        assert err < 1e-8
