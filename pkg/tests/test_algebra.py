"""Dense operator matrices, the flat pairing, C/D/E tensors and q-paths."""

import numpy as np
import pytest

from epdiff1d import fast
from epdiff1d.algebra import (
    MAX_TENSOR_POINTS,
    OperatorMatrix,
    basis_matrix,
    evolve_q,
    flat_pairing,
    identity_diffeo,
    load_tensors,
    oracle_residual,
    save_tensors,
    tensors,
    vector_field_matrix,
    velocity_from_path,
)
from epdiff1d.errors import ResourceLimitError, UnsupportedOperandError
from epdiff1d.integrator import residual
from epdiff1d.schemes import TimeRule
from epdiff1d.spectral import dft, make_grid


@pytest.fixture(scope="module")
def g5():
    return make_grid(2, 1.0)


@pytest.fixture(scope="module")
def g7():
    return make_grid(3, 1.3)


@pytest.fixture(scope="module")
def tens7(g7):
    return tensors(g7)


def indicator(grid, j):
    e = np.zeros(grid.n_points)
    e[j] = 1.0
    return e


class TestMatrices:
    def test_basis_kills_constants(self, g5):
        const = dft(g5, np.ones(5))
        for j in range(5):
            assert np.abs(basis_matrix(g5, j).matrix @ const).max() <= 1e-14

    def test_basis_sums_to_derivative(self, g5):
        total = sum(basis_matrix(g5, j).matrix for j in range(5))
        np.testing.assert_allclose(total, np.diag(1j * g5.modes), atol=1e-14)

    def test_basis_is_indicator_field(self, g5):
        np.testing.assert_allclose(basis_matrix(g5, 2).matrix,
                                   vector_field_matrix(g5, indicator(g5, 2)).matrix, atol=1e-14)

    def test_basis_index_checked(self, g5):
        with pytest.raises(IndexError):
            basis_matrix(g5, 5)

    def test_zero_field(self, g5):
        assert np.abs(vector_field_matrix(g5, np.zeros(5)).matrix).max() == 0

    def test_zero_mode_column_vanishes(self, g7, rng):
        U = vector_field_matrix(g7, rng.standard_normal(7))
        assert np.abs(U.matrix[:, g7.zero_mode]).max() == 0

    def test_stripped_factor(self, g7, rng):
        U = vector_field_matrix(g7, rng.standard_normal(7))
        np.testing.assert_allclose(U.stripped * (1j * g7.modes)[None, :], U.matrix)

    def test_advection_of_exponential(self):
        # U dft(phi) = dft(X phi') for X = sin x, phi = e^{ix}
        g = make_grid(4, 1.0)
        x = g.points
        U = vector_field_matrix(g, np.sin(x))
        lhs = U.matrix @ dft(g, np.exp(1j * x))
        np.testing.assert_allclose(lhs, dft(g, 1j * np.sin(x) * np.exp(1j * x)), atol=1e-13)

    def test_linear_in_field(self, g7, rng):
        a, b = rng.standard_normal((2, 7))
        lhs = vector_field_matrix(g7, 2 * a - b).matrix
        rhs = 2 * vector_field_matrix(g7, a).matrix - vector_field_matrix(g7, b).matrix
        np.testing.assert_allclose(lhs, rhs, atol=1e-13)

    def test_commutator_leaves_the_span(self, g5):
        # [S, S] is not contained in S: the constraint is nonholonomic
        comm = basis_matrix(g5, 1).commutator(basis_matrix(g5, 3)).matrix.ravel()
        span = np.column_stack([basis_matrix(g5, j).matrix.ravel() for j in range(5)])
        coef, *_ = np.linalg.lstsq(span, comm, rcond=None)
        assert np.linalg.norm(span @ coef - comm) > 1e-3 * np.linalg.norm(comm)

    def test_unknown_role(self):
        with pytest.raises(ValueError):
            OperatorMatrix(np.eye(3), "tensor")


class TestPairing:
    def test_energy_identity(self, g7, rng):
        X = rng.standard_normal(7)
        U = vector_field_matrix(g7, X)
        val = flat_pairing(g7, U, U)
        assert abs(val.imag) <= 1e-13
        assert np.pi * val.real == pytest.approx(fast.energy(g7, X), rel=1e-12)

    def test_sine(self):
        g = make_grid(4, 1.0)
        U = vector_field_matrix(g, np.sin(g.points))
        assert np.pi * flat_pairing(g, U, U).real == pytest.approx(np.pi, rel=1e-12)

    @pytest.mark.parametrize("alpha", [0.1, 1.0, 7.0])
    def test_constant(self, alpha):
        g = make_grid(3, alpha)
        U = vector_field_matrix(g, np.full(7, 0.6))
        assert flat_pairing(g, U, U) == pytest.approx(0.36, rel=1e-12)

    def test_orthogonal_modes(self):
        g = make_grid(4, 1.0)
        U = vector_field_matrix(g, np.sin(g.points))
        V = vector_field_matrix(g, np.cos(g.points))
        assert abs(flat_pairing(g, U, V).real) <= 1e-13

    def test_hermitian_symmetry(self, g7, rng):
        U = vector_field_matrix(g7, rng.standard_normal(7))
        V = vector_field_matrix(g7, rng.standard_normal(7))
        assert flat_pairing(g7, U, V) == pytest.approx(np.conj(flat_pairing(g7, V, U)), abs=1e-13)

    def test_needs_stripped_factor(self, g7):
        with pytest.raises(UnsupportedOperandError):
            flat_pairing(g7, identity_diffeo(g7), vector_field_matrix(g7, np.ones(7)))


class TestTensors:
    def test_e_hermitian_and_psd(self, tens7, rng):
        np.testing.assert_allclose(tens7.E, tens7.E.conj().T, atol=1e-12)
        X = rng.standard_normal(7)
        q = np.conj(X) @ tens7.E @ X
        assert abs(q.imag) <= 1e-13 and q.real >= 0

    def test_zero_contractions(self, tens7):
        z = np.zeros(7)
        for f in (tens7.e_contract, tens7.c_contract, tens7.d_contract):
            assert np.abs(f(z)).max() == 0

    def test_real_contractions(self, tens7, rng):
        X = rng.standard_normal(7)
        for f in (tens7.e_contract, tens7.c_contract, tens7.d_contract):
            assert np.abs(f(X).imag).max() <= 1e-10

    def test_e_of_sine_matches_fast(self):
        g = make_grid(2, 1.0)
        X = np.sin(g.points)
        np.testing.assert_allclose(tensors(g).e_contract(X), fast.e_term(g, X), atol=1e-10)

    def test_guard(self):
        assert MAX_TENSOR_POINTS == 31
        tensors(make_grid(15, 1.0))  # P = 31 is allowed
        with pytest.raises(ResourceLimitError):
            tensors(make_grid(16, 1.0))

    def test_save_load(self, g7, tens7, tmp_path):
        path = tmp_path / "t.bin"
        save_tensors(path, tens7)
        back = load_tensors(path)
        assert back.grid == g7
        for name in ("C", "D", "E"):
            np.testing.assert_array_equal(getattr(back, name), getattr(tens7, name))


class TestOracleResidual:
    def test_zero(self, g7, tens7):
        z = np.zeros(7)
        assert np.abs(oracle_residual(g7, tens7, "explicit", z, z, 0.1)).max() == 0

    def test_telescopes(self, g7, tens7, rng):
        X = rng.standard_normal(7)
        expected = 0.1 * (tens7.c_contract(X) - tens7.d_contract(X))
        for scheme in ("explicit", "implicit", "average"):
            np.testing.assert_allclose(oracle_residual(g7, tens7, scheme, X, X, 0.1), expected,
                                       atol=1e-13)

    @pytest.mark.parametrize("scheme", ["explicit", "implicit", "average"])
    def test_matches_fast(self, g7, tens7, rng, scheme):
        Xn, Xo = rng.standard_normal((2, 7))
        oracle = oracle_residual(g7, tens7, scheme, Xn, Xo, 0.03)
        fast_r = residual(g7, scheme, Xn, Xo, 0.03)
        assert np.abs(oracle - fast_r).max() <= 1e-10 * np.abs(oracle).max()

    def test_midpoint_rejected(self, g7, tens7):
        z = np.zeros(7)
        with pytest.raises(UnsupportedOperandError):
            oracle_residual(g7, tens7, "midpoint", z, z, 0.1)


class TestQPath:
    @pytest.mark.parametrize("rule", list(TimeRule))
    def test_zero_velocity(self, g5, rule):
        q = identity_diffeo(g5)
        U = vector_field_matrix(g5, np.zeros(5))
        np.testing.assert_allclose(evolve_q(q, U, 0.1, rule).matrix, q.matrix, atol=1e-14)

    @pytest.mark.parametrize("rule", list(TimeRule))
    def test_velocity_round_trip(self, g5, rng, rule):
        U = vector_field_matrix(g5, 0.3 * rng.standard_normal(5))
        q = evolve_q(identity_diffeo(g5), U, 0.05, TimeRule.EXPLICIT)
        q_next = evolve_q(q, U, 0.05, rule)
        back = velocity_from_path(q, q_next, 0.05, rule)
        np.testing.assert_allclose(back, U.matrix, atol=1e-9)

    def test_diffeo_has_no_stripped_form(self, g5):
        assert identity_diffeo(g5).stripped is None
        assert np.isfinite(identity_diffeo(g5).condition_number())
