"""Truncated Fourier space on the circle: grid, unitary DFT, D and H.

Grid-space fields are plain real ``ndarray`` of length ``P = 2N + 1`` sampled
at ``x_j = -pi + 2*pi*j/P``. Spectral coefficients are complex ``ndarray`` of
length ``P`` in centred order, entry ``k + N`` holding mode ``k`` for
``k = -N..N``.

The transform is unitary::

    coeff[k] = P**-0.5 * sum_j field[j] * exp(-1j * k * x_j)

so ``F[0, j] = P**-0.5`` for every j.

``alpha`` multiplies ``u_xx`` directly: ``m = u - alpha * u_xx``. In the usual
Camassa-Holm notation ``m = u - a**2 u_xx`` this is ``alpha = a**2``.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.fft

from .errors import RealityError

REALITY_TOL = 1e-10


def _frozen(a):
    a = np.asarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Grid:
    """Collocation grid for the truncated Fourier space with ``N`` modes.

    Attributes:
        n_modes: highest retained wavenumber N.
        alpha: Helmholtz coefficient in ``H = 1 - alpha d^2/dx^2``.
        n_points: P = 2N + 1.
        points: collocation points, first at -pi, spacing 2*pi/P.
        modes: integer wavenumbers -N..N (centred order).
        helmholtz_symbol: 1 + alpha*k**2 in centred order.
    """

    n_modes: int
    alpha: float
    n_points: int = field(init=False)
    points: np.ndarray = field(init=False, repr=False, compare=False)
    modes: np.ndarray = field(init=False, repr=False, compare=False)
    helmholtz_symbol: np.ndarray = field(init=False, repr=False, compare=False)
    # rfft ordering (k = 0..N), used on the hot paths
    _rk: np.ndarray = field(init=False, repr=False, compare=False)
    _rh: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n, alpha = self.n_modes, self.alpha
        if isinstance(n, bool) or int(n) != n or n < 1:
            raise ValueError(f"n_modes must be a positive integer, got {n!r}")
        if not np.isfinite(alpha) or alpha <= 0:
            raise ValueError(f"alpha must be positive, got {alpha!r}")
        n = int(n)
        p = 2 * n + 1
        k = np.arange(-n, n + 1)
        rk = np.arange(n + 1)
        set_ = object.__setattr__
        set_(self, "n_modes", n)
        set_(self, "alpha", float(alpha))
        set_(self, "n_points", p)
        set_(self, "points", _frozen(-np.pi + 2 * np.pi * np.arange(p) / p))
        set_(self, "modes", _frozen(k))
        set_(self, "helmholtz_symbol", _frozen(1.0 + alpha * k.astype(float) ** 2))
        set_(self, "_rk", _frozen(rk.astype(float)))
        set_(self, "_rh", _frozen(1.0 + alpha * rk.astype(float) ** 2))

    @property
    def spacing(self):
        return 2 * np.pi / self.n_points

    @property
    def zero_mode(self):
        """Index of mode k=0 in centred coefficient arrays."""
        return self.n_modes


def make_grid(n_modes, alpha):
    return Grid(n_modes, alpha)


def _check_length(grid, values, what="field"):
    values = np.asarray(values)
    if values.ndim != 1 or values.shape[0] != grid.n_points:
        raise ValueError(
            f"{what} must have length {grid.n_points}, got shape {values.shape}"
        )
    return values


def as_real(values, tol=REALITY_TOL):
    """Drop a negligible imaginary part; raise RealityError otherwise.

    The tolerance is relative to ``max(1, max|Re|)``.
    """
    values = np.asarray(values)
    if not np.iscomplexobj(values):
        return values.astype(float, copy=False)
    scale = max(1.0, float(np.abs(values.real).max(initial=0.0)))
    worst = float(np.abs(values.imag).max(initial=0.0))
    if worst > tol * scale:
        raise RealityError(
            f"imaginary part {worst:.3e} exceeds {tol:.0e} (scale {scale:.3e})"
        )
    return values.real.copy()


def real_field(grid, values):
    """Validate a grid field: right length, real to tolerance."""
    return as_real(_check_length(grid, values))


def _phase(grid):
    # exp(-1j*k*x_0) with x_0 = -pi
    return np.where(grid.modes % 2 == 0, 1.0, -1.0)


def dft(grid, values):
    """Unitary DFT of a grid field (real or complex) into centred modes."""
    values = _check_length(grid, values)
    c = scipy.fft.fftshift(scipy.fft.fft(values, norm="ortho"))
    return c * _phase(grid)


def idft(grid, coeffs):
    """Inverse of :func:`dft`. Returns a complex array; see :func:`as_real`."""
    coeffs = _check_length(grid, coeffs, "coeffs")
    return scipy.fft.ifft(scipy.fft.ifftshift(coeffs * _phase(grid)), norm="ortho")


def _multiply_symbol(grid, values, symbol):
    values = real_field(grid, values)
    return scipy.fft.irfft(symbol * scipy.fft.rfft(values), n=grid.n_points)


def spectral_derivative(grid, values):
    """d/dx of a real grid field, exact for band-limited input."""
    return _multiply_symbol(grid, values, 1j * grid._rk)


def apply_helmholtz(grid, values):
    """m = u - alpha * u_xx."""
    return _multiply_symbol(grid, values, grid._rh)


def invert_helmholtz(grid, values):
    """u with u - alpha * u_xx = m."""
    return _multiply_symbol(grid, values, 1.0 / grid._rh)


def discretize(grid, f):
    """Collocation approximation of the Fourier coefficients of ``f``.

    ``f`` is evaluated at the grid points; it must accept an array.
    """
    return dft(grid, np.asarray(f(grid.points)))


def reconstruct(grid, coeffs, x):
    """Evaluate the trigonometric interpolant at arbitrary ``x``."""
    coeffs = _check_length(grid, coeffs, "coeffs")
    x = np.asarray(x, dtype=float)
    basis = np.exp(1j * np.multiply.outer(x, grid.modes))
    return basis @ coeffs / np.sqrt(grid.n_points)


def fourier_matrix(grid):
    """Dense unitary F (rows: centred modes, columns: grid points)."""
    return np.exp(-1j * np.outer(grid.modes, grid.points)) / np.sqrt(grid.n_points)


def derivative_columns(grid, a):
    """Differentiate every column of a real P x M array (i.e. ``Dmat @ a``)."""
    return _columns(grid, a, 1j * grid._rk)


def helmholtz_columns(grid, a):
    return _columns(grid, a, grid._rh)


def derivative_matrix(grid):
    """Real P x P matrix of spectral differentiation in grid space."""
    return derivative_columns(grid, np.eye(grid.n_points))


def helmholtz_matrix(grid):
    return helmholtz_columns(grid, np.eye(grid.n_points))


def _columns(grid, a, symbol):
    s = scipy.fft.rfft(a, axis=0) * symbol[:, None]
    return scipy.fft.irfft(s, n=grid.n_points, axis=0)
