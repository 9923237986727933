"""O(P log P) evaluation of the tensor contractions and the energy.

For a real coordinate field ``X`` with ``m = H X``:

    sum_i X_i E_ip              =  m_p / P
    sum_ij X_i X_j C_ijp        = -(X_x * m)_p / P
    sum_ij X_i X_j D_ijp        =  d/dx (X * m)_p / P

These are exact identities for the dense tensors (aliasing included), so the
products are formed pointwise on the P-point grid with no dealiasing. Note
the minus sign on the C contraction: ``conj(D) = -D`` in mode space.
"""

import numpy as np

from .spectral import apply_helmholtz, real_field, spectral_derivative


def e_term(grid, X):
    return apply_helmholtz(grid, X) / grid.n_points


def c_term(grid, X):
    X = real_field(grid, X)
    m = apply_helmholtz(grid, X)
    return -spectral_derivative(grid, X) * m / grid.n_points


def d_term(grid, X):
    X = real_field(grid, X)
    m = apply_helmholtz(grid, X)
    return spectral_derivative(grid, X * m) / grid.n_points


def energy(grid, X):
    """Half the H-norm squared: (pi/P) sum_j X_j m_j = 1/2 int (u^2 + alpha u_x^2)."""
    X = real_field(grid, X)
    return float(0.5 * grid.spacing * np.dot(X, apply_helmholtz(grid, X)))


def momentum(grid, X):
    """Grid sum of m = H X (the zero mode of the momentum, up to scaling)."""
    return float(np.sum(apply_helmholtz(grid, X)))
