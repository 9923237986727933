"""Method-of-lines pseudospectral Camassa-Holm solver with classical RK4.

Independent of the variational machinery (it shares only the spectral core)
and used as the accuracy oracle. Evolves the momentum ``m`` under

    m_t = -(u m_x + 2 m u_x),   u = H^-1 m

optionally with 2/3-rule dealiasing of every product.
"""

from dataclasses import dataclass

import numpy as np
import scipy.fft

from .errors import DivergenceError
from .fast import energy
from .spectral import invert_helmholtz, real_field, spectral_derivative
from .trajectory import TrajectoryRecord

BLOWUP = 1e12


@dataclass(frozen=True)
class ReferenceOptions:
    dt: float
    n_steps: int
    dealias: bool = True
    stride: int = 1

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.n_steps < 1:
            raise ValueError(f"n_steps must be >= 1, got {self.n_steps}")
        if self.stride < 1:
            raise ValueError(f"stride must be >= 1, got {self.stride}")


def dealias_cutoff(grid):
    return (2 * grid.n_modes) // 3


def dealias(grid, f):
    """Zero every mode with |k| > floor(2N/3)."""
    c = scipy.fft.rfft(f)
    c[dealias_cutoff(grid) + 1:] = 0.0
    return scipy.fft.irfft(c, n=grid.n_points)


def ch_rhs(grid, m, dealias_products=True):
    m = real_field(grid, m)
    u = invert_helmholtz(grid, m)
    ux = spectral_derivative(grid, u)
    mx = spectral_derivative(grid, m)
    if not dealias_products:
        return -(u * mx + 2 * m * ux)
    f = lambda a: dealias(grid, a)  # noqa: E731
    return f(-(f(u) * f(mx) + 2 * f(m) * f(ux)))


def rk4_step(grid, m, dt, dealias_products=True):
    k1 = ch_rhs(grid, m, dealias_products)
    k2 = ch_rhs(grid, m + 0.5 * dt * k1, dealias_products)
    k3 = ch_rhs(grid, m + 0.5 * dt * k2, dealias_products)
    k4 = ch_rhs(grid, m + dt * k3, dealias_products)
    return m + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)


def rk4_run(grid, m0, opts):
    """Integrate from momentum ``m0``; records u snapshots, m in ``momenta``.

    ``momenta`` holds the m snapshot aligned with each u snapshot.
    """
    m = real_field(grid, m0)
    rec = TrajectoryRecord(grid.n_points)
    rec.metadata.update(scheme="reference", dt=opts.dt, n_steps=opts.n_steps,
                        dealias=opts.dealias)
    u = invert_helmholtz(grid, m)
    rec.add_snapshot(0.0, u)
    rec.momenta.append(m.copy())
    rec.add_energy(0.0, energy(grid, u))
    for k in range(1, opts.n_steps + 1):
        m = rk4_step(grid, m, opts.dt, opts.dealias)
        peak = np.abs(m).max()
        if not np.isfinite(peak) or peak > BLOWUP:
            raise DivergenceError(f"|m| reached {peak:.3e} at step {k}")
        t = k * opts.dt
        u = invert_helmholtz(grid, m)
        rec.add_energy(t, energy(grid, u))
        if k % opts.stride == 0 or k == opts.n_steps:
            rec.add_snapshot(t, u)
            rec.momenta.append(m.copy())
    return rec
