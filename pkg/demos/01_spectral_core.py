"""Grid, transform and the two operators everything else is built from.

Run: python demos/01_spectral_core.py
"""

import numpy as np

from epdiff1d import dft, make_grid
from epdiff1d.spectral import apply_helmholtz, invert_helmholtz, spectral_derivative

grid = make_grid(8, alpha=1.0)
print(f"N={grid.n_modes} modes -> P={grid.n_points} points, spacing {grid.spacing:.4f}")
print("first points:", np.round(grid.points[:3], 4))

x = grid.points
u = np.sin(x)

# Unitary DFT in centred mode order: sin x lives in modes -1 and +1 only.
c = dft(grid, u)
for k, ck in zip(grid.modes, c):
    if abs(ck) > 1e-12:
        print(f"  mode {k:+d}: {ck:.4f}")

print("max |d/dx sin - cos|      =", np.abs(spectral_derivative(grid, u) - np.cos(x)).max())
m = apply_helmholtz(grid, u)  # m = u - alpha u_xx = 2 sin x
print("max |H sin - 2 sin|       =", np.abs(m - 2 * u).max())
print("max |H^-1 H u - u|        =", np.abs(invert_helmholtz(grid, m) - u).max())
