"""Accuracy against the RK4 reference solver for a smooth initial state.

u0 = 0.1 sin x, alpha=1, P=129, T=1. The explicit and implicit schemes are
first order; the average scheme is second order.

Run: python demos/04_convergence.py
"""

import numpy as np

from epdiff1d import ReferenceOptions, make_grid, rk4_run, run
from epdiff1d.diagnostics import observed_orders
from epdiff1d.spectral import apply_helmholtz

grid = make_grid(64, 1.0)
u0 = 0.1 * np.sin(grid.points)
ref = rk4_run(grid, apply_helmholtz(grid, u0), ReferenceOptions(1e-4, 10000, stride=10000)).final

dts = (0.02, 0.01, 0.005)
for scheme in ("explicit", "implicit", "average"):
    errs = [np.abs(run(grid, scheme, u0, dt, round(1 / dt), stride=10**6).final - ref).max()
            for dt in dts]
    print(f"{scheme:>8}: errors " + " ".join(f"{e:.2e}" for e in errs)
          + "   orders " + " ".join(f"{p:.2f}" for p in observed_orders(errs)))
