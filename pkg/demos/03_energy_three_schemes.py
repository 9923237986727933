"""Energy behaviour of the explicit, implicit and average schemes.

Gaussian bump, alpha=1, P=513, dt=0.01, T=5. Expect the explicit scheme to
lose energy steadily, the implicit scheme to gain it (here it gains it fast
enough that Newton gives up within the first half time unit) and the average
scheme to wander by a couple of percent around the initial value.

Takes about two minutes. Run: python demos/03_energy_three_schemes.py
"""

import numpy as np

from epdiff1d import gaussian, make_grid, run
from epdiff1d.diagnostics import bootstrap_slope_interval, linear_trend, relative_excursion

grid = make_grid(256, 1.0)
u0 = gaussian(grid, 1.0, 0.0, 1.0)

for scheme in ("explicit", "implicit", "average"):
    rec = run(grid, scheme, u0, 0.01, 500, stride=100)
    t, e = rec.time_array(), rec.energy_array()
    slope, _ = linear_trend(t, e)
    lo, hi = bootstrap_slope_interval(t, e)
    print(f"{scheme:>8}: reached t={t[-1]:.2f}  E_end/E0={e[-1] / e[0]:.4f}  "
          f"excursion={relative_excursion(e):.4f}  slope={slope:+.3e} CI [{lo:+.1e}, {hi:+.1e}]")
    if not rec.completed:
        print(f"          {rec.failure}")
