"""Head-on collision of a peakon and an antipeakon with the average scheme.

Peaks of height +1 and -1 start at -pi/2 and pi/2, alpha=1, P=513,
dt=0.005, T=3. They meet near x=0 around t=2.3. The run should complete
and the energy should stay close to its initial value.

Takes about a minute. Run: python demos/05_peakon_collision.py
"""

import numpy as np

from epdiff1d import make_grid, peakon_pair, run

grid = make_grid(256, 1.0)
u0 = peakon_pair(grid, 1.0, -np.pi / 2, -1.0, np.pi / 2)
rec = run(grid, "average", u0, 0.005, 600, stride=60)

e = rec.energy_array()
print(f"completed: {rec.completed}   max |E - E0| / E0 = {np.abs(e - e[0]).max() / e[0]:.2e}")
for t, u in zip(rec.snapshot_times, rec.snapshots):
    j_max, j_min = np.argmax(u), np.argmin(u)
    print(f"t={t:4.2f}  max {u[j_max]:+.3f} at x={grid.points[j_max]:+.3f}   "
          f"min {u[j_min]:+.3f} at x={grid.points[j_min]:+.3f}")
