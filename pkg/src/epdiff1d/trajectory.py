"""In-memory record of a run: velocity snapshots plus a per-step energy trace."""

from dataclasses import dataclass, field

import numpy as np


@dataclass
class TrajectoryRecord:
    n_points: int
    snapshot_times: list = field(default_factory=list)
    snapshots: list = field(default_factory=list)
    times: list = field(default_factory=list)
    energies: list = field(default_factory=list)
    iterations: list = field(default_factory=list)
    residuals: list = field(default_factory=list)
    momenta: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)
    completed: bool = True
    failure: str = None

    def add_snapshot(self, t, u):
        u = np.array(u, dtype=float)
        if u.shape != (self.n_points,):
            raise ValueError(f"snapshot must have length {self.n_points}")
        if self.snapshot_times and t <= self.snapshot_times[-1]:
            raise ValueError("snapshot times must be strictly increasing")
        self.snapshot_times.append(float(t))
        self.snapshots.append(u)

    def add_energy(self, t, energy, iterations=0, residual=0.0):
        if self.times and t <= self.times[-1]:
            raise ValueError("trace times must be strictly increasing")
        self.times.append(float(t))
        self.energies.append(float(energy))
        self.iterations.append(int(iterations))
        self.residuals.append(float(residual))

    @property
    def final(self):
        return self.snapshots[-1]

    @property
    def final_time(self):
        return self.snapshot_times[-1]

    def energy_array(self):
        return np.asarray(self.energies)

    def time_array(self):
        return np.asarray(self.times)
