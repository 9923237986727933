"""Initial velocity fields: Gaussian bumps and periodic peakons."""

import math
import warnings
from dataclasses import dataclass

import numpy as np


class AliasedInitialCondition(UserWarning):
    """Gaussian narrower than eight grid spacings; not resolved spectrally."""


def wrap(x):
    """Reduce to [-pi, pi)."""
    return (np.asarray(x, dtype=float) + np.pi) % (2 * np.pi) - np.pi


def periodic_distance(x, x0):
    return np.abs(wrap(np.asarray(x) - x0))


def gaussian(grid, amplitude, center, width):
    """Periodised Gaussian ``A * sum_n exp(-(x - x0 + 2 pi n)**2 / width**2)``.

    Summing images (rather than using the periodic distance directly) keeps
    the field smooth at the antipode of ``center``.
    """
    if not width > 0:
        raise ValueError(f"width must be positive, got {width}")
    if width < 8 * grid.spacing:
        warnings.warn(
            f"width {width:g} < 8 grid spacings ({8 * grid.spacing:.3g})",
            AliasedInitialCondition,
            stacklevel=2,
        )
    d = wrap(grid.points - center)
    # images beyond this are below 1e-300 relative
    n_img = int(math.ceil(26.3 * width / (2 * np.pi))) + 1
    shifts = 2 * np.pi * np.arange(-n_img, n_img + 1)
    return amplitude * np.exp(-((d[:, None] + shifts[None, :]) / width) ** 2).sum(axis=1)


def peakon(grid, c, center):
    """Periodic peakon: Green's function of 1 - alpha d^2/dx^2, peak value ``c``."""
    s = math.sqrt(grid.alpha)
    d = periodic_distance(grid.points, center)
    # cosh((pi - d)/s) / cosh(pi/s), written to avoid overflow for small alpha
    return c * np.exp(-d / s) * (1 + np.exp(-2 * (np.pi - d) / s)) / (1 + np.exp(-2 * np.pi / s))


def peakon_pair(grid, c1, x1, c2, x2):
    return peakon(grid, c1, x1) + peakon(grid, c2, x2)


def sine(grid, amplitude, center=0.0):
    """``A sin(x - x0)``: smooth, single-mode, for convergence studies."""
    return amplitude * np.sin(grid.points - center)


KINDS = ("gaussian", "peakon", "peakon_pair", "sine")
NONSMOOTH = ("peakon", "peakon_pair")


@dataclass(frozen=True)
class ScenarioSpec:
    kind: str
    amplitudes: tuple
    centers: tuple
    width: float = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"scenario kind must be one of {KINDS}, got {self.kind!r}")
        amps = tuple(float(a) for a in self.amplitudes)
        cents = tuple(float(wrap(c)) for c in self.centers)
        need = 2 if self.kind == "peakon_pair" else 1
        if len(amps) != need or len(cents) != need:
            raise ValueError(f"{self.kind} needs {need} amplitude(s) and center(s)")
        if self.kind == "gaussian":
            if self.width is None or not self.width > 0:
                raise ValueError("gaussian needs a positive width")
        elif self.width is not None:
            raise ValueError(f"width only applies to gaussian, not {self.kind}")
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "centers", cents)
        if self.width is not None:
            object.__setattr__(self, "width", float(self.width))

    def build(self, grid):
        if self.kind == "gaussian":
            return gaussian(grid, self.amplitudes[0], self.centers[0], self.width)
        if self.kind == "peakon":
            return peakon(grid, self.amplitudes[0], self.centers[0])
        if self.kind == "sine":
            return sine(grid, self.amplitudes[0], self.centers[0])
        (c1, c2), (x1, x2) = self.amplitudes, self.centers
        return peakon_pair(grid, c1, x1, c2, x2)
