"""Energy-trace and convergence diagnostics."""

import numpy as np


def linear_trend(t, values):
    """Least-squares slope and intercept."""
    slope, intercept = np.polyfit(np.asarray(t, float), np.asarray(values, float), 1)
    return float(slope), float(intercept)


def relative_excursion(values):
    """max_k |E_k - E_0| / |E_0|."""
    e = np.asarray(values, float)
    return float(np.abs(e - e[0]).max() / abs(e[0]))


def bootstrap_slope_interval(t, values, level=0.95, n_boot=2000, block=None, seed=0):
    """Moving-block bootstrap confidence interval for the linear-trend slope.

    Residuals about the fitted line are resampled in contiguous blocks
    (default length ~ n**(1/3)) to respect the serial correlation of an
    oscillating trace.
    """
    t = np.asarray(t, float)
    e = np.asarray(values, float)
    n = len(t)
    slope, intercept = linear_trend(t, e)
    fit = slope * t + intercept
    resid = e - fit
    block = block or max(1, int(round(n ** (1 / 3))))
    n_blocks = -(-n // block)
    rng = np.random.default_rng(seed)
    starts = rng.integers(0, n - block + 1, size=(n_boot, n_blocks))
    idx = (starts[:, :, None] + np.arange(block)[None, None, :]).reshape(n_boot, -1)[:, :n]
    samples = fit[None, :] + resid[idx]
    tc = t - t.mean()
    slopes = (samples - samples.mean(axis=1, keepdims=True)) @ tc / (tc @ tc)
    lo, hi = np.quantile(slopes, [(1 - level) / 2, (1 + level) / 2])
    return float(lo), float(hi)


def observed_orders(errors, ratio=2.0):
    """log_ratio(e_i / e_{i+1}) for a sequence refined by ``ratio``."""
    e = np.asarray(errors, float)
    return np.log(e[:-1] / e[1:]) / np.log(ratio)


def richardson(values, ratio=2.0, order=1):
    """Richardson-extrapolate a sequence computed at h, h/ratio, h/ratio**2...

    Assumes an error expansion in powers order, order+1, ...; uses every
    level given.
    """
    table = [np.asarray(v, dtype=float) for v in values]
    p = order
    while len(table) > 1:
        f = ratio**p
        table = [(f * table[i + 1] - table[i]) / (f - 1) for i in range(len(table) - 1)]
        p += 1
    return table[0]


def max_error(a, b):
    return float(np.abs(np.asarray(a) - np.asarray(b)).max())


def l2_error(grid, a, b):
    """Discrete L2 norm of a - b on the circle."""
    d = np.asarray(a) - np.asarray(b)
    return float(np.sqrt(grid.spacing * np.dot(d, d)))
