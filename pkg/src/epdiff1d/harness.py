"""Experiment orchestration: single runs, scheme comparisons, self-verification.

File formats (all floats printed with ``%.17g``, comma separated, one header
row):

``trajectory.csv``
    ``t,u_0,...,u_{P-1}``; one row per snapshot, ``u_j`` at ``x_j = -pi + 2 pi j / P``.
``energy.csv``
    ``t,energy,iterations,residual``; one row per step (plus t = 0).
``metadata.json``
    config echo, package version, status, failure message, wall time.
``convergence.csv`` (compare)
    ``scheme,dt,status,err_inf,err_l2,order_inf,order_l2,note``.
``energy_compare.csv`` (compare)
    ``t,E_<scheme>...`` at the base dt; empty cells after a failed run ends.

Wall time appears only in JSON, so CSV bytes are reproducible.
"""

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import fast
from .algebra import oracle_residual, tensors
from .config import steps_for, to_dict
from .diagnostics import l2_error, max_error, observed_orders
from .errors import DivergenceError, ResourceLimitError
from .integrator import jacobian_error, residual, run
from .reference import ReferenceOptions, rk4_run
from .scenarios import NONSMOOTH
from .spectral import apply_helmholtz, make_grid

WORKERS_ENV = "EPDIFF1D_MAX_WORKERS"
NONSMOOTH_NOTE = "nonsmooth: order not asserted"


def package_version():
    from importlib.metadata import PackageNotFoundError, version

    try:
        return version("artifact")
    except PackageNotFoundError:
        return "unknown"


def _fmt(x):
    return "" if x is None or not np.isfinite(x) else "%.17g" % x


def write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(v if isinstance(v, str) else _fmt(v) for v in row) + "\n")


def write_trajectory(path, rec):
    header = ["t"] + [f"u_{j}" for j in range(rec.n_points)]
    write_csv(path, header, ([t, *u] for t, u in zip(rec.snapshot_times, rec.snapshots)))


def write_energy(path, rec):
    write_csv(path, ["t", "energy", "iterations", "residual"],
              zip(rec.times, rec.energies, rec.iterations, rec.residuals))


PLOT_SCRIPT = '''"""Render the run in this directory: u(x, t) waterfall and energy trace.

Usage: python plot_run.py   (needs numpy and matplotlib)
"""
import os

import matplotlib.pyplot as plt
import numpy as np

here = os.path.dirname(os.path.abspath(__file__))
traj = np.loadtxt(os.path.join(here, "trajectory.csv"), delimiter=",", skiprows=1, ndmin=2)
en = np.loadtxt(os.path.join(here, "energy.csv"), delimiter=",", skiprows=1, ndmin=2)
t, u = traj[:, 0], traj[:, 1:]
x = -np.pi + 2 * np.pi * np.arange(u.shape[1]) / u.shape[1]

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4.5))
offset = 0.5 * np.abs(u).max() if u.size else 1.0
for k in range(len(t)):
    ax1.plot(x, u[k] + offset * k * 4 / max(1, len(t)), lw=0.8, color="k")
ax1.set_xlabel("x")
ax1.set_title("u(x, t), offset by t")
ax2.plot(en[:, 0], en[:, 1])
ax2.set_xlabel("t")
ax2.set_ylabel("energy")
fig.tight_layout()
fig.savefig(os.path.join(here, "run.png"), dpi=120)
'''


@dataclass
class RunResult:
    record: object
    directory: Path
    paths: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def ok(self):
        return self.record.completed


def _integrate(config, stride, dealias=True):
    """Run the configured scheme; returns a TrajectoryRecord."""
    grid = make_grid(config.grid.n_modes, config.grid.alpha)
    u0 = config.scenario.build(grid)
    n = steps_for(config.t_final, config.dt)
    if config.scheme == "reference":
        opts = ReferenceOptions(config.dt, n, dealias=dealias, stride=stride)
        return rk4_run(grid, apply_helmholtz(grid, u0), opts)
    return run(grid, config.scheme, u0, config.dt, n, config.solver, stride=stride)


def cmd_run(config):
    """Integrate one configuration and write its artifacts.

    A step failure does not raise: the partial trajectory is written and the
    failure recorded in ``metadata.json`` (check ``result.ok``). Reference
    divergence is recorded the same way, with only the initial state kept.
    """
    out = Path(config.output.directory)
    out.mkdir(parents=True, exist_ok=True)
    start = time.perf_counter()
    try:
        rec = _integrate(config, config.output.stride, config.compare.dealias)
    except DivergenceError as exc:
        from .trajectory import TrajectoryRecord

        grid = make_grid(config.grid.n_modes, config.grid.alpha)
        u0 = config.scenario.build(grid)
        rec = TrajectoryRecord(grid.n_points)
        rec.add_snapshot(0.0, u0)
        rec.add_energy(0.0, fast.energy(grid, u0))
        rec.completed = False
        rec.failure = f"reference diverged: {exc}"
    wall = time.perf_counter() - start
    result = RunResult(rec, out, wall_time=wall)
    formats = config.output.formats
    if "csv" in formats:
        result.paths["trajectory"] = out / "trajectory.csv"
        result.paths["energy"] = out / "energy.csv"
        write_trajectory(result.paths["trajectory"], rec)
        write_energy(result.paths["energy"], rec)
    if "plot" in formats:
        result.paths["plot"] = out / "plot_run.py"
        result.paths["plot"].write_text(PLOT_SCRIPT, encoding="utf-8")
    if "json" in formats:
        meta = {
            "config": to_dict(config),
            "version": package_version(),
            "status": "completed" if rec.completed else "failed",
            "failure": rec.failure,
            "steps_completed": len(rec.times) - 1,
            "n_points": rec.n_points,
            "wall_time_s": wall,
        }
        result.paths["metadata"] = out / "metadata.json"
        result.paths["metadata"].write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")
    return result


# --- compare --------------------------------------------------------------

def max_workers(n_jobs):
    cap = os.environ.get(WORKERS_ENV)
    limit = os.cpu_count() or 1
    if cap:
        try:
            limit = max(1, int(cap))
        except ValueError:
            raise ValueError(f"{WORKERS_ENV} must be an integer, got {cap!r}") from None
    return max(1, min(n_jobs, limit))


def _job(config, scheme, dt, stride, dealias):
    """Worker: run one (scheme, dt) pair; returns plain data."""
    from dataclasses import replace

    cfg = replace(config, scheme=scheme, dt=dt)
    start = time.perf_counter()
    try:
        rec = _integrate(cfg, stride, dealias)
    except DivergenceError as exc:
        return {"scheme": scheme, "dt": dt, "completed": False, "failure": str(exc),
                "final": None, "times": [], "energies": [], "iterations": [], "residuals": [],
                "wall": time.perf_counter() - start}
    return {
        "scheme": scheme, "dt": dt, "completed": rec.completed, "failure": rec.failure,
        "final": rec.final if rec.completed else None,
        "times": rec.times, "energies": rec.energies,
        "iterations": rec.iterations, "residuals": rec.residuals,
        "wall": time.perf_counter() - start,
    }


def _fan_out(jobs):
    workers = max_workers(len(jobs))
    if workers == 1:
        return [_job(*j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_job, *j) for j in jobs]
        return [f.result() for f in futures]


def cmd_compare(config, reference=None):
    """Convergence table and energy traces for several schemes on one IC.

    ``reference`` overrides the reference options (a ReferenceOptions or
    None for ``config.compare``). Each scheme runs at every dt in
    ``config.compare.dts`` (default: dt, dt/2, dt/4); the error is taken at
    ``t_final`` against the RK4 reference.
    """
    cmp_ = config.compare
    dts = list(cmp_.dts) or [config.dt, config.dt / 2, config.dt / 4]
    if reference is None:
        reference = ReferenceOptions(cmp_.reference_dt,
                                     steps_for(config.t_final, cmp_.reference_dt),
                                     dealias=cmp_.dealias)
    for dt in dts:
        steps_for(config.t_final, dt)
    ref_stride = reference.n_steps
    big = 1 << 30
    jobs = [(config, "reference", reference.dt, ref_stride, reference.dealias)]
    jobs += [(config, s, dt, big, cmp_.dealias) for s in cmp_.schemes for dt in dts]
    out = Path(config.output.directory)
    out.mkdir(parents=True, exist_ok=True)
    start = time.perf_counter()
    results = _fan_out(jobs)
    ref, runs = results[0], results[1:]
    if not ref["completed"]:
        raise DivergenceError(f"reference run failed: {ref['failure']}")

    grid = make_grid(config.grid.n_modes, config.grid.alpha)
    nonsmooth = config.scenario.kind in NONSMOOTH
    rows, table = [], []
    for scheme in cmp_.schemes:
        mine = [r for r in runs if r["scheme"] == scheme]
        e_inf = [max_error(r["final"], ref["final"]) if r["completed"] else np.nan for r in mine]
        e_l2 = [l2_error(grid, r["final"], ref["final"]) if r["completed"] else np.nan for r in mine]
        o_inf = [np.nan] + list(observed_orders(e_inf, dts[0] / dts[1] if len(dts) > 1 else 2.0))
        o_l2 = [np.nan] + list(observed_orders(e_l2, dts[0] / dts[1] if len(dts) > 1 else 2.0))
        for i, r in enumerate(mine):
            status = "completed" if r["completed"] else "failed"
            note = NONSMOOTH_NOTE if nonsmooth else ""
            rows.append([scheme, r["dt"], status, e_inf[i], e_l2[i], o_inf[i], o_l2[i], note])
            table.append({
                "scheme": scheme, "dt": r["dt"], "status": status, "failure": r["failure"],
                "err_inf": _json_float(e_inf[i]), "err_l2": _json_float(e_l2[i]),
                "order_inf": _json_float(o_inf[i]), "order_l2": _json_float(o_l2[i]),
                "order_asserted": not nonsmooth, "wall_time_s": r["wall"],
            })
        run_dir = out / "runs"
        for r in mine:
            d = run_dir / f"{scheme}_dt{r['dt']:g}"
            d.mkdir(parents=True, exist_ok=True)
            write_csv(d / "energy.csv", ["t", "energy", "iterations", "residual"],
                      zip(r["times"], r["energies"], r["iterations"], r["residuals"]))
    write_csv(out / "convergence.csv",
              ["scheme", "dt", "status", "err_inf", "err_l2", "order_inf", "order_l2", "note"], rows)

    # combined energy trace at the coarsest dt
    base = [r for r in runs if r["dt"] == dts[0]]
    n = steps_for(config.t_final, dts[0])
    t = [k * dts[0] for k in range(n + 1)]
    cols = []
    for r in base:
        e = list(r["energies"]) + [None] * (n + 1 - len(r["energies"]))
        cols.append(e)
    write_csv(out / "energy_compare.csv", ["t"] + [f"E_{r['scheme']}" for r in base],
              ([t[k]] + [c[k] for c in cols] for k in range(n + 1)))
    report = {
        "config": to_dict(config),
        "version": package_version(),
        "reference": {"dt": reference.dt, "n_steps": reference.n_steps,
                      "dealias": reference.dealias},
        "dts": dts,
        "nonsmooth": nonsmooth,
        "note": NONSMOOTH_NOTE if nonsmooth else None,
        "table": table,
        "all_completed": all(r["completed"] for r in runs),
        "wall_time_s": time.perf_counter() - start,
    }
    (out / "report.json").write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
    return report


def _json_float(x):
    return float(x) if np.isfinite(x) else None


# --- verify ---------------------------------------------------------------

VERIFY_TOL = 1e-10
JACOBIAN_TOL = 1e-6


def _rel(a, b):
    scale = max(np.abs(b).max(), 1e-300)
    return float(np.abs(np.asarray(a) - np.asarray(b)).max() / scale)


def _check_theorem(rng, n_modes, samples=100):
    grid = make_grid(n_modes, 1.0 + rng.random())
    tens = tensors(grid)
    worst = 0.0
    for _ in range(samples):
        X = rng.standard_normal(grid.n_points)
        worst = max(worst,
                    _rel(fast.e_term(grid, X), tens.e_contract(X)),
                    _rel(fast.c_term(grid, X), tens.c_contract(X)),
                    _rel(fast.d_term(grid, X), tens.d_contract(X)))
    return worst <= VERIFY_TOL, {"P": grid.n_points, "samples": samples, "max_rel_error": worst}


def _check_residual_oracle(rng):
    grid = make_grid(3, 1.0)
    tens = tensors(grid)
    worst = 0.0
    for scheme in ("explicit", "implicit", "average"):
        Xn, Xo = rng.standard_normal((2, grid.n_points))
        worst = max(worst, _rel(residual(grid, scheme, Xn, Xo, 0.1),
                                oracle_residual(grid, tens, scheme, Xn, Xo, 0.1)))
    return worst <= VERIFY_TOL, {"P": grid.n_points, "max_rel_error": worst}


def _check_jacobian(rng):
    grid = make_grid(8, 1.0)
    worst = 0.0
    for scheme in ("explicit", "implicit", "average"):
        Xn, Xo = 0.5 * rng.standard_normal((2, grid.n_points))
        worst = max(worst, jacobian_error(grid, scheme, Xn, Xo, 0.05))
    return worst <= JACOBIAN_TOL, {"P": grid.n_points, "max_rel_error": worst}


def _check_energy_identities(rng):
    grid = make_grid(8, 1.0)
    x = grid.points
    # 1/2 int (u^2 + u_x^2) for u = sin x is pi; for a constant c it is pi c^2
    e_sin = fast.energy(grid, np.sin(x))
    e_const = fast.energy(grid, np.full(grid.n_points, 0.7))
    X = rng.standard_normal(grid.n_points)
    quad = float(np.pi * np.dot(X, fast.e_term(grid, X)))
    worst = max(abs(e_sin - np.pi) / np.pi, abs(e_const - np.pi * 0.49) / (np.pi * 0.49),
                abs(quad - fast.energy(grid, X)) / abs(quad))
    # the C - D bracket does no work: sum_p X_p (c - d) = 0
    work = float(np.dot(X, fast.c_term(grid, X) - fast.d_term(grid, X)))
    ok = worst <= VERIFY_TOL and abs(work) <= VERIFY_TOL * np.abs(X).max() ** 3
    return ok, {"max_rel_error": worst, "bracket_work": work}


def _check_guard():
    try:
        tensors(make_grid(16, 1.0))
    except ResourceLimitError as exc:
        return True, {"P": 33, "message": str(exc)}
    return False, {"P": 33, "message": "no ResourceLimitError raised"}


def cmd_verify(seed=0):
    """Oracle-equivalence and invariant checks; returns a JSON-ready report."""
    rng = np.random.default_rng(seed)
    checks = [
        ("theorem_P5", lambda: _check_theorem(rng, 2)),
        ("theorem_P7", lambda: _check_theorem(rng, 3)),
        ("theorem_P9", lambda: _check_theorem(rng, 4)),
        ("residual_oracle", lambda: _check_residual_oracle(rng)),
        ("jacobian_vs_finite_differences", lambda: _check_jacobian(rng)),
        ("energy_identities", lambda: _check_energy_identities(rng)),
        ("tensor_size_guard", _check_guard),
    ]
    results = []
    start = time.perf_counter()
    for name, fn in checks:
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashing check is a failing check
            ok, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
        results.append({"name": name, "passed": bool(ok), "detail": detail,
                        "seconds": time.perf_counter() - t0})
    return {
        "passed": all(r["passed"] for r in results),
        "seed": seed,
        "version": package_version(),
        "checks": results,
        "wall_time_s": time.perf_counter() - start,
    }
