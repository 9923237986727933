"""Nonholonomic variational time stepper for 1D EPDiff.

The unknown at each step is the coordinate vector ``X`` of the velocity
matrix ``U_k = sum_j X_j B_j``. Because ``B_j`` differentiates with a plus
sign while ``U = dq/dt q^-1`` generates transport with a minus sign, the
physical (Eulerian) velocity is ``u = -X``. With that identification the
discrete equations are consistent with the Camassa-Holm equation
``m_t + u m_x + 2 m u_x = 0``. :func:`residual`, :func:`step` and
:func:`jacobian` work on coordinates; :func:`run` takes and records the
velocity.

All three schemes are nonlinear in the new state. Newton (the default) uses
the analytic Jacobian, assembled densely with FFTs.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import StepFailure
from .fast import c_term, d_term, e_term, energy, momentum
from .schemes import SchemeKind
from .spectral import (
    apply_helmholtz,
    derivative_columns,
    derivative_matrix,
    helmholtz_matrix,
    invert_helmholtz,
    real_field,
    spectral_derivative,
)
from .trajectory import TrajectoryRecord


def coordinates_from_velocity(u):
    return -np.asarray(u, dtype=float)


def velocity_from_coordinates(X):
    return -np.asarray(X, dtype=float)


@dataclass(frozen=True)
class SolverOptions:
    tolerance: float = 1e-12
    max_iterations: int = 50
    method: str = "newton"
    newton_fd_epsilon: float = 1e-7

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.method not in ("newton", "picard"):
            raise ValueError(f"method must be 'newton' or 'picard', got {self.method!r}")
        if not self.newton_fd_epsilon > 0:
            raise ValueError("newton_fd_epsilon must be positive")


@dataclass(frozen=True)
class StepReport:
    iterations: int
    residual_norm: float
    converged: bool


def _nonlinear(grid, scheme, X_new, X_old):
    """The bracket multiplying dt in the update equation."""
    if scheme is SchemeKind.EXPLICIT:
        return c_term(grid, X_old) - d_term(grid, X_new)
    if scheme is SchemeKind.IMPLICIT:
        return c_term(grid, X_new) - d_term(grid, X_old)
    return 0.5 * (
        c_term(grid, X_old) + c_term(grid, X_new) - d_term(grid, X_new) - d_term(grid, X_old)
    )


def residual(grid, scheme, X_new, X_old, dt):
    """Update equation in coordinates; zero at the new state.

    explicit: e(Xn) - e(Xo) + dt [c(Xo) - d(Xn)]
    implicit: e(Xn) - e(Xo) + dt [c(Xn) - d(Xo)]
    average:  mean of the two

    A negative ``dt`` steps backward in time.
    """
    scheme = SchemeKind.parse(scheme)
    if dt == 0 or not np.isfinite(dt):
        raise ValueError(f"dt must be finite and nonzero, got {dt}")
    X_new = real_field(grid, X_new)
    X_old = real_field(grid, X_old)
    return e_term(grid, X_new) - e_term(grid, X_old) + dt * _nonlinear(grid, scheme, X_new, X_old)


def _c_jacobian(grid, X, hmat, dmat):
    m = apply_helmholtz(grid, X)
    return -(m[:, None] * dmat + spectral_derivative(grid, X)[:, None] * hmat)


def _d_jacobian(grid, X, hmat):
    a = X[:, None] * hmat
    a[np.diag_indices_from(a)] += apply_helmholtz(grid, X)
    return derivative_columns(grid, a)


def jacobian(grid, scheme, X_new, dt):
    """d residual / d X_new as a dense P x P matrix."""
    scheme = SchemeKind.parse(scheme)
    X = real_field(grid, X_new)
    hmat = helmholtz_matrix(grid)
    if scheme is SchemeKind.EXPLICIT:
        nl = -_d_jacobian(grid, X, hmat)
    elif scheme is SchemeKind.IMPLICIT:
        nl = _c_jacobian(grid, X, hmat, derivative_matrix(grid))
    else:
        nl = 0.5 * (_c_jacobian(grid, X, hmat, derivative_matrix(grid)) - _d_jacobian(grid, X, hmat))
    return (hmat + dt * nl) / grid.n_points


def finite_difference_jacobian(grid, scheme, X_new, X_old, dt, eps=1e-7):
    """Central-difference Jacobian of :func:`residual`, column by column."""
    X_new = real_field(grid, X_new)
    cols = []
    for j in range(grid.n_points):
        h = np.zeros(grid.n_points)
        h[j] = eps
        cols.append(
            (residual(grid, scheme, X_new + h, X_old, dt) - residual(grid, scheme, X_new - h, X_old, dt))
            / (2 * eps)
        )
    return np.column_stack(cols)


def jacobian_error(grid, scheme, X_new, X_old, dt, eps=1e-7):
    """Relative max-norm gap between analytic and finite-difference Jacobians."""
    a = jacobian(grid, scheme, X_new, dt)
    f = finite_difference_jacobian(grid, scheme, X_new, X_old, dt, eps)
    return float(np.abs(a - f).max() / np.abs(a).max())


def step(grid, scheme, X_old, dt, opts=None):
    """Solve the update equation for the next coordinates, starting from X_old.

    Raises StepFailure (carrying the StepReport) if the residual does not
    reach ``opts.tolerance`` within ``opts.max_iterations`` corrections.
    """
    opts = opts or SolverOptions()
    scheme = SchemeKind.parse(scheme)
    X_old = real_field(grid, X_old)
    X = X_old.copy()
    its = 0
    while True:
        r = residual(grid, scheme, X, X_old, dt)
        norm = float(np.abs(r).max())
        if not np.isfinite(norm):
            report = StepReport(its, norm, False)
            raise StepFailure(f"non-finite residual after {its} iterations", report)
        if norm <= opts.tolerance:
            return X, StepReport(its, norm, True)
        if its >= opts.max_iterations:
            report = StepReport(its, norm, False)
            raise StepFailure(
                f"{opts.method} did not converge: residual {norm:.3e} after {its} iterations",
                report,
            )
        if opts.method == "newton":
            J = jacobian(grid, scheme, X, dt)
            try:
                X = X - scipy.linalg.solve(J, r, check_finite=True)
            except (scipy.linalg.LinAlgError, ValueError) as exc:
                report = StepReport(its, norm, False)
                raise StepFailure(f"Newton linear solve failed: {exc}", report,
                                  condition=float(np.linalg.cond(J))) from exc
        else:
            # e(X) is linear: e(Xn) = e(Xo) - dt * bracket(Xn)
            X = X_old - dt * grid.n_points * invert_helmholtz(
                grid, _nonlinear(grid, scheme, X, X_old)
            )
        its += 1


def run(grid, scheme, u0, dt, n_steps, opts=None, observers=(), stride=1):
    """Integrate from the velocity ``u0`` for ``n_steps`` steps of size ``dt``.

    Snapshots (velocity) are kept every ``stride`` steps plus the final state;
    energy, Newton iterations and residual are recorded every step. On a
    StepFailure the partial record is returned with ``completed=False``.
    Observers are called as ``obs(k, t, u, report)``; ``report`` is None at k=0.
    """
    scheme = SchemeKind.parse(scheme)
    if n_steps < 1:
        raise ValueError(f"n_steps must be >= 1, got {n_steps}")
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    opts = opts or SolverOptions()
    u0 = real_field(grid, u0)
    X = coordinates_from_velocity(u0)
    rec = TrajectoryRecord(grid.n_points)
    rec.metadata.update(scheme=scheme.value, dt=dt, n_steps=n_steps)
    rec.add_snapshot(0.0, u0)
    rec.add_energy(0.0, energy(grid, X))
    rec.momenta.append(momentum(grid, u0))
    for obs in observers:
        obs(0, 0.0, u0, None)
    for k in range(1, n_steps + 1):
        t = k * dt
        try:
            X, report = step(grid, scheme, X, dt, opts)
        except StepFailure as exc:
            rec.completed = False
            rec.failure = f"step {k} (t={t:.6g}): {exc}"
            break
        u = velocity_from_coordinates(X)
        rec.add_energy(t, energy(grid, X), report.iterations, report.residual_norm)
        rec.momenta.append(momentum(grid, u))
        if k % stride == 0 or k == n_steps:
            rec.add_snapshot(t, u)
        for obs in observers:
            obs(k, t, u, report)
    if not rec.completed and rec.times[-1] > rec.snapshot_times[-1]:
        rec.add_snapshot(rec.times[-1], u)
    return rec
