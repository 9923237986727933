"""Dense matrix realisation of discrete diffeomorphisms and vector fields.

Everything here is O(P**3) or worse and meant for small grids: it is the
brute-force ground truth that the FFT formulas in :mod:`epdiff1d.fast` are
checked against.

Matrices act on centred spectral coefficients, so "row 0" in the usual
notation is row ``grid.zero_mode`` here. A discrete vector field is
``U = F T_X F^-1 D = sum_j X_j B_j`` with ``B_j = F I_j F^-1 D``.

The flat pairing only looks at the mode-0 row and divides out the rightmost
``D``, so every :class:`OperatorMatrix` that enters a pairing carries its
"stripped" factor ``W`` with ``matrix = W @ D``.
"""

import json
from dataclasses import dataclass

import numpy as np

from .errors import ResourceLimitError, StepFailure, UnsupportedOperandError
from .schemes import SchemeKind, TimeRule
from .spectral import Grid, fourier_matrix, real_field

MAX_TENSOR_POINTS = 31

ROLES = ("diffeo", "vector-field", "basis", "product")


@dataclass(frozen=True)
class OperatorMatrix:
    """P x P complex operator on spectral coefficients.

    ``stripped`` is ``W`` with ``matrix == W @ diag(1j*k)``, or ``None`` when
    the operator is not known in that factored form (e.g. a diffeomorphism).
    """

    matrix: np.ndarray
    role: str
    stripped: np.ndarray = None

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValueError(f"unknown role {self.role!r}")
        m = self.matrix
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"operator matrix must be square, got {m.shape}")

    def __matmul__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        stripped = None if other.stripped is None else self.matrix @ other.stripped
        return OperatorMatrix(self.matrix @ other.matrix, "product", stripped)

    def __add__(self, other):
        stripped = None
        if self.stripped is not None and other.stripped is not None:
            stripped = self.stripped + other.stripped
        role = self.role if self.role == other.role else "product"
        return OperatorMatrix(self.matrix + other.matrix, role, stripped)

    def __sub__(self, other):
        return self + other.scaled(-1.0)

    def scaled(self, a):
        stripped = None if self.stripped is None else a * self.stripped
        return OperatorMatrix(a * self.matrix, self.role, stripped)

    def commutator(self, other):
        return self @ other - other @ self

    def condition_number(self):
        return float(np.linalg.cond(self.matrix))


def _derivative_diag(grid):
    return 1j * grid.modes.astype(float)


def _point_multiplier(grid, values):
    """F diag(values) F^-1, the discrete multiplication operator."""
    f = fourier_matrix(grid)
    return (f * np.asarray(values)[None, :]) @ f.conj().T


def basis_matrix(grid, j):
    """B_j = F I_j F^-1 D for the j-th collocation point."""
    if not 0 <= j < grid.n_points:
        raise IndexError(f"point index {j} out of range 0..{grid.n_points - 1}")
    f = fourier_matrix(grid)
    m = np.outer(f[:, j], f[:, j].conj())
    return OperatorMatrix(m * _derivative_diag(grid)[None, :], "basis", m)


def vector_field_matrix(grid, X):
    """U = F T_X F^-1 D, equal to sum_j X_j B_j."""
    X = real_field(grid, X)
    m = _point_multiplier(grid, X)
    return OperatorMatrix(m * _derivative_diag(grid)[None, :], "vector-field", m)


def flat_weight(grid):
    """Pairing weight 1 + alpha k**2 on stripped mode-0 rows."""
    return grid.helmholtz_symbol


def _pair_rows(grid, u_rows, v_rows):
    return np.sum(flat_weight(grid) * u_rows * np.conj(v_rows), axis=-1)


def flat_pairing(grid, U, V):
    """<U_flat, V> = sum_k (1 + alpha k^2) W_U[0,k] conj(W_V[0,k]).

    For k != 0 this is exactly ``U_0k conj(V_0k) (alpha - D_kk**-2)``; the
    k = 0 term (where that weight is singular) gets weight 1.
    """
    for name, op in (("U", U), ("V", V)):
        if op.stripped is None:
            raise UnsupportedOperandError(
                f"{name} ({op.role}) is not in factored W @ D form"
            )
    z = grid.zero_mode
    return complex(_pair_rows(grid, U.stripped[z], V.stripped[z]))


@dataclass(frozen=True)
class TensorCDE:
    """C[i,j,p] = <B_j_flat, B_i B_p>, D[i,j,p] = <B_i_flat, B_p B_j>,
    E[i,p] = <B_i_flat, B_p>."""

    C: np.ndarray
    D: np.ndarray
    E: np.ndarray
    grid: Grid

    def e_contract(self, X):
        return np.asarray(X) @ self.E

    def c_contract(self, X):
        X = np.asarray(X)
        return np.einsum("i,j,ijp->p", X.conj(), X, self.C)

    def d_contract(self, X):
        X = np.asarray(X)
        return np.einsum("i,j,ijp->p", X, X.conj(), self.D)


def tensors(grid):
    """Assemble C, D, E from basis products and the flat pairing.

    Cost is O(P**5); refused above ``MAX_TENSOR_POINTS``.
    """
    p_ = grid.n_points
    if p_ > MAX_TENSOR_POINTS:
        raise ResourceLimitError(
            f"dense tensors need P <= {MAX_TENSOR_POINTS}, got P={p_}"
        )
    z = grid.zero_mode
    basis = [basis_matrix(grid, j) for j in range(p_)]
    rows = np.array([b.stripped[z] for b in basis])
    # rows of every product B_a B_b, stripped of the trailing D
    prod = np.empty((p_, p_, p_), dtype=complex)
    for a in range(p_):
        for b in range(p_):
            prod[a, b] = (basis[a] @ basis[b]).stripped[z]
    E = _pair_rows(grid, rows[:, None, :], rows[None, :, :])
    # C[i,j,p] pairs row j with product (i, p); D[i,j,p] pairs row i with (p, j)
    C = _pair_rows(grid, rows[None, :, None, :], prod[:, None, :, :])
    D = _pair_rows(grid, rows[:, None, None, :], prod.transpose(1, 0, 2)[None, :, :, :])
    return TensorCDE(C, D, E, grid)


def oracle_residual(grid, tens, scheme, X_new, X_old, dt):
    """Discrete update equation evaluated with the dense tensors.

    explicit: E(Xn - Xo) + dt [C(Xo) - D(Xn)]
    implicit: E(Xn - Xo) + dt [C(Xn) - D(Xo)]
    average:  mean of the two.
    """
    if str(getattr(scheme, "value", scheme)).lower() == "midpoint":
        raise UnsupportedOperandError("midpoint rule has no quadratic update")
    scheme = SchemeKind.parse(scheme)
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    Xn = np.asarray(X_new, dtype=complex)
    Xo = np.asarray(X_old, dtype=complex)
    r = tens.e_contract(Xn - Xo)
    explicit = tens.c_contract(Xo) - tens.d_contract(Xn)
    implicit = tens.c_contract(Xn) - tens.d_contract(Xo)
    if scheme is SchemeKind.EXPLICIT:
        return r + dt * explicit
    if scheme is SchemeKind.IMPLICIT:
        return r + dt * implicit
    return r + 0.5 * dt * (explicit + implicit)


def identity_diffeo(grid):
    return OperatorMatrix(np.eye(grid.n_points, dtype=complex), "diffeo")


def _solve(a, b, what):
    cond = np.linalg.cond(a)
    if not np.isfinite(cond) or cond > 1e14:
        raise StepFailure(f"{what}: singular solve", condition=cond)
    return np.linalg.solve(a, b)


def evolve_q(q, U, dt, rule, tol=1e-10, max_iterations=50):
    """Advance a discrete diffeomorphism by one step of the given time rule."""
    rule = TimeRule(getattr(rule, "value", rule))
    qm, um = q.matrix, U.matrix
    eye = np.eye(qm.shape[0])
    if rule is TimeRule.EXPLICIT:
        nxt = qm + dt * um @ qm
    elif rule is TimeRule.IMPLICIT:
        nxt = _solve(eye - dt * um, qm, "implicit rule")
    elif rule is TimeRule.MIDPOINT:
        nxt = _solve(eye - 0.5 * dt * um, (eye + 0.5 * dt * um) @ qm, "midpoint rule")
    else:
        # (q' - q)(q^-1 + q'^-1)/2 = dt U, iterated from the explicit step
        q_inv = _solve(qm, eye, "average rule")
        nxt = qm + dt * um @ qm
        for _ in range(max_iterations):
            s = q_inv + _solve(nxt, eye, "average rule")
            new = qm + 2 * dt * um @ _solve(s, eye, "average rule")
            change = np.abs(new - nxt).max()
            nxt = new
            if change <= tol * max(1.0, np.abs(nxt).max()):
                break
        else:
            raise StepFailure(
                f"average rule fixed point did not converge in {max_iterations} iterations"
            )
    return OperatorMatrix(nxt, "diffeo")


def velocity_from_path(q, q_next, dt, rule):
    """Read U_k off (q_k, q_{k+1}) under ``rule``; inverse of :func:`evolve_q`."""
    rule = TimeRule(getattr(rule, "value", rule))
    a, b = q.matrix, q_next.matrix
    diff = (b - a) / dt
    if rule is TimeRule.EXPLICIT:
        return diff @ np.linalg.inv(a)
    if rule is TimeRule.IMPLICIT:
        return diff @ np.linalg.inv(b)
    if rule is TimeRule.MIDPOINT:
        return 2 * diff @ np.linalg.inv(a + b)
    return 0.5 * diff @ (np.linalg.inv(a) + np.linalg.inv(b))


_DUMP_ORDER = ("C", "D", "E")


def save_tensors(path, tens):
    """Write tensors as one JSON header line followed by raw ``<c16`` arrays."""
    header = {
        "format": "epdiff1d-tensors",
        "version": 1,
        "n_modes": tens.grid.n_modes,
        "alpha": tens.grid.alpha,
        "dtype": "<c16",
        "order": "C",
        "arrays": [
            {"name": n, "shape": list(getattr(tens, n).shape)} for n in _DUMP_ORDER
        ],
    }
    with open(path, "wb") as fh:
        fh.write(json.dumps(header, sort_keys=True).encode("ascii") + b"\n")
        for n in _DUMP_ORDER:
            fh.write(np.ascontiguousarray(getattr(tens, n), dtype="<c16").tobytes())


def load_tensors(path):
    with open(path, "rb") as fh:
        header = json.loads(fh.readline().decode("ascii"))
        if header.get("format") != "epdiff1d-tensors":
            raise ValueError(f"{path}: not a tensor dump")
        arrays = {}
        for spec in header["arrays"]:
            shape = tuple(spec["shape"])
            count = int(np.prod(shape))
            buf = fh.read(16 * count)
            arrays[spec["name"]] = np.frombuffer(buf, dtype="<c16").reshape(shape).copy()
    grid = Grid(header["n_modes"], header["alpha"])
    return TensorCDE(arrays["C"], arrays["D"], arrays["E"], grid)
