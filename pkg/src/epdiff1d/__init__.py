"""Structure-preserving pseudospectral integrator for 1D EPDiff / Camassa-Holm.

Layers, bottom up: ``spectral`` (grid, DFT, derivative and Helmholtz
symbols), ``algebra`` (dense discrete-diffeomorphism matrices and the C/D/E
tensors, the brute-force oracle), ``fast`` (FFT evaluation of the tensor
contractions), ``integrator`` (explicit / implicit / average schemes with
Newton), ``reference`` (RK4 pseudospectral Camassa-Holm), ``scenarios``
(initial conditions), ``config`` / ``harness`` / ``cli`` (runs and reports).
"""

from .algebra import (
    OperatorMatrix,
    TensorCDE,
    basis_matrix,
    evolve_q,
    flat_pairing,
    identity_diffeo,
    oracle_residual,
    tensors,
    vector_field_matrix,
    velocity_from_path,
)
from .config import RunConfig, emit_config, parse_config, preset
from .errors import (
    ConfigError,
    DivergenceError,
    RealityError,
    ResourceLimitError,
    StepFailure,
    UnsupportedOperandError,
)
from .fast import c_term, d_term, e_term, energy, momentum
from .integrator import SolverOptions, StepReport, jacobian, residual, run, step
from .reference import ReferenceOptions, ch_rhs, rk4_run
from .scenarios import ScenarioSpec, gaussian, peakon, peakon_pair
from .schemes import SchemeKind, TimeRule
from .spectral import Grid, dft, discretize, idft, make_grid, reconstruct
from .trajectory import TrajectoryRecord

__version__ = "0.1.0"

__all__ = [
    "ConfigError", "DivergenceError", "Grid", "OperatorMatrix", "RealityError",
    "ReferenceOptions", "ResourceLimitError", "RunConfig", "ScenarioSpec", "SchemeKind",
    "SolverOptions", "StepFailure", "StepReport", "TensorCDE", "TimeRule",
    "TrajectoryRecord", "UnsupportedOperandError", "basis_matrix", "c_term", "ch_rhs",
    "d_term", "dft", "discretize", "e_term", "emit_config", "energy", "evolve_q",
    "flat_pairing", "gaussian", "idft", "identity_diffeo", "jacobian", "make_grid",
    "momentum", "oracle_residual", "parse_config", "peakon", "peakon_pair", "preset",
    "reconstruct", "residual", "rk4_run", "run", "step", "tensors", "vector_field_matrix",
    "velocity_from_path",
]
