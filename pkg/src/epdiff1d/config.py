"""Run configuration: YAML documents, validation, presets.

A configuration looks like::

    grid: {n_modes: 256, alpha: 1.0}
    scheme: average            # explicit | implicit | average | reference
    dt: 0.01
    t_final: 5.0
    scenario: {kind: gaussian, amplitudes: [1.0], centers: [0.0], width: 1.0}
    solver: {tolerance: 1.0e-12, max_iterations: 50, method: newton}
    output: {directory: runs/desk-gaussian, stride: 10, formats: [csv, json, plot]}
    compare: {schemes: [explicit, implicit, average], dts: [0.02, 0.01, 0.005],
              reference_dt: 1.0e-4, dealias: true}

Only ``grid``, ``dt``, ``t_final`` and ``scenario`` are required. Unknown keys
are rejected.
"""

import dataclasses
import math
from dataclasses import dataclass, field

import yaml

from .errors import ConfigError
from .integrator import SolverOptions
from .scenarios import ScenarioSpec
from .schemes import SchemeKind

MAX_MODES = 4096
SCHEMES = ("explicit", "implicit", "average", "reference")
FORMATS = ("csv", "json", "plot")


@dataclass(frozen=True)
class GridConfig:
    n_modes: int
    alpha: float = 1.0


@dataclass(frozen=True)
class OutputConfig:
    directory: str = "runs/out"
    stride: int = 1
    formats: tuple = FORMATS


@dataclass(frozen=True)
class CompareConfig:
    schemes: tuple = ("explicit", "implicit", "average")
    dts: tuple = ()
    reference_dt: float = 1e-4
    dealias: bool = True


@dataclass(frozen=True)
class RunConfig:
    grid: GridConfig
    dt: float
    t_final: float
    scenario: ScenarioSpec
    scheme: str = "average"
    solver: SolverOptions = field(default_factory=SolverOptions)
    output: OutputConfig = field(default_factory=OutputConfig)
    compare: CompareConfig = field(default_factory=CompareConfig)

    @property
    def n_steps(self):
        return steps_for(self.t_final, self.dt)


def steps_for(t_final, dt):
    n = round(t_final / dt)
    if n < 1 or abs(n * dt - t_final) > 1e-9 * max(1.0, t_final):
        raise ValueError(f"t_final={t_final} is not a whole number of steps of dt={dt}")
    return int(n)


# --- typed field coercion -------------------------------------------------

def _real(value, path):
    if isinstance(value, bool):
        raise ConfigError(f"expected a real number, got {value!r}", field=path)
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(value)
        except ValueError:
            pass
    raise ConfigError(f"expected a real number, got {value!r}", field=path)


def _integer(value, path):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"expected an integer, got {value!r}", field=path)
    return value


def _string(value, path):
    if not isinstance(value, str):
        raise ConfigError(f"expected a string, got {value!r}", field=path)
    return value


def _boolean(value, path):
    if not isinstance(value, bool):
        raise ConfigError(f"expected true/false, got {value!r}", field=path)
    return value


def _list(kind):
    def convert(value, path):
        if not isinstance(value, (list, tuple)):
            value = [value]
        return tuple(kind(v, f"{path}[{i}]") for i, v in enumerate(value))
    return convert


def _section(doc, path, schema):
    if not isinstance(doc, dict):
        raise ConfigError(f"expected a mapping, got {type(doc).__name__}", field=path)
    unknown = sorted(set(doc) - set(schema))
    if unknown:
        where = f"{path}.{unknown[0]}" if path else unknown[0]
        raise ConfigError(f"unknown key {unknown[0]!r}", field=where)
    out = {}
    for key, value in doc.items():
        out[key] = schema[key](value, f"{path}.{key}" if path else key)
    return out


_GRID = {"n_modes": _integer, "alpha": _real}
_SCENARIO = {"kind": _string, "amplitudes": _list(_real), "centers": _list(_real),
             "width": _real}
_SOLVER = {"tolerance": _real, "max_iterations": _integer, "method": _string,
           "newton_fd_epsilon": _real}
_OUTPUT = {"directory": _string, "stride": _integer, "formats": _list(_string)}
_COMPARE = {"schemes": _list(_string), "dts": _list(_real), "reference_dt": _real,
            "dealias": _boolean}


def _build(cls, values, path):
    try:
        return cls(**values)
    except TypeError as exc:
        raise ConfigError(str(exc), field=path) from None
    except ValueError as exc:
        raise ConfigError(str(exc), field=path) from None


def _require(doc, key, path=""):
    if key not in doc:
        raise ConfigError("missing required key", field=f"{path}.{key}" if path else key)


def from_dict(doc):
    top = {
        "grid": lambda v, p: _section(v, p, _GRID),
        "scheme": _string,
        "dt": _real,
        "t_final": _real,
        "scenario": lambda v, p: _section(v, p, _SCENARIO),
        "solver": lambda v, p: _section(v, p, _SOLVER),
        "output": lambda v, p: _section(v, p, _OUTPUT),
        "compare": lambda v, p: _section(v, p, _COMPARE),
    }
    values = _section(doc, "", top)
    for key in ("grid", "dt", "t_final", "scenario"):
        _require(values, key)
    _require(values["grid"], "n_modes", "grid")
    for key in ("kind", "amplitudes", "centers"):
        _require(values["scenario"], key, "scenario")

    grid = _build(GridConfig, values["grid"], "grid")
    if not 1 <= grid.n_modes <= MAX_MODES:
        raise ConfigError(f"n_modes must be in 1..{MAX_MODES}", field="grid.n_modes")
    if not grid.alpha > 0:
        raise ConfigError("alpha must be positive", field="grid.alpha")

    scheme = values.get("scheme", "average").lower()
    _check_scheme(scheme, "scheme")

    dt, t_final = values["dt"], values["t_final"]
    if not (math.isfinite(dt) and dt > 0):
        raise ConfigError("dt must be positive", field="dt")
    if not (math.isfinite(t_final) and t_final > 0):
        raise ConfigError("t_final must be positive", field="t_final")
    if dt > t_final:
        raise ConfigError("dt must not exceed t_final", field="dt")
    try:
        steps_for(t_final, dt)
    except ValueError as exc:
        raise ConfigError(str(exc), field="t_final") from None

    scenario = _build(ScenarioSpec, values["scenario"], "scenario")
    solver = _build(SolverOptions, values.get("solver", {}), "solver")
    output = _build(OutputConfig, values.get("output", {}), "output")
    if output.stride < 1:
        raise ConfigError("stride must be >= 1", field="output.stride")
    for fmt in output.formats:
        if fmt not in FORMATS:
            raise ConfigError(f"unknown format {fmt!r}", field="output.formats")
    compare = _build(CompareConfig, values.get("compare", {}), "compare")
    for i, s in enumerate(compare.schemes):
        _check_scheme(s, f"compare.schemes[{i}]")
    if any(not d > 0 for d in compare.dts):
        raise ConfigError("dts must be positive", field="compare.dts")
    if not compare.reference_dt > 0:
        raise ConfigError("reference_dt must be positive", field="compare.reference_dt")
    return RunConfig(grid=grid, scheme=scheme, dt=dt, t_final=t_final,
                     scenario=scenario, solver=solver, output=output, compare=compare)


def _check_scheme(name, path):
    if name == "reference":
        return
    try:
        SchemeKind.parse(name)
    except ValueError as exc:
        raise ConfigError(str(exc), field=path) from None


def parse_config(source):
    """Parse a YAML config from a path or from inline text.

    Text containing a newline or a ``:`` is treated as inline; anything else
    as a file path.
    """
    text = str(source)
    if "\n" not in text and ":" not in text:
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        doc = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        line = mark.line + 1 if mark else None
        col = mark.column + 1 if mark else None
        raise ConfigError(f"YAML syntax error: {exc.problem}", line=line, column=col) from None
    if doc is None:
        raise ConfigError("empty configuration")
    return from_dict(doc)


def to_dict(config):
    def clean(obj):
        if dataclasses.is_dataclass(obj):
            return {f.name: clean(getattr(obj, f.name)) for f in dataclasses.fields(obj)
                    if getattr(obj, f.name) is not None}
        if isinstance(obj, tuple):
            return [clean(v) for v in obj]
        return obj
    return clean(config)


def emit_config(config):
    return yaml.safe_dump(to_dict(config), sort_keys=False)


def with_overrides(config, scheme=None, dt=None, t_final=None, n_modes=None,
                   alpha=None, out=None):
    """Apply command-line overrides and re-validate."""
    doc = to_dict(config)
    if scheme is not None:
        doc["scheme"] = scheme
    if dt is not None:
        doc["dt"] = dt
    if t_final is not None:
        doc["t_final"] = t_final
    if n_modes is not None:
        doc["grid"]["n_modes"] = n_modes
    if alpha is not None:
        doc["grid"]["alpha"] = alpha
    if out is not None:
        doc["output"]["directory"] = out
    return from_dict(doc)


_GAUSSIAN = {"kind": "gaussian", "amplitudes": [1.0], "centers": [0.0], "width": 1.0}

PRESETS = {
    # N = 1000: tens of minutes with the dense Newton solver
    "paper-gaussian": {
        "grid": {"n_modes": 1000, "alpha": 1.0}, "scheme": "average",
        "dt": 0.01, "t_final": 5.0, "scenario": _GAUSSIAN,
        "output": {"directory": "runs/paper-gaussian", "stride": 10},
    },
    "desk-gaussian": {
        "grid": {"n_modes": 256, "alpha": 1.0}, "scheme": "average",
        "dt": 0.01, "t_final": 5.0, "scenario": _GAUSSIAN,
        "output": {"directory": "runs/desk-gaussian", "stride": 10},
    },
    "desk-gaussian-explicit": {
        "grid": {"n_modes": 256, "alpha": 1.0}, "scheme": "explicit",
        "dt": 0.01, "t_final": 5.0, "scenario": _GAUSSIAN,
        "output": {"directory": "runs/desk-gaussian-explicit", "stride": 10},
    },
    "desk-gaussian-implicit": {
        "grid": {"n_modes": 256, "alpha": 1.0}, "scheme": "implicit",
        "dt": 0.01, "t_final": 5.0, "scenario": _GAUSSIAN,
        "output": {"directory": "runs/desk-gaussian-implicit", "stride": 10},
    },
    "peakon-collision": {
        "grid": {"n_modes": 256, "alpha": 1.0}, "scheme": "average",
        "dt": 0.005, "t_final": 3.0,
        "scenario": {"kind": "peakon_pair", "amplitudes": [1.0, -1.0],
                     "centers": [-math.pi / 2, math.pi / 2]},
        "output": {"directory": "runs/peakon-collision", "stride": 20},
    },
    "single-peakon": {
        "grid": {"n_modes": 256, "alpha": 1.0}, "scheme": "average",
        "dt": 0.01, "t_final": 1.0,
        "scenario": {"kind": "peakon", "amplitudes": [1.0], "centers": [0.0]},
        "output": {"directory": "runs/single-peakon", "stride": 10},
        "compare": {"dts": [0.02, 0.01, 0.005], "reference_dt": 1e-4},
    },
    "smooth-convergence": {
        "grid": {"n_modes": 64, "alpha": 1.0}, "scheme": "average",
        "dt": 0.02, "t_final": 1.0,
        "scenario": {"kind": "sine", "amplitudes": [0.1], "centers": [0.0]},
        "output": {"directory": "runs/smooth-convergence", "stride": 5},
        "compare": {"dts": [0.02, 0.01, 0.005], "reference_dt": 1e-4},
    },
}


def preset(name):
    try:
        doc = PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}") from None
    return from_dict(yaml.safe_load(yaml.safe_dump(doc)))
