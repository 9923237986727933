"""YAML run configurations, validation and presets."""

import pytest
import yaml

from epdiff1d.config import PRESETS, emit_config, from_dict, parse_config, preset, with_overrides
from epdiff1d.errors import ConfigError

MINIMAL = """
grid: {n_modes: 16, alpha: 1.0}
dt: 0.01
t_final: 0.1
scenario: {kind: gaussian, amplitudes: [1.0], centers: [0.0], width: 1.0}
"""


def doc(**changes):
    d = yaml.safe_load(MINIMAL)
    d.update(changes)
    return d


def test_minimal_defaults():
    cfg = parse_config(MINIMAL)
    assert cfg.scheme == "average" and cfg.n_steps == 10
    assert cfg.solver.tolerance == 1e-12 and cfg.output.stride == 1


def test_from_file(tmp_path):
    p = tmp_path / "run.yaml"
    p.write_text(MINIMAL)
    assert parse_config(str(p)) == parse_config(MINIMAL)


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_round_trip(name):
    cfg = preset(name)
    assert parse_config(emit_config(cfg)) == cfg


def test_n1000_gaussian_preset():
    cfg = preset("paper-gaussian")
    assert (cfg.grid.alpha, cfg.grid.n_modes, cfg.dt) == (1.0, 1000, 0.01)
    assert cfg.scenario.kind == "gaussian"


def test_desk_preset_is_513_points():
    cfg = preset("desk-gaussian")
    assert 2 * cfg.grid.n_modes + 1 == 513 and cfg.t_final == 5.0


def test_numeric_strings_coerced():
    assert from_dict(doc(dt="0.02")).dt == 0.02


@pytest.mark.parametrize("changes,field", [
    ({"dt": 0}, "dt"),
    ({"dt": -0.1}, "dt"),
    ({"dt": 1.0}, "dt"),
    ({"dt": 0.03}, "t_final"),
    ({"t_final": 0}, "t_final"),
    ({"scheme": "midpoint"}, "scheme"),
    ({"scheme": "leapfrog"}, "scheme"),
    ({"grid": {"n_modes": 0}}, "grid.n_modes"),
    ({"grid": {"n_modes": 8.5}}, "grid.n_modes"),
    ({"grid": {"n_modes": 8, "alpha": -1}}, "grid.alpha"),
    ({"grid": {"n_modes": 8, "beta": 1}}, "grid.beta"),
    ({"colour": "blue"}, "colour"),
    ({"dt": True}, "dt"),
    ({"output": {"stride": 0}}, "output.stride"),
    ({"output": {"formats": ["hdf5"]}}, "output.formats"),
    ({"solver": {"method": "broyden"}}, "solver"),
    ({"compare": {"schemes": ["midpoint"]}}, "compare.schemes[0]"),
    ({"scenario": {"kind": "gaussian", "amplitudes": [1.0], "centers": [0.0]}}, "scenario"),
])
def test_validation_names_field(changes, field):
    with pytest.raises(ConfigError) as info:
        from_dict(doc(**changes))
    assert info.value.field == field


def test_midpoint_message():
    with pytest.raises(ConfigError, match="cubic"):
        from_dict(doc(scheme="midpoint"))


def test_missing_key():
    d = doc()
    del d["scenario"]
    with pytest.raises(ConfigError) as info:
        from_dict(d)
    assert info.value.field == "scenario"


def test_syntax_error_has_position():
    with pytest.raises(ConfigError) as info:
        parse_config("grid: {n_modes: 16\ndt: [0.01\n")
    assert info.value.line is not None and info.value.column is not None
    assert "line" in str(info.value)


def test_overrides():
    cfg = with_overrides(preset("desk-gaussian"), scheme="explicit", dt=0.02, t_final=1.0,
                         n_modes=32, alpha=0.5, out="elsewhere")
    assert (cfg.scheme, cfg.dt, cfg.t_final) == ("explicit", 0.02, 1.0)
    assert (cfg.grid.n_modes, cfg.grid.alpha, cfg.output.directory) == (32, 0.5, "elsewhere")
    with pytest.raises(ConfigError):
        with_overrides(cfg, dt=0.0)


def test_unknown_preset():
    with pytest.raises(ConfigError, match="available"):
        preset("nope")
