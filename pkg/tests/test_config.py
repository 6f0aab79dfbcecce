"""Tests for configuration."""

import json
from pathlib import Path
from tempfile import TemporaryDirectory

import pytest

from veblen_dyn.domain import ConfigError, SweepMode, SweepParam
from veblen_dyn.utils import (
    PRESETS,
    ExperimentConfig,
    RuntimeSettings,
    load_preset,
    preset_names,
    resolve_config,
)

PARAMS = dict(alpha=0.9, beta=10.0, rho=2.6, sigma=0.75, gamma=1.5, w=1.0, c_ref=1.0, v=0.1)


def test_config_defaults():
    """Test default section values."""
    config = ExperimentConfig(params=PARAMS)

    assert config.preset is None
    assert config.simulate.transient == 2000
    assert config.simulate.record == 500
    assert config.simulate.initial.as_tuple() == (0.1, 0.5)
    assert config.sweep.steps == 400
    assert config.sweep.mode == SweepMode.CONTINUATION
    assert config.basin.resolution == 400
    assert config.basin.max_iter == 100_000
    assert config.basin.capture_radius == 1e-6
    assert config.tax_check.trials == 10_000


def test_config_file_operations():
    """Test saving and loading configuration in both formats."""
    with TemporaryDirectory() as tmpdir:
        for name in ("config.yaml", "config.json"):
            config_path = Path(tmpdir) / name

            config = ExperimentConfig(params=PARAMS, basin={"resolution": 50})
            config.to_file(config_path)

            loaded_config = ExperimentConfig.from_file(config_path)

            assert loaded_config == config
            assert loaded_config.basin.resolution == 50


def test_config_rejects_unknown_keys(tmp_path):
    """Unknown keys anywhere in the document are refused."""
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"params": PARAMS, "basin": {"resolutoin": 10}}))
    with pytest.raises(ConfigError):
        ExperimentConfig.from_file(path)

    path.write_text(json.dumps({"params": {**PARAMS, "kappa": 1.0}}))
    with pytest.raises(ConfigError):
        ExperimentConfig.from_file(path)


def test_config_rejects_bad_files(tmp_path):
    """Unreadable, malformed and unsupported files raise ConfigError."""
    with pytest.raises(ConfigError):
        ExperimentConfig.from_file(tmp_path / "missing.json")

    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(ConfigError):
        ExperimentConfig.from_file(broken)

    toml = tmp_path / "config.toml"
    toml.write_text("alpha = 0.5")
    with pytest.raises(ConfigError):
        ExperimentConfig.from_file(toml)


def test_presets_expand_to_parameter_sets():
    """Presets expand to their parameter sets and experiment settings."""
    assert preset_names() == sorted(PRESETS)
    assert {"fig4a", "fig4b", "fig5", "fig5b", "fig6", "fig7a", "fig7b", "fig8a", "fig8b"} <= set(PRESETS)

    fig6 = resolve_config(preset="fig6")
    assert fig6.preset == "fig6"
    assert fig6.params.beta == 10.0
    assert fig6.params.v == 1.0
    assert fig6.params.c_ref == 3.0
    assert fig6.sweep.param == SweepParam.ALPHA

    fig7b = resolve_config(preset="fig7b")
    assert fig7b.params.rho == 2.6
    assert fig7b.params.alpha == 0.9
    assert fig7b.simulate.initial.as_tuple() == (0.6, 0.9)

    assert resolve_config(preset="fig8a").params.alpha == 0.5
    assert resolve_config(preset="fig8b").params.alpha == 0.75
    assert resolve_config(preset="fig4b").params.beta == 1000.0
    assert resolve_config(preset="fig5").params.alpha == 0.49


def test_load_preset_returns_copies():
    """Mutating a loaded preset does not touch the registry."""
    data = load_preset("fig7b")
    data["params"]["rho"] = 0.0
    assert PRESETS["fig7b"]["params"]["rho"] == 2.6


def test_unknown_preset():
    """An unknown preset name is a configuration error."""
    with pytest.raises(ConfigError):
        resolve_config(preset="fig99")


def test_resolution_order(tmp_path):
    """Preset, then file, then overrides."""
    path = tmp_path / "config.yaml"
    path.write_text("params:\n  rho: 1.0\n  alpha: 0.8\nbasin:\n  resolution: 20\n")

    config = resolve_config(
        preset="fig7b", config_path=path, overrides={"params": {"alpha": 0.7}}
    )

    assert config.params.beta == 10.0
    assert config.params.rho == 1.0
    assert config.params.alpha == 0.7
    assert config.basin.resolution == 20
    assert config.basin.e_max == 1.0


def test_file_may_name_preset(tmp_path):
    """A preset key inside the file is expanded underneath it."""
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"preset": "fig8a", "params": {"rho": 3.0}}))

    config = resolve_config(config_path=path)
    assert config.params.alpha == 0.5
    assert config.params.rho == 3.0


def test_missing_params():
    """Without preset, file or flags there is nothing to run."""
    with pytest.raises(ConfigError):
        resolve_config()
    with pytest.raises(ConfigError):
        resolve_config(overrides={"params": {"alpha": 0.5}})


def test_invalid_override():
    """Out-of-range overrides surface as ConfigError."""
    with pytest.raises(ConfigError):
        resolve_config(preset="fig7b", overrides={"params": {"alpha": 1.5}})
    with pytest.raises(ConfigError):
        resolve_config(preset="fig7b", overrides={"tax_check": {"trials": 0}})


def test_runtime_settings_from_environment(monkeypatch):
    """VEBLEN_DYN_ variables configure threads and log level."""
    monkeypatch.setenv("VEBLEN_DYN_THREADS", "4")
    monkeypatch.setenv("VEBLEN_DYN_LOG_LEVEL", "debug")

    settings = RuntimeSettings()
    assert settings.threads == 4
    assert settings.log_level == "debug"
