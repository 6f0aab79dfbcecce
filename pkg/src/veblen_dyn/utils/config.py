"""Configuration management for veblen-dyn."""

import json
from pathlib import Path
from typing import Any, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from veblen_dyn.domain import ConfigError, ModelParams, State, SweepMode, SweepParam
from veblen_dyn.utils.presets import load_preset


class RuntimeSettings(BaseSettings):
    """Process-level settings read from the environment."""

    model_config = SettingsConfigDict(
        env_prefix="VEBLEN_DYN_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    threads: int = Field(default=1, ge=1)
    log_level: str = "WARNING"


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class SimulateSettings(_Section):
    initial_e: float = 0.1
    initial_pi: float = Field(default=0.5, gt=-1.0)
    transient: int = Field(default=2000, ge=0)
    record: int = Field(default=500, ge=0)
    choices: bool = False

    @property
    def initial(self) -> State:
        return State(e=self.initial_e, pi=self.initial_pi)


class SweepSettings(_Section):
    """Parameter grid for orbit diagrams and bifurcation detection."""

    param: SweepParam = SweepParam.V
    start: float = 0.0
    stop: float = 1.0
    steps: int = Field(default=400, ge=2)
    mode: SweepMode = SweepMode.CONTINUATION
    transient: int = Field(default=2000, ge=0)
    record: int = Field(default=500, ge=0)
    initial_e: float = 0.1
    initial_pi: float = Field(default=0.5, gt=-1.0)

    @property
    def value_range(self) -> tuple[float, float]:
        return self.start, self.stop

    @property
    def initial(self) -> State:
        return State(e=self.initial_e, pi=self.initial_pi)


class BasinSettings(_Section):
    e_min: float = 0.0
    e_max: float = 1.0
    pi_min: float = 0.0
    pi_max: float = 1.0
    resolution: int = Field(default=400, ge=1)
    max_iter: int = Field(default=100_000, ge=0)
    capture_radius: float = Field(default=1e-6, gt=0.0)


class IsoclineSettings(_Section):
    e_min: float = -0.2
    e_max: float = 1.0
    points: int = Field(default=400, ge=2)


class TaxCheckSettings(_Section):
    trials: int = Field(default=10_000, ge=1)
    tau_max: float = Field(default=10.0, ge=0.0)
    seed: int = 0
    tolerance: float = Field(default=1e-10, gt=0.0)


class ExperimentConfig(BaseModel):
    """Model constants plus the settings of every experiment."""

    model_config = ConfigDict(extra="forbid")

    preset: Optional[str] = None
    params: ModelParams
    simulate: SimulateSettings = Field(default_factory=SimulateSettings)
    sweep: SweepSettings = Field(default_factory=SweepSettings)
    basin: BasinSettings = Field(default_factory=BasinSettings)
    isoclines: IsoclineSettings = Field(default_factory=IsoclineSettings)
    tax_check: TaxCheckSettings = Field(default_factory=TaxCheckSettings)

    @classmethod
    def from_file(cls, config_path: Path) -> "ExperimentConfig":
        """Load configuration from a JSON or YAML file."""
        return build_config(read_config_data(config_path))

    def to_file(self, config_path: Path) -> None:
        """Save configuration as JSON or YAML, chosen by the file suffix."""
        data = self.model_dump(mode="json")
        config_path.parent.mkdir(parents=True, exist_ok=True)
        with open(config_path, "w") as f:
            if config_path.suffix.lower() in (".yaml", ".yml"):
                yaml.safe_dump(data, f, default_flow_style=False, sort_keys=False)
            else:
                json.dump(data, f, indent=2)


def read_config_data(config_path: Path) -> dict[str, Any]:
    """Parse a config file into a plain dict."""
    suffix = config_path.suffix.lower()
    try:
        with open(config_path) as f:
            if suffix == ".json":
                data = json.load(f)
            elif suffix in (".yaml", ".yml"):
                data = yaml.safe_load(f)
            else:
                raise ConfigError(f"Unsupported config format {suffix!r}; use .json, .yaml or .yml")
    except OSError as exc:
        raise ConfigError(f"Cannot read config {config_path}: {exc}") from exc
    except (json.JSONDecodeError, yaml.YAMLError) as exc:
        raise ConfigError(f"Cannot parse config {config_path}: {exc}") from exc

    if not isinstance(data, dict):
        raise ConfigError(f"Config {config_path} must contain a mapping at the top level")
    return data


def _merge(base: dict[str, Any], update: dict[str, Any]) -> dict[str, Any]:
    merged = dict(base)
    for key, value in update.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def build_config(data: dict[str, Any]) -> ExperimentConfig:
    """Validate config data, expanding a ``preset`` key underneath it."""
    preset = data.get("preset")
    if preset is not None:
        data = _merge(load_preset(preset), data)
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(f"Invalid configuration:\n{exc}") from exc


def resolve_config(
    preset: Optional[str] = None,
    config_path: Optional[Path] = None,
    overrides: Optional[dict[str, Any]] = None,
) -> ExperimentConfig:
    """Combine preset, config file and overrides, later sources winning.

    ``overrides`` uses the config layout, e.g. ``{"params": {"alpha": 0.5}}``.
    """
    data: dict[str, Any] = {}
    if preset is not None:
        data = load_preset(preset)
    if config_path is not None:
        file_data = read_config_data(config_path)
        if preset is None and file_data.get("preset") is not None:
            data = load_preset(file_data["preset"])
        data = _merge(data, file_data)
    if overrides:
        data = _merge(data, overrides)

    if "params" not in data:
        raise ConfigError("No model parameters given; use --preset, --config or parameter flags")
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(f"Invalid configuration:\n{exc}") from exc
