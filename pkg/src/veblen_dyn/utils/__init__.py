"""Utility modules."""

from veblen_dyn.utils.config import (
    BasinSettings,
    ExperimentConfig,
    IsoclineSettings,
    RuntimeSettings,
    SimulateSettings,
    SweepSettings,
    TaxCheckSettings,
    build_config,
    read_config_data,
    resolve_config,
)
from veblen_dyn.utils.logging import setup_logging
from veblen_dyn.utils.parallel import ordered_map
from veblen_dyn.utils.presets import PRESETS, load_preset, preset_names

__all__ = [
    "PRESETS",
    "BasinSettings",
    "ExperimentConfig",
    "IsoclineSettings",
    "RuntimeSettings",
    "SimulateSettings",
    "SweepSettings",
    "TaxCheckSettings",
    "build_config",
    "load_preset",
    "ordered_map",
    "preset_names",
    "read_config_data",
    "resolve_config",
    "setup_logging",
]
