"""Named parameter sets for the standard experiments."""

from copy import deepcopy
from typing import Any

from veblen_dyn.domain import ConfigError

# Strong Veblen family: v is swept across the existence threshold.
_STATUS = {"sigma": 0.75, "gamma": 1.5, "w": 1.0, "c_ref": 3.0, "rho": 0.0, "v": 0.0}
_STATUS_SWEEP = {"param": "v", "start": 0.0, "stop": 1.0}

# Multistability family: moderate Veblen effects, materialistic trend rho.
_TREND = {"alpha": 0.9, "beta": 10.0, "sigma": 0.75, "gamma": 1.5, "w": 1.0, "c_ref": 1.0, "v": 0.1}
_TREND_BASIN = {"e_min": 0.0, "e_max": 1.0, "pi_min": 0.0, "pi_max": 1.0, "resolution": 400}

PRESETS: dict[str, dict[str, Any]] = {
    "fig4a": {
        "description": "v sweep, alpha=0.75, beta=100",
        "params": {**_STATUS, "alpha": 0.75, "beta": 100.0},
        "sweep": _STATUS_SWEEP,
    },
    "fig4b": {
        "description": "v sweep, alpha=0.75, beta=1000",
        "params": {**_STATUS, "alpha": 0.75, "beta": 1000.0},
        "sweep": _STATUS_SWEEP,
    },
    "fig5": {
        "description": "v sweep, alpha=0.49, beta=100",
        "params": {**_STATUS, "alpha": 0.49, "beta": 100.0},
        "sweep": _STATUS_SWEEP,
    },
    "fig5b": {
        "description": "v sweep, alpha=0.5, beta=100",
        "params": {**_STATUS, "alpha": 0.5, "beta": 100.0},
        "sweep": _STATUS_SWEEP,
    },
    "fig6": {
        "description": "alpha sweep, beta=10, v=1 (strong Veblen effects throughout)",
        "params": {**_STATUS, "alpha": 0.5, "beta": 10.0, "v": 1.0},
        "sweep": {"param": "alpha", "start": 0.05, "stop": 0.95},
        "isoclines": {"e_min": -1.0, "e_max": 0.5},
    },
    "fig7a": {
        "description": "unique steady state without materialistic trend (rho=0)",
        "params": {**_TREND, "rho": 0.0},
        "isoclines": {"e_min": -0.2, "e_max": 1.0},
    },
    "fig7b": {
        "description": "three steady states and their basins (rho=2.6)",
        "params": {**_TREND, "rho": 2.6},
        "simulate": {"initial_e": 0.6, "initial_pi": 0.9},
        "basin": _TREND_BASIN,
        "isoclines": {"e_min": -0.2, "e_max": 1.0},
    },
    "fig8a": {
        "description": "basins with low preference inertia (alpha=0.5, rho=2.6)",
        "params": {**_TREND, "alpha": 0.5, "rho": 2.6},
        "basin": _TREND_BASIN,
    },
    "fig8b": {
        "description": "basins with higher preference inertia (alpha=0.75, rho=2.6)",
        "params": {**_TREND, "alpha": 0.75, "rho": 2.6},
        "basin": _TREND_BASIN,
    },
}


def preset_names() -> list[str]:
    """Names of all presets, sorted."""
    return sorted(PRESETS)


def load_preset(name: str) -> dict[str, Any]:
    """Return a fresh copy of a preset's config data, without its description."""
    try:
        preset = PRESETS[name]
    except KeyError:
        raise ConfigError(
            f"Unknown preset {name!r}; choose from {', '.join(preset_names())}"
        ) from None
    data = {key: deepcopy(value) for key, value in preset.items() if key != "description"}
    data["preset"] = name
    return data
