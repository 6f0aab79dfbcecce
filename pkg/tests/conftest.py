"""Shared fixtures."""

from typing import Callable

import numpy as np
import pytest

from veblen_dyn.domain import ModelParams

TREND = dict(alpha=0.9, beta=10.0, sigma=0.75, gamma=1.5, w=1.0, c_ref=1.0, v=0.1)
STATUS = dict(sigma=0.75, gamma=1.5, w=1.0, c_ref=3.0, rho=0.0)


@pytest.fixture
def three_state_params() -> ModelParams:
    """Three coexisting steady states (materialistic trend rho=2.6)."""
    return ModelParams(**TREND, rho=2.6)


@pytest.fixture
def unique_params() -> ModelParams:
    """Single stable steady state near pi=1 (rho=0)."""
    return ModelParams(**TREND, rho=0.0)


@pytest.fixture
def flat_params() -> ModelParams:
    """K = 0 exactly: sigma*w equals (sigma+gamma)*v*c_ref."""
    return ModelParams(alpha=0.5, beta=10.0, rho=1.0, sigma=0.5, gamma=1.5, w=1.0, c_ref=1.0, v=0.25)


@pytest.fixture
def strong_params() -> ModelParams:
    """Strong Veblen effects, K = -6."""
    return ModelParams(**STATUS, alpha=0.8, beta=10.0, v=1.0)


@pytest.fixture
def status_params() -> ModelParams:
    """Starting point of the v sweep with beta=1000."""
    return ModelParams(**STATUS, alpha=0.75, beta=1000.0, v=0.0)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def random_params(rng) -> Callable[..., ModelParams]:
    """Draw admissible constants from ``rng``; keyword arguments pin values."""

    def draw(**fixed: float) -> ModelParams:
        values = dict(
            alpha=rng.uniform(0.05, 0.95),
            beta=rng.uniform(1.0, 100.0),
            rho=rng.uniform(0.0, 5.0),
            sigma=rng.uniform(0.2, 2.0),
            gamma=rng.uniform(0.2, 2.0),
            w=rng.uniform(0.5, 2.0),
            c_ref=rng.uniform(0.0, 3.0),
            v=rng.uniform(0.0, 1.0),
        )
        return ModelParams(**{**values, **fixed})

    return draw
