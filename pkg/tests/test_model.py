"""Tests for the household problem and the reduced map."""

import math

import numpy as np
import pytest
from scipy import optimize

from veblen_dyn.domain import DomainError, State
from veblen_dyn.model import (
    broken_windows_prob,
    broken_windows_prob_array,
    household_choice,
    overconsumption,
    steady_state_residual,
    step_map,
    step_map_array,
    step_map_via_foc,
    tax_budget_gap,
    utility,
)


def test_broken_windows_prob_midpoint(three_state_params):
    """The probability is one half where beta*e equals rho."""
    e = three_state_params.rho / three_state_params.beta
    assert broken_windows_prob(e, three_state_params) == pytest.approx(0.5, abs=1e-15)


def test_broken_windows_prob_extremes_do_not_overflow(status_params):
    """Huge arguments saturate at 0 and 1 instead of overflowing."""
    assert broken_windows_prob(-1e6, status_params) == pytest.approx(0.0, abs=1e-300)
    assert broken_windows_prob(1e6, status_params) == 1.0
    values = broken_windows_prob_array(np.array([-1e6, 0.0, 1e6]), status_params)
    assert np.all(np.isfinite(values))


def test_broken_windows_prob_increasing(three_state_params):
    """Better environments make green preferences more likely."""
    e = np.linspace(-1.0, 1.0, 201)
    values = broken_windows_prob_array(e, three_state_params)
    assert np.all(np.diff(values) > 0.0)
    assert np.all((values > 0.0) & (values < 1.0))


def test_household_choice_budget_without_tax(random_params, rng):
    """c + m = w when there is no tax."""
    for _ in range(1000):
        params = random_params()
        state = State(e=rng.uniform(-1.0, 1.0), pi=rng.uniform(0.0, 1.0))
        choice = household_choice(state, params)
        scale = params.w + abs(choice.c) + abs(choice.m)
        assert abs(choice.c + choice.m - params.w) <= 1e-12 * scale
        assert choice.c_eff == pytest.approx(choice.c - params.v * params.c_ref, abs=1e-15)


def test_household_choice_budget_with_tax_and_no_status(random_params, rng):
    """(1+tau)*c + m = w under a tax once v*c_ref vanishes."""
    for _ in range(1000):
        params = random_params(v=0.0, tau=rng.uniform(0.0, 10.0))
        state = State(e=rng.uniform(-1.0, 1.0), pi=rng.uniform(0.0, 1.0))
        choice = household_choice(state, params)
        tax = 1.0 + params.tau
        scale = params.w + abs(tax * choice.c) + abs(choice.m)
        assert abs(tax * choice.c + choice.m - params.w) <= 1e-12 * scale


def test_household_choice_maximises_utility(three_state_params):
    """The closed-form consumption is the optimum of the taxed household problem."""
    params = three_state_params.with_value("tau", 0.3)
    state = State(e=0.5, pi=0.6)
    tax = 1.0 + params.tau
    veblen = params.v * params.c_ref

    def loss(c: float) -> float:
        m = params.w - tax * c
        e_next = state.e - params.gamma * c + params.sigma * m
        return -utility(c, e_next, state.pi, params)

    upper = (state.e + params.sigma * params.w) / (params.gamma + params.sigma * tax)
    best = optimize.minimize_scalar(
        loss, bounds=(veblen + 1e-9, upper - 1e-9), method="bounded", options={"xatol": 1e-12}
    )
    assert household_choice(state, params).c == pytest.approx(best.x, abs=1e-6)


def test_household_choice_matches_grid_search(random_params, rng):
    """Closed-form c lies within one cell of a 10^6-point argmax on 100 random problems."""
    n = 1_000_000
    solved = 0
    while solved < 100:
        params = random_params(tau=rng.uniform(0.0, 2.0))
        state = State(e=rng.uniform(0.0, 1.0), pi=rng.uniform(0.05, 1.0))
        denom = params.gamma + params.sigma * (1.0 + params.tau)
        budget = state.e + params.sigma * params.w
        low, high = params.v * params.c_ref, budget / denom
        if high - low <= 1e-3:
            continue

        cell = (high - low) / (n + 1)
        c = low + cell * np.arange(1, n + 1)
        values = np.log(c - low) + state.pi * np.log(budget - denom * c)
        best = int(np.argmax(values))

        choice = household_choice(state, params)
        assert abs(choice.c - c[best]) <= cell
        optimum = utility(choice.c, budget - denom * choice.c, state.pi, params)
        assert optimum >= values[best] - 1e-12
        solved += 1


def test_tax_budget_gap(three_state_params):
    """The tax-adjusted choices miss the budget by tau*(pi/(1+pi))*v*c_ref."""
    state = State(e=0.3, pi=0.4)
    assert tax_budget_gap(state, three_state_params) == pytest.approx(0.0, abs=1e-14)

    taxed = three_state_params.with_value("tau", 2.0)
    expected = 2.0 * 0.4 / 1.4 * 0.1
    assert tax_budget_gap(state, taxed) == pytest.approx(expected, rel=1e-12)

    no_status = taxed.with_value("v", 0.0)
    assert tax_budget_gap(state, no_status) == pytest.approx(0.0, abs=1e-14)


def test_overconsumption(strong_params):
    """Veblen term of consumption."""
    assert overconsumption(1.0, strong_params) == pytest.approx(1.5)
    assert overconsumption(0.0, strong_params) == 0.0
    with pytest.raises(DomainError):
        overconsumption(-1.0, strong_params)


def test_utility_domain(three_state_params):
    """Utility is only defined for positive effective consumption and environment."""
    assert utility(1.1, math.e, 2.0, three_state_params) == pytest.approx(2.0)
    with pytest.raises(DomainError):
        utility(0.1, 0.5, 0.5, three_state_params)
    with pytest.raises(DomainError):
        utility(0.5, 0.0, 0.5, three_state_params)


def test_step_map_matches_foc_route(random_params, rng):
    """Both routes agree on 10^4 random states and constants with taxes in [0, 10]."""
    worst = 0.0
    for _ in range(10_000):
        params = random_params(tau=rng.uniform(0.0, 10.0))
        state = State(e=rng.uniform(-1.0, 1.0), pi=rng.uniform(0.0, 1.0))
        direct = step_map(state, params)
        via_foc = step_map_via_foc(state, params)
        worst = max(worst, abs(via_foc.e - direct.e), abs(via_foc.pi - direct.pi))
    assert worst <= 1e-12


def test_step_map_keeps_pi_in_unit_interval(random_params, rng):
    """pi in [0, 1] maps into [0, 1] for any e."""
    for _ in range(200):
        params = random_params()
        e = rng.uniform(-10.0, 10.0, size=500)
        pi = rng.uniform(0.0, 1.0, size=500)
        _, pi_next = step_map_array(e, pi, params)
        assert np.all(pi_next >= 0.0)
        assert np.all(pi_next <= 1.0 + np.finfo(float).eps)


def test_e_response_is_a_contraction(random_params, rng):
    """de'/de equals pi/(1+pi), at most one half on [0, 1]."""
    h = 1e-6
    for _ in range(200):
        params = random_params()
        e = rng.uniform(-1.0, 1.0, size=50)
        pi = rng.uniform(0.0, 1.0, size=50)
        up, _ = step_map_array(e + h, pi, params)
        down, _ = step_map_array(e - h, pi, params)
        slope = (up - down) / (2.0 * h)
        np.testing.assert_allclose(slope, pi / (1.0 + pi), atol=1e-8)
        assert np.all(slope <= 0.5 + 1e-8)


def test_step_map_rejects_pi_at_minus_one(three_state_params):
    """The map is undefined for pi <= -1."""
    with pytest.raises(DomainError):
        step_map(State(e=0.2, pi=-1.0), three_state_params)
    with pytest.raises(DomainError):
        step_map_array(np.array([0.2, 0.3]), np.array([0.5, -1.5]), three_state_params)


def test_step_map_array_matches_scalar(strong_params, rng):
    """The vectorised map agrees with the scalar one elementwise."""
    points = rng.uniform(-1.0, 1.0, size=(100, 2))
    e_next, pi_next = step_map_array(points[:, 0], points[:, 1], strong_params)
    for (e, pi), e1, p1 in zip(points, e_next, pi_next):
        image = step_map(State(e=e, pi=pi), strong_params)
        assert e1 == pytest.approx(image.e, rel=1e-13, abs=1e-15)
        assert p1 == pytest.approx(image.pi, rel=1e-13, abs=1e-15)


def test_steady_state_residual_at_flat_equilibrium(flat_params):
    """With K = 0 the steady state is (0, 1/(1+exp(rho)))."""
    state = State(e=0.0, pi=1.0 / (1.0 + math.exp(flat_params.rho)))
    assert steady_state_residual(state, flat_params) <= 1e-15
    assert steady_state_residual(State(e=0.3, pi=0.3), flat_params) > 0.01
