"""Household problem, preference updating and the reduced two-dimensional map."""

import math
from typing import Callable

import numpy as np

from veblen_dyn.domain import DomainError, HouseholdChoice, ModelParams, State

# Exponent bound for the logistic; exp(700) is still finite in double precision.
EXP_CLAMP = 700.0

MapKernel = Callable[[float, float], tuple[float, float]]


def _check_pi(pi: float) -> None:
    if not pi > -1.0:
        raise DomainError(f"Green preference weight must exceed -1, got {pi}")


def broken_windows_prob(e: float, params: ModelParams) -> float:
    """Probability that an agent values the environment at quality ``e``."""
    z = min(max(params.rho - params.beta * e, -EXP_CLAMP), EXP_CLAMP)
    return 1.0 / (1.0 + math.exp(z))


def broken_windows_prob_array(e: np.ndarray, params: ModelParams) -> np.ndarray:
    """Vectorised broken_windows_prob."""
    z = np.clip(params.rho - params.beta * np.asarray(e, dtype=float), -EXP_CLAMP, EXP_CLAMP)
    return 1.0 / (1.0 + np.exp(z))


def overconsumption(pi: float, params: ModelParams) -> float:
    """Veblen term (pi/(1+pi))*v*c_ref of optimal consumption."""
    _check_pi(pi)
    return pi / (1.0 + pi) * params.v * params.c_ref


def household_choice(state: State, params: ModelParams) -> HouseholdChoice:
    """Closed-form first-order conditions of the young household.

    With ``tau > 0`` the tax-adjusted conditions are used: the denominator
    becomes gamma + sigma*(1+tau) and the e-term of conservation investment is
    scaled by (1+tau).
    """
    e, pi = state.e, state.pi
    _check_pi(pi)
    tax = 1.0 + params.tau
    denom = params.gamma + params.sigma * tax
    if denom <= 0.0:
        raise DomainError(f"Non-positive FOC denominator {denom}")

    share = pi / (1.0 + pi)
    scale = (1.0 + pi) * denom
    veblen = params.v * params.c_ref
    c = (params.sigma * params.w + e) / scale + share * veblen
    m = (params.gamma * params.w - tax * e) / scale + share * (params.w - veblen)
    return HouseholdChoice(c=c, m=m, c_eff=c - veblen, overconsumption=share * veblen)


def tax_budget_gap(state: State, params: ModelParams) -> float:
    """(1+tau)*c + m - w for the tax-adjusted first-order conditions.

    Zero without the tax; otherwise tau*(pi/(1+pi))*v*c_ref.
    """
    choice = household_choice(state, params)
    return (1.0 + params.tau) * choice.c + choice.m - params.w


def utility(c: float, e_next: float, pi: float, params: ModelParams) -> float:
    """ln(c - v*c_ref) + pi*ln(e_next) on the interior of its domain."""
    c_eff = c - params.v * params.c_ref
    if c_eff <= 0.0:
        raise DomainError(f"Effective consumption must be positive, got {c_eff}")
    if e_next <= 0.0:
        raise DomainError(f"Next-period environmental quality must be positive, got {e_next}")
    return math.log(c_eff) + pi * math.log(e_next)


def map_kernel(params: ModelParams) -> MapKernel:
    """Return an unchecked scalar step of the map with the constants bound.

    Orbit loops use this directly; ``step_map`` adds the domain check.
    """
    k = params.bracket
    alpha = params.alpha
    weight = 1.0 - params.alpha
    rho, beta = params.rho, params.beta
    exp = math.exp

    def step(e: float, pi: float) -> tuple[float, float]:
        z = min(max(rho - beta * e, -EXP_CLAMP), EXP_CLAMP)
        return pi / (1.0 + pi) * (e + k), alpha * pi + weight / (1.0 + exp(z))

    return step


def step_map(state: State, params: ModelParams) -> State:
    """One generation of the reduced map.

    The tax rate does not appear: the tax-adjusted household choices reduce
    to the same law of motion (see step_map_via_foc).
    """
    _check_pi(state.pi)
    e_next, pi_next = map_kernel(params)(state.e, state.pi)
    return State(e=e_next, pi=pi_next)


def step_map_via_foc(state: State, params: ModelParams) -> State:
    """One generation computed from the household choices and e' = e - gamma*c + sigma*m."""
    choice = household_choice(state, params)
    e_next = state.e - params.gamma * choice.c + params.sigma * choice.m
    pi_next = params.alpha * state.pi + (1.0 - params.alpha) * broken_windows_prob(state.e, params)
    return State(e=e_next, pi=pi_next)


def step_map_array(
    e: np.ndarray, pi: np.ndarray, params: ModelParams
) -> tuple[np.ndarray, np.ndarray]:
    """Apply the map elementwise to arrays of states."""
    e = np.asarray(e, dtype=float)
    pi = np.asarray(pi, dtype=float)
    if np.any(~(pi > -1.0)):
        raise DomainError("Green preference weights must exceed -1")
    e_next = pi / (1.0 + pi) * (e + params.bracket)
    pi_next = params.alpha * pi + (1.0 - params.alpha) * broken_windows_prob_array(e, params)
    return e_next, pi_next


def steady_state_residual(state: State, params: ModelParams) -> float:
    """Max-norm distance between a state and its image."""
    image = step_map(state, params)
    return max(abs(image.e - state.e), abs(image.pi - state.pi))
