"""Structural model: household choices, preference updating and the reduced map."""

from veblen_dyn.model.core import (
    EXP_CLAMP,
    broken_windows_prob,
    broken_windows_prob_array,
    household_choice,
    map_kernel,
    overconsumption,
    steady_state_residual,
    step_map,
    step_map_array,
    step_map_via_foc,
    tax_budget_gap,
    utility,
)

__all__ = [
    "EXP_CLAMP",
    "broken_windows_prob",
    "broken_windows_prob_array",
    "household_choice",
    "map_kernel",
    "overconsumption",
    "steady_state_residual",
    "step_map",
    "step_map_array",
    "step_map_via_foc",
    "tax_budget_gap",
    "utility",
]
