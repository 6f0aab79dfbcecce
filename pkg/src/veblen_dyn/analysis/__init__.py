"""Steady-state and local stability analysis."""

from veblen_dyn.analysis.equilibria import (
    classify_regime,
    equilibrium_count_profile,
    find_equilibria,
    fixed_point_gap,
    fold_points,
    isocline_points,
    refine_transition,
)
from veblen_dyn.analysis.stability import (
    classify_equilibrium,
    detect_bifurcation,
    eigen_summary,
    eigenvalues,
    eta_at,
    eta_closed_form,
    jacobian_at,
    jacobian_entries,
    rearranged_conditions,
)

__all__ = [
    "classify_equilibrium",
    "classify_regime",
    "detect_bifurcation",
    "eigen_summary",
    "eigenvalues",
    "equilibrium_count_profile",
    "eta_at",
    "eta_closed_form",
    "find_equilibria",
    "fixed_point_gap",
    "fold_points",
    "isocline_points",
    "jacobian_at",
    "jacobian_entries",
    "rearranged_conditions",
    "refine_transition",
]
