"""Orbits, orbit diagrams and basins of attraction."""

from veblen_dyn.dynamics.basins import (
    basin_area_fractions,
    compute_basins,
    connected_components,
    label_initial_condition,
    stable_attractors,
)
from veblen_dyn.dynamics.orbits import (
    DEFAULT_INITIAL,
    attractor_diameter,
    lyapunov_largest,
    orbit_diagram,
    period_two_orbit,
    radial_spread,
    simulate,
)

__all__ = [
    "DEFAULT_INITIAL",
    "attractor_diameter",
    "basin_area_fractions",
    "compute_basins",
    "connected_components",
    "label_initial_condition",
    "lyapunov_largest",
    "orbit_diagram",
    "period_two_orbit",
    "radial_spread",
    "simulate",
    "stable_attractors",
]
