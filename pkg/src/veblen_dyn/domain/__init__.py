"""Domain layer package."""

from veblen_dyn.domain.errors import (
    ConfigError,
    DomainError,
    EquilibriumSearchError,
    OrbitDivergenceError,
)
from veblen_dyn.domain.models import (
    UNCONVERGED,
    BasinGrid,
    BifurcationType,
    Crossing,
    Equilibrium,
    EquilibriumLabel,
    HouseholdChoice,
    IsoclineSet,
    Jacobian,
    ModelParams,
    Orbit,
    PeriodTwoOrbit,
    Regime,
    StabilityReport,
    State,
    SweepMode,
    SweepParam,
    SweepResult,
    Verdict,
    VeblenRegime,
)

__all__ = [
    "UNCONVERGED",
    "BasinGrid",
    "BifurcationType",
    "ConfigError",
    "Crossing",
    "DomainError",
    "Equilibrium",
    "EquilibriumLabel",
    "EquilibriumSearchError",
    "HouseholdChoice",
    "IsoclineSet",
    "Jacobian",
    "ModelParams",
    "Orbit",
    "OrbitDivergenceError",
    "PeriodTwoOrbit",
    "Regime",
    "StabilityReport",
    "State",
    "SweepMode",
    "SweepParam",
    "SweepResult",
    "Verdict",
    "VeblenRegime",
]
