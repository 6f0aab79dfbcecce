"""Domain models for veblen-dyn."""

from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator


class SweepParam(str, Enum):
    """Structural constant that a parameter sweep may vary."""

    ALPHA = "alpha"
    BETA = "beta"
    RHO = "rho"
    V = "v"
    C_REF = "c_ref"
    SIGMA = "sigma"
    GAMMA = "gamma"
    W = "w"


class Regime(str, Enum):
    """Strength of the Veblen channel relative to conservation effectiveness."""

    STRONG = "strong"
    THRESHOLD = "threshold"
    WEAK = "weak"


class EquilibriumLabel(str, Enum):
    """Ordinal tag of a steady state among the coexisting ones."""

    UNIQUE = "unique"
    LOWER = "lower"
    MIDDLE = "middle"
    UPPER = "upper"


class Verdict(str, Enum):
    """Outcome of the local stability test at a steady state."""

    STABLE = "stable"
    FOLD_UNSTABLE = "fold-unstable"
    FLIP_UNSTABLE = "flip-unstable"
    NS_UNSTABLE = "ns-unstable"
    UNSTABLE_MULTIPLE = "unstable-multiple"


class BifurcationType(str, Enum):
    """Kind of boundary crossing found along a parameter sweep."""

    FOLD = "Fold"
    FLIP = "Flip"
    NS = "NS"
    PITCHFORK = "Pitchfork"


class SweepMode(str, Enum):
    """How the initial condition is chosen at each sweep grid value."""

    FIXED_IC = "fixed-ic"
    CONTINUATION = "continuation"


class ModelParams(BaseModel):
    """Structural constants of the map.

    ``rho`` is the materialistic trend, ``c_ref`` the reference-group
    consumption and ``v`` the weight households put on it. ``tau`` is the
    consumption tax rate, which only enters the household first-order
    conditions.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    alpha: float = Field(gt=0.0, lt=1.0)
    beta: float = Field(gt=0.0)
    rho: float = Field(ge=0.0)
    sigma: float = Field(gt=0.0)
    gamma: float = Field(gt=0.0)
    w: float = Field(gt=0.0)
    c_ref: float = Field(ge=0.0)
    v: float = Field(ge=0.0)
    tau: float = Field(default=0.0, ge=0.0)

    @field_validator("*")
    @classmethod
    def finite(cls, value: float) -> float:
        """Reject NaN and infinite constants."""
        if not np.isfinite(value):
            raise ValueError(f"Parameter must be finite, got {value}")
        return value

    @property
    def bracket(self) -> float:
        """K = sigma*w - (sigma+gamma)*v*c_ref, the constant inside the e-equation."""
        return self.sigma * self.w - (self.sigma + self.gamma) * self.v * self.c_ref

    def with_value(self, name: str, value: float) -> "ModelParams":
        """Return a validated copy with one constant replaced."""
        key = "tau" if name == "tau" else SweepParam(name).value
        return ModelParams(**{**self.model_dump(), key: float(value)})


class State(BaseModel):
    """One generation's point (e, pi) of the map."""

    model_config = ConfigDict(frozen=True)

    e: float
    pi: float

    def as_tuple(self) -> tuple[float, float]:
        """Return (e, pi)."""
        return self.e, self.pi


class HouseholdChoice(BaseModel):
    """Optimal consumption and conservation investment of the young."""

    model_config = ConfigDict(frozen=True)

    c: float
    m: float
    c_eff: float
    overconsumption: float


class Equilibrium(BaseModel):
    """A steady state of the map."""

    model_config = ConfigDict(frozen=True)

    e_bar: float
    pi_bar: float
    residual: float
    label: EquilibriumLabel = EquilibriumLabel.UNIQUE
    tangent: bool = False

    def as_state(self) -> State:
        """Return the steady state as a map state."""
        return State(e=self.e_bar, pi=self.pi_bar)


class VeblenRegime(BaseModel):
    """Which side of the existence threshold the parameters lie on."""

    model_config = ConfigDict(frozen=True)

    regime: Regime
    threshold_value: float
    intensity: float


class IsoclineSet(BaseModel):
    """Sampled steady-state isoclines for plotting."""

    linear: list[tuple[float, float]] = Field(default_factory=list)
    logistic: list[tuple[float, float]] = Field(default_factory=list)
    vertical: bool = False


class Jacobian(BaseModel):
    """Entries of the 2x2 Jacobian of the map."""

    model_config = ConfigDict(frozen=True)

    j11: float
    j12: float
    j21: float
    j22: float

    @property
    def trace(self) -> float:
        return self.j11 + self.j22

    @property
    def det(self) -> float:
        return self.j11 * self.j22 - self.j12 * self.j21

    def as_array(self) -> np.ndarray:
        """Return the matrix as a numpy array."""
        return np.array([[self.j11, self.j12], [self.j21, self.j22]])


class StabilityReport(BaseModel):
    """Local stability of a steady state."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    jacobian: Jacobian
    trace: float
    det: float
    eta: float
    cond_fold: float
    cond_flip: float
    cond_ns: float
    eigenvalues: tuple[complex, complex]
    verdict: Verdict

    @property
    def spectral_radius(self) -> float:
        return max(abs(lam) for lam in self.eigenvalues)

    @property
    def margins(self) -> dict[str, float]:
        """Condition margins keyed by the bifurcation their sign change signals."""
        return {"fold": self.cond_fold, "flip": self.cond_flip, "ns": self.cond_ns}


class Crossing(BaseModel):
    """A bifurcation located along a one-parameter sweep."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    param_value: float
    type: BifurcationType
    branch: Optional[int] = None
    pi_bar: Optional[float] = None
    eigenvalues: Optional[tuple[complex, complex]] = None
    refined: bool = True


class Orbit(BaseModel):
    """Recorded stretch of a trajectory after the transient."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    initial: State
    params: ModelParams
    e: np.ndarray
    pi: np.ndarray
    final: State
    transient_discarded: int

    @property
    def points(self) -> list[State]:
        return [State(e=float(e), pi=float(p)) for e, p in zip(self.e, self.pi)]

    def samples(self) -> np.ndarray:
        """Return the recorded points as an (n, 2) array of (e, pi)."""
        return np.column_stack([self.e, self.pi])


class SweepResult(BaseModel):
    """Attractor samples recorded at every value of a parameter grid."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    sweep_param: SweepParam
    values: np.ndarray
    samples: np.ndarray  # shape (steps, record, 2)
    mode: SweepMode

    def samples_at(self, index: int) -> np.ndarray:
        return self.samples[index]


class BasinGrid(BaseModel):
    """Raster of initial conditions labelled by the attractor they reach.

    ``labels[j, i]`` belongs to the cell whose centre has the i-th e value and
    the j-th pi value, both counted from the lower bound; ``-1`` marks cells
    that did not converge.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    params: ModelParams
    e_range: tuple[float, float]
    pi_range: tuple[float, float]
    resolution: int
    capture_radius: float
    max_iter: int
    attractors: list[Equilibrium]
    labels: np.ndarray
    iterations: np.ndarray

    @property
    def trivial(self) -> bool:
        """True when fewer than two attractors compete for the rectangle."""
        return len(self.attractors) < 2

    def cell_centres(self) -> tuple[np.ndarray, np.ndarray]:
        """Return the e and pi coordinates of the cell centres."""
        return (
            grid_centres(self.e_range, self.resolution),
            grid_centres(self.pi_range, self.resolution),
        )


def grid_centres(bounds: tuple[float, float], resolution: int) -> np.ndarray:
    """Centres of ``resolution`` equal cells covering ``bounds``."""
    lo, hi = bounds
    width = (hi - lo) / resolution
    return lo + (np.arange(resolution) + 0.5) * width


UNCONVERGED = -1


class PeriodTwoOrbit(BaseModel):
    """A solution of M(M(x)) = x found from a seed."""

    model_config = ConfigDict(frozen=True)

    points: tuple[State, State]
    residual: float
    converged: bool
    collapsed: bool
