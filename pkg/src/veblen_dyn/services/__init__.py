"""Experiment services that orchestrate the library and return tables."""

import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd

from veblen_dyn.analysis import (
    classify_equilibrium,
    detect_bifurcation,
    find_equilibria,
    isocline_points,
)
from veblen_dyn.domain import (
    UNCONVERGED,
    BasinGrid,
    Crossing,
    State,
    SweepResult,
)
from veblen_dyn.dynamics import (
    basin_area_fractions,
    compute_basins,
    connected_components,
    orbit_diagram,
    simulate,
)
from veblen_dyn.model import household_choice, step_map, step_map_via_foc
from veblen_dyn.utils import ExperimentConfig

logger = logging.getLogger(__name__)

ORBIT_COLUMNS = ["t", "e", "pi"]
CHOICE_COLUMNS = ["c", "m", "c_eff", "overconsumption"]
EQUILIBRIUM_COLUMNS = ["e_bar", "pi_bar", "eta", "trace", "det", "verdict", "label"]
SWEEP_COLUMNS = ["param_value", "e", "pi"]
CROSSING_COLUMNS = ["param_value", "type"]
SUMMARY_COLUMNS = ["attractor", "label", "e_bar", "pi_bar", "fraction", "components"]
ISOCLINE_COLUMNS = ["curve", "e", "pi", "vertical"]


class SimulationService:
    """Service for single orbits."""

    def __init__(self, config: ExperimentConfig):
        """Initialize simulation service."""
        self.config = config

    def run(self) -> pd.DataFrame:
        """Simulate from the configured initial state and tabulate the recorded part."""
        settings = self.config.simulate
        params = self.config.params
        orbit = simulate(settings.initial, params, settings.transient, settings.record)

        frame = pd.DataFrame(
            {
                "t": np.arange(settings.record) + settings.transient + 1,
                "e": orbit.e,
                "pi": orbit.pi,
            },
            columns=ORBIT_COLUMNS,
        )
        if settings.choices:
            choices = [household_choice(state, params) for state in orbit.points]
            for column in CHOICE_COLUMNS:
                frame[column] = [getattr(choice, column) for choice in choices]
        return frame


class EquilibriumService:
    """Service for steady states and their local stability."""

    def __init__(self, config: ExperimentConfig):
        """Initialize equilibrium service."""
        self.config = config

    def table(self) -> pd.DataFrame:
        """One row per steady state, sorted by pi_bar."""
        params = self.config.params
        rows = []
        for eq in find_equilibria(params):
            report = classify_equilibrium(eq, params)
            rows.append(
                {
                    "e_bar": eq.e_bar,
                    "pi_bar": eq.pi_bar,
                    "eta": report.eta,
                    "trace": report.trace,
                    "det": report.det,
                    "verdict": report.verdict.value,
                    "label": eq.label.value,
                }
            )
        return pd.DataFrame(rows, columns=EQUILIBRIUM_COLUMNS)


class BifurcationService:
    """Service for orbit diagrams and bifurcation crossings along a sweep."""

    def __init__(self, config: ExperimentConfig, threads: int = 1):
        """Initialize bifurcation service."""
        self.config = config
        self.threads = threads

    def orbit_diagram(self) -> SweepResult:
        sweep = self.config.sweep
        return orbit_diagram(
            self.config.params,
            sweep.param,
            sweep.value_range,
            steps=sweep.steps,
            mode=sweep.mode,
            transient=sweep.transient,
            record=sweep.record,
            initial=sweep.initial,
            threads=self.threads,
        )

    def crossings(self) -> list[Crossing]:
        sweep = self.config.sweep
        return detect_bifurcation(
            self.config.params, sweep.param, sweep.value_range, sweep.steps, self.threads
        )

    @staticmethod
    def sweep_frame(result: SweepResult) -> pd.DataFrame:
        """Long table of samples, grid values ascending, time order within each value."""
        record = result.samples.shape[1]
        return pd.DataFrame(
            {
                "param_value": np.repeat(result.values, record),
                "e": result.samples[:, :, 0].ravel(),
                "pi": result.samples[:, :, 1].ravel(),
            },
            columns=SWEEP_COLUMNS,
        )

    @staticmethod
    def crossings_frame(crossings: list[Crossing]) -> pd.DataFrame:
        rows = [{"param_value": c.param_value, "type": c.type.value} for c in crossings]
        return pd.DataFrame(rows, columns=CROSSING_COLUMNS)


class BasinService:
    """Service for basins of attraction."""

    def __init__(self, config: ExperimentConfig, threads: int = 1):
        """Initialize basin service."""
        self.config = config
        self.threads = threads

    def compute(self) -> BasinGrid:
        basin = self.config.basin
        return compute_basins(
            self.config.params,
            e_range=(basin.e_min, basin.e_max),
            pi_range=(basin.pi_min, basin.pi_max),
            resolution=basin.resolution,
            max_iter=basin.max_iter,
            capture_radius=basin.capture_radius,
            threads=self.threads,
        )

    @staticmethod
    def header(grid: BasinGrid) -> str:
        """Comment line describing the label matrix layout."""
        return (
            f"e_min={grid.e_range[0]!r},e_max={grid.e_range[1]!r},"
            f"pi_min={grid.pi_range[0]!r},pi_max={grid.pi_range[1]!r},"
            f"resolution={grid.resolution},rows=pi ascending,columns=e ascending,"
            f"unconverged={UNCONVERGED}"
        )

    @staticmethod
    def summary(grid: BasinGrid) -> pd.DataFrame:
        """Area fraction and connected-component count per attractor, plus unconverged."""
        fractions = basin_area_fractions(grid)
        rows = [
            {
                "attractor": index,
                "label": eq.label.value,
                "e_bar": eq.e_bar,
                "pi_bar": eq.pi_bar,
                "fraction": fractions[index],
                "components": connected_components(grid, index),
            }
            for index, eq in enumerate(grid.attractors)
        ]
        rows.append(
            {
                "attractor": UNCONVERGED,
                "label": "unconverged",
                "e_bar": np.nan,
                "pi_bar": np.nan,
                "fraction": fractions[UNCONVERGED],
                "components": connected_components(grid, UNCONVERGED),
            }
        )
        return pd.DataFrame(rows, columns=SUMMARY_COLUMNS)


@dataclass
class TaxCheckReport:
    """Largest gap between the tax-adjusted and baseline laws of motion."""

    trials: int
    max_deviation: float
    worst_state: State
    worst_tau: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance


class TaxCheckService:
    """Service checking that a consumption tax leaves the dynamics unchanged."""

    def __init__(self, config: ExperimentConfig):
        """Initialize tax check service."""
        self.config = config

    def run(self) -> TaxCheckReport:
        """Compare step_map_via_foc under random taxes with step_map at random states."""
        settings = self.config.tax_check
        params = self.config.params
        rng = np.random.default_rng(settings.seed)
        states = rng.uniform(0.0, 1.0, size=(settings.trials, 2))
        taxes = rng.uniform(0.0, settings.tau_max, size=settings.trials)

        worst = (-1.0, State(e=float(states[0, 0]), pi=float(states[0, 1])), float(taxes[0]))
        for (e, pi), tau in zip(states, taxes):
            state = State(e=float(e), pi=float(pi))
            baseline = step_map(state, params)
            taxed = step_map_via_foc(state, params.with_value("tau", float(tau)))
            deviation = max(abs(taxed.e - baseline.e), abs(taxed.pi - baseline.pi))
            if deviation > worst[0]:
                worst = (deviation, state, float(tau))

        logger.debug("Tax check: max deviation %.3e over %d trials", worst[0], settings.trials)
        return TaxCheckReport(
            trials=settings.trials,
            max_deviation=worst[0],
            worst_state=worst[1],
            worst_tau=worst[2],
            tolerance=settings.tolerance,
        )


class IsoclineService:
    """Service sampling the steady-state isoclines."""

    def __init__(self, config: ExperimentConfig):
        """Initialize isocline service."""
        self.config = config

    def table(self) -> pd.DataFrame:
        """Isocline samples followed by the steady states where they meet.

        Curves are ``linear`` (pi = e/K), ``logistic`` (pi = p(e)) and
        ``equilibrium``, one row per steady state.

        When K = 0 the linear isocline is the vertical line e = 0, sampled
        over pi in [0, 1].
        """
        settings = self.config.isoclines
        e_grid = np.linspace(settings.e_min, settings.e_max, settings.points)
        isoclines = isocline_points(self.config.params, e_grid)

        linear = isoclines.linear
        if isoclines.vertical:
            linear = [(0.0, float(pi)) for pi in np.linspace(0.0, 1.0, settings.points)]

        rows = [("linear", e, pi, isoclines.vertical) for e, pi in linear]
        rows += [("logistic", e, pi, isoclines.vertical) for e, pi in isoclines.logistic]
        rows += [
            ("equilibrium", eq.e_bar, eq.pi_bar, isoclines.vertical)
            for eq in find_equilibria(self.config.params)
        ]
        return pd.DataFrame(rows, columns=ISOCLINE_COLUMNS)


__all__ = [
    "BasinService",
    "BifurcationService",
    "EquilibriumService",
    "IsoclineService",
    "SimulationService",
    "TaxCheckReport",
    "TaxCheckService",
]
