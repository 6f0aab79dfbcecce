"""Orbit simulation, orbit diagrams and attractor diagnostics."""

import logging
import math

import numpy as np
from scipy import optimize

from veblen_dyn.analysis import jacobian_entries
from veblen_dyn.domain import (
    ModelParams,
    Orbit,
    OrbitDivergenceError,
    PeriodTwoOrbit,
    State,
    SweepMode,
    SweepParam,
    SweepResult,
)
from veblen_dyn.model import map_kernel
from veblen_dyn.utils.parallel import ordered_map

logger = logging.getLogger(__name__)

DEFAULT_TRANSIENT = 2000
DEFAULT_RECORD = 500
DEFAULT_STEPS = 400
DEFAULT_INITIAL = State(e=0.1, pi=0.5)
MIN_HORIZON = 1000
COLLAPSE_TOL = 1e-8


def simulate(initial: State, params: ModelParams, transient: int, record: int) -> Orbit:
    """Iterate the map ``transient + record`` times and keep the last ``record`` states.

    Raises:
        OrbitDivergenceError: when an iterate stops being finite or leaves pi > -1.
    """
    if transient < 0 or record < 0:
        raise ValueError(f"transient and record must be non-negative, got {transient}, {record}")
    if not initial.pi > -1.0:
        raise OrbitDivergenceError(0, f"initial pi={initial.pi} is outside pi > -1")

    step = map_kernel(params)
    e, pi = initial.e, initial.pi
    e_rec = np.empty(record)
    pi_rec = np.empty(record)

    total = transient + record
    for t in range(total):
        try:
            e, pi = step(e, pi)
        except (OverflowError, ZeroDivisionError) as exc:
            raise OrbitDivergenceError(t + 1, str(exc)) from exc
        if not (math.isfinite(e) and math.isfinite(pi) and pi > -1.0):
            raise OrbitDivergenceError(t + 1, f"iterate ({e}, {pi}) left the domain")
        k = t - transient
        if k >= 0:
            e_rec[k] = e
            pi_rec[k] = pi

    return Orbit(
        initial=initial,
        params=params,
        e=e_rec,
        pi=pi_rec,
        final=State(e=e, pi=pi),
        transient_discarded=transient,
    )


def orbit_diagram(
    params: ModelParams,
    sweep_param: SweepParam | str,
    value_range: tuple[float, float],
    steps: int = DEFAULT_STEPS,
    mode: SweepMode | str = SweepMode.CONTINUATION,
    transient: int = DEFAULT_TRANSIENT,
    record: int = DEFAULT_RECORD,
    initial: State = DEFAULT_INITIAL,
    threads: int = 1,
) -> SweepResult:
    """Record attractor samples at every value of a parameter grid.

    In continuation mode each grid value starts from the final state of the
    previous one; in fixed-ic mode every value restarts from ``initial`` and
    the values are simulated concurrently.
    """
    if steps < 2:
        raise ValueError(f"A sweep needs at least 2 steps, got {steps}")
    name = SweepParam(sweep_param)
    mode = SweepMode(mode)
    values = np.linspace(value_range[0], value_range[1], steps)

    def run(value: float, start: State) -> Orbit:
        return simulate(start, params.with_value(name.value, float(value)), transient, record)

    if mode is SweepMode.FIXED_IC:
        orbits = ordered_map(lambda value: run(value, initial), values, threads)
    else:
        orbits = []
        start = initial
        for value in values:
            orbit = run(value, start)
            orbits.append(orbit)
            start = orbit.final

    samples = np.stack([orbit.samples() for orbit in orbits]) if record else np.empty((steps, 0, 2))
    logger.debug("Orbit diagram over %s: %d values, mode %s", name.value, steps, mode.value)
    return SweepResult(sweep_param=name, values=values, samples=samples, mode=mode)


def lyapunov_largest(
    initial: State, params: ModelParams, transient: int = DEFAULT_TRANSIENT, horizon: int = 5000
) -> float:
    """Largest Lyapunov exponent per step along the orbit from ``initial``.

    A tangent vector is pushed through the Jacobian at each iterate and
    renormalised; the exponent is the mean log growth.
    """
    if horizon < MIN_HORIZON:
        raise ValueError(f"horizon must be at least {MIN_HORIZON}, got {horizon}")

    state = simulate(initial, params, transient, 0).final
    step = map_kernel(params)
    e, pi = state.e, state.pi
    u1, u2 = 1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0)

    total = 0.0
    for t in range(horizon):
        j11, j12, j21, j22 = jacobian_entries(e, pi, params)
        u1, u2 = j11 * u1 + j12 * u2, j21 * u1 + j22 * u2
        norm = math.hypot(u1, u2)
        if norm == 0.0:
            return -math.inf
        total += math.log(norm)
        u1, u2 = u1 / norm, u2 / norm

        e, pi = step(e, pi)
        if not (math.isfinite(e) and math.isfinite(pi) and pi > -1.0):
            raise OrbitDivergenceError(transient + t + 1, f"iterate ({e}, {pi}) left the domain")

    return total / horizon


def period_two_orbit(
    params: ModelParams, seed: State, tol: float = 1e-12
) -> PeriodTwoOrbit:
    """Solve M(M(x)) = x from ``seed``.

    ``collapsed`` is set when the solution is a fixed point of the map
    rather than a genuine two-cycle.
    """
    step = map_kernel(params)

    def twice(x: np.ndarray) -> tuple[float, float]:
        return step(*step(float(x[0]), float(x[1])))

    def gap(x: np.ndarray) -> np.ndarray:
        if not (np.all(np.isfinite(x)) and x[1] > -1.0):
            return np.full(2, 1e6)
        return np.asarray(twice(x)) - x

    solution = optimize.root(gap, np.array(seed.as_tuple()), method="hybr", tol=tol)
    x = solution.x
    first = State(e=float(x[0]), pi=float(x[1]))
    e_two, pi_two = step(first.e, first.pi)
    second = State(e=e_two, pi=pi_two)
    residual = float(np.max(np.abs(gap(x))))
    distance = max(abs(second.e - first.e), abs(second.pi - first.pi))

    if not solution.success:
        logger.debug("Period-two solve did not converge: %s", solution.message)
    return PeriodTwoOrbit(
        points=(first, second),
        residual=residual,
        converged=bool(solution.success),
        collapsed=distance <= COLLAPSE_TOL,
    )


def attractor_diameter(samples: np.ndarray) -> float:
    """Largest coordinate range of the samples (max-norm spread)."""
    samples = np.asarray(samples, dtype=float).reshape(-1, 2)
    if samples.size == 0:
        return 0.0
    return float(np.max(np.ptp(samples, axis=0)))


def radial_spread(samples: np.ndarray, centre: State, bins: int = 36) -> float:
    """Minimum over angle bins of the mean distance of samples from ``centre``.

    Positive only when the samples wind all the way around the centre.
    Empty bins count as zero.
    """
    samples = np.asarray(samples, dtype=float).reshape(-1, 2)
    if samples.size == 0 or bins < 1:
        return 0.0
    de = samples[:, 0] - centre.e
    dp = samples[:, 1] - centre.pi
    angle = np.arctan2(dp, de)
    radius = np.hypot(de, dp)

    index = np.minimum(((angle + np.pi) / (2.0 * np.pi) * bins).astype(int), bins - 1)
    counts = np.bincount(index, minlength=bins)
    sums = np.bincount(index, weights=radius, minlength=bins)
    means = np.divide(sums, counts, out=np.zeros(bins), where=counts > 0)
    return float(means.min())
