"""Steady states: existence regime, root search, count profiles and isoclines."""

import logging
from typing import Callable, Sequence

import numpy as np
from scipy import optimize

from veblen_dyn.domain import (
    Equilibrium,
    EquilibriumLabel,
    EquilibriumSearchError,
    IsoclineSet,
    ModelParams,
    Regime,
    VeblenRegime,
)
from veblen_dyn.model import broken_windows_prob, broken_windows_prob_array
from veblen_dyn.utils.parallel import ordered_map

logger = logging.getLogger(__name__)

SCAN_NODES = 10_000
PI_LOWER = 1e-15
PI_UPPER = 1.0 - 1e-15
DEDUP_TOL = 1e-6
REGIME_TOL = 1e-14
_RTOL = 4 * np.finfo(float).eps


def classify_regime(params: ModelParams) -> VeblenRegime:
    """Compare v*c_ref/w against sigma/(sigma+gamma)."""
    threshold = params.sigma / (params.sigma + params.gamma)
    intensity = params.v * params.c_ref / params.w

    if abs(intensity - threshold) <= REGIME_TOL:
        regime = Regime.THRESHOLD
    elif intensity > threshold:
        regime = Regime.STRONG
    else:
        regime = Regime.WEAK

    return VeblenRegime(regime=regime, threshold_value=threshold, intensity=intensity)


def fixed_point_gap(params: ModelParams) -> Callable[[float], float]:
    """Return g(pi) = pi - p(K*pi), whose roots are the steady-state preferences."""
    k = params.bracket

    def g(pi: float) -> float:
        return pi - broken_windows_prob(k * pi, params)

    return g


def _bisect_root(g: Callable[[float], float], a: float, b: float) -> float:
    ga, gb = g(a), g(b)
    if ga == 0.0:
        return a
    if gb == 0.0:
        return b
    if ga * gb > 0.0:
        # scan and scalar evaluation disagree in the last ulp; the root is a node
        return a if abs(ga) <= abs(gb) else b
    return float(optimize.bisect(g, a, b, xtol=1e-15, rtol=_RTOL, maxiter=200))


def _residual(e_bar: float, pi_bar: float, params: ModelParams) -> float:
    return max(
        abs(e_bar - params.bracket * pi_bar),
        abs(pi_bar - broken_windows_prob(e_bar, params)),
    )


def _labels(count: int) -> list[EquilibriumLabel]:
    if count == 1:
        return [EquilibriumLabel.UNIQUE]
    if count == 2:
        return [EquilibriumLabel.LOWER, EquilibriumLabel.UPPER]
    return [EquilibriumLabel.LOWER, EquilibriumLabel.MIDDLE, EquilibriumLabel.UPPER][:count]


def find_equilibria(params: ModelParams, nodes: int = SCAN_NODES) -> list[Equilibrium]:
    """All steady states, sorted by pi_bar.

    The scalar condition g(pi) = 0 is scanned for sign changes on a uniform
    grid over (0, 1) and every bracket is refined by bisection.
    """
    k = params.bracket
    grid = np.linspace(PI_LOWER, PI_UPPER, nodes)
    values = grid - broken_windows_prob_array(k * grid, params)
    g = fixed_point_gap(params)

    roots: list[float] = []
    # g(0) < 0 < g(1) analytically; a positive (negative) end value means the
    # root sits inside the clipped margin.
    if values[0] > 0.0:
        roots.append(PI_LOWER)
    roots.extend(float(grid[i]) for i in np.flatnonzero(values[:-1] == 0.0))
    for i in np.flatnonzero(values[:-1] * values[1:] < 0.0):
        roots.append(_bisect_root(g, float(grid[i]), float(grid[i + 1])))
    if values[-1] <= 0.0:
        roots.append(PI_UPPER)

    if not roots:
        raise EquilibriumSearchError(f"No steady state found for {params!r}")

    roots.sort()
    merged: list[tuple[float, bool]] = []
    for root in roots:
        if merged and root - merged[-1][0] <= DEDUP_TOL:
            logger.debug("Tangent roots merged near pi=%.10f", root)
            merged[-1] = (merged[-1][0], True)
        else:
            merged.append((root, False))

    equilibria = [
        Equilibrium(
            e_bar=k * pi_bar,
            pi_bar=pi_bar,
            residual=_residual(k * pi_bar, pi_bar, params),
            label=label,
            tangent=tangent,
        )
        for (pi_bar, tangent), label in zip(merged, _labels(len(merged)))
    ]
    logger.debug("Found %d steady state(s)", len(equilibria))
    return equilibria


def equilibrium_count_profile(
    params: ModelParams, rho_grid: Sequence[float], threads: int = 1
) -> list[tuple[float, int]]:
    """Number of steady states at each value of the materialistic trend."""

    def count(rho: float) -> tuple[float, int]:
        return float(rho), len(find_equilibria(params.with_value("rho", rho)))

    return ordered_map(count, list(rho_grid), threads)


def refine_transition(
    predicate: Callable[[float], bool], lo: float, hi: float, tol: float = 1e-8
) -> float:
    """Bisect on a parameter until ``predicate`` flips within ``tol``.

    ``predicate(lo)`` and ``predicate(hi)`` must differ.
    """
    left = predicate(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if predicate(mid) == left:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def fold_points(
    params: ModelParams, rho_range: tuple[float, float], steps: int = 400, threads: int = 1
) -> list[float]:
    """Values of rho at which the number of steady states changes."""
    grid = np.linspace(rho_range[0], rho_range[1], steps)
    profile = equilibrium_count_profile(params, grid, threads)

    def count(rho: float) -> int:
        return len(find_equilibria(params.with_value("rho", rho)))

    points = []
    for (rho_a, n_a), (rho_b, n_b) in zip(profile, profile[1:]):
        if n_a != n_b:
            points.append(refine_transition(lambda r, n=n_a: count(r) == n, rho_a, rho_b))
    return points


def isocline_points(params: ModelParams, e_grid: Sequence[float]) -> IsoclineSet:
    """Sample the linear isocline pi = e/K and the logistic isocline pi = p(e)."""
    e_values = np.asarray(e_grid, dtype=float)
    k = params.bracket
    logistic = broken_windows_prob_array(e_values, params)

    linear: list[tuple[float, float]] = []
    vertical = k == 0.0
    if not vertical:
        linear = [(float(e), float(e / k)) for e in e_values]

    return IsoclineSet(
        linear=linear,
        logistic=[(float(e), float(p)) for e, p in zip(e_values, logistic)],
        vertical=vertical,
    )
