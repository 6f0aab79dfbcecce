"""Basins of attraction of the stable steady states over a rectangle of initial conditions."""

import logging
import math

import numpy as np
from scipy import ndimage

from veblen_dyn.analysis import classify_equilibrium, find_equilibria
from veblen_dyn.domain import (
    UNCONVERGED,
    BasinGrid,
    Equilibrium,
    ModelParams,
    State,
    Verdict,
)
from veblen_dyn.domain.models import grid_centres
from veblen_dyn.model import map_kernel, step_map_array
from veblen_dyn.utils.parallel import ordered_map

logger = logging.getLogger(__name__)

CAPTURE_RADIUS = 1e-6
MAX_ITER = 100_000
RESOLUTION = 400
# Rows per work unit. Fixed so the arithmetic never depends on the worker count.
BLOCK_ROWS = 8


def stable_attractors(params: ModelParams) -> list[Equilibrium]:
    """Steady states whose eigenvalues both lie inside the unit circle, by pi_bar."""
    return [
        eq
        for eq in find_equilibria(params)
        if classify_equilibrium(eq, params).verdict is Verdict.STABLE
    ]


def _iterate_block(
    e0: np.ndarray,
    pi0: np.ndarray,
    params: ModelParams,
    targets: np.ndarray,
    capture_radius: float,
    max_iter: int,
) -> tuple[np.ndarray, np.ndarray]:
    labels = np.full(e0.shape, UNCONVERGED, dtype=int)
    iterations = np.zeros(e0.shape, dtype=int)

    active = np.flatnonzero(pi0 > -1.0)
    e, pi = e0[active], pi0[active]

    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        for n in range(max_iter + 1):
            for index, (e_bar, pi_bar) in enumerate(targets):
                hit = np.maximum(np.abs(e - e_bar), np.abs(pi - pi_bar)) <= capture_radius
                if hit.any():
                    labels[active[hit]] = index
                    iterations[active[hit]] = n
                    keep = ~hit
                    active, e, pi = active[keep], e[keep], pi[keep]

            finite = np.isfinite(e) & np.isfinite(pi)
            if not finite.all():
                iterations[active[~finite]] = n
                active, e, pi = active[finite], e[finite], pi[finite]

            if active.size == 0 or n == max_iter:
                break
            e, pi = step_map_array(e, pi, params)

    iterations[active] = max_iter
    return labels, iterations


def compute_basins(
    params: ModelParams,
    e_range: tuple[float, float] = (0.0, 1.0),
    pi_range: tuple[float, float] = (0.0, 1.0),
    resolution: int = RESOLUTION,
    max_iter: int = MAX_ITER,
    capture_radius: float = CAPTURE_RADIUS,
    threads: int = 1,
) -> BasinGrid:
    """Label every cell centre of the rectangle by the stable steady state it reaches.

    Cells are iterated until they come within ``capture_radius`` (max-norm)
    of a stable steady state or ``max_iter`` steps have passed. Saddles and
    other unstable steady states are never targets. Cells with pi <= -1 are
    left unconverged.
    """
    if resolution < 1:
        raise ValueError(f"resolution must be at least 1, got {resolution}")
    if max_iter < 0:
        raise ValueError(f"max_iter must be non-negative, got {max_iter}")
    if not (e_range[0] < e_range[1] and pi_range[0] < pi_range[1]):
        raise ValueError(f"Empty rectangle e={e_range}, pi={pi_range}")

    attractors = stable_attractors(params)
    e_centres = grid_centres(e_range, resolution)
    pi_centres = grid_centres(pi_range, resolution)
    labels = np.full((resolution, resolution), UNCONVERGED, dtype=int)
    iterations = np.zeros((resolution, resolution), dtype=int)

    if not attractors:
        logger.warning("No stable steady state; every cell is left unconverged")
    else:
        if len(attractors) < 2:
            logger.info("Single stable steady state; the basin picture is trivial")
        targets = np.array([[eq.e_bar, eq.pi_bar] for eq in attractors])

        def run(start: int) -> tuple[int, np.ndarray, np.ndarray]:
            rows = pi_centres[start : start + BLOCK_ROWS]
            e_grid, pi_grid = np.meshgrid(e_centres, rows)
            block_labels, block_iters = _iterate_block(
                e_grid.ravel(), pi_grid.ravel(), params, targets, capture_radius, max_iter
            )
            return start, block_labels.reshape(e_grid.shape), block_iters.reshape(e_grid.shape)

        for start, block_labels, block_iters in ordered_map(
            run, range(0, resolution, BLOCK_ROWS), threads
        ):
            labels[start : start + block_labels.shape[0]] = block_labels
            iterations[start : start + block_iters.shape[0]] = block_iters

    unconverged = int(np.count_nonzero(labels == UNCONVERGED))
    logger.debug("Basin raster %dx%d: %d unconverged cells", resolution, resolution, unconverged)
    return BasinGrid(
        params=params,
        e_range=e_range,
        pi_range=pi_range,
        resolution=resolution,
        capture_radius=capture_radius,
        max_iter=max_iter,
        attractors=attractors,
        labels=labels,
        iterations=iterations,
    )


def label_initial_condition(
    initial: State,
    params: ModelParams,
    attractors: list[Equilibrium],
    capture_radius: float = CAPTURE_RADIUS,
    max_iter: int = MAX_ITER,
) -> int:
    """Label a single initial condition the way compute_basins labels a cell."""
    if not initial.pi > -1.0:
        return UNCONVERGED
    step = map_kernel(params)
    e, pi = initial.e, initial.pi
    for n in range(max_iter + 1):
        for index, eq in enumerate(attractors):
            if max(abs(e - eq.e_bar), abs(pi - eq.pi_bar)) <= capture_radius:
                return index
        if n == max_iter or not (math.isfinite(e) and math.isfinite(pi)):
            break
        e, pi = step(e, pi)
    return UNCONVERGED


def basin_area_fractions(grid: BasinGrid) -> dict[int, float]:
    """Share of cells per attractor index, with UNCONVERGED as its own key."""
    total = grid.labels.size
    fractions = {
        index: float(np.count_nonzero(grid.labels == index)) / total
        for index in range(len(grid.attractors))
    }
    fractions[UNCONVERGED] = float(np.count_nonzero(grid.labels == UNCONVERGED)) / total
    return fractions


def connected_components(grid: BasinGrid, attractor: int) -> int:
    """Number of 4-connected regions carrying the given label."""
    _, count = ndimage.label(grid.labels == attractor)
    return int(count)
