"""Plotly figures for orbits, orbit diagrams, basins and isoclines."""

import logging
from pathlib import Path

import numpy as np
import pandas as pd
import plotly.express as px
import plotly.graph_objects as go

from veblen_dyn.domain import UNCONVERGED, BasinGrid, EquilibriumLabel

logger = logging.getLogger(__name__)

WHITE = (255, 255, 255)
_LABEL_COLOURS = {
    EquilibriumLabel.UPPER: (46, 160, 67),
    EquilibriumLabel.LOWER: (214, 39, 40),
    EquilibriumLabel.MIDDLE: (127, 127, 127),
    EquilibriumLabel.UNIQUE: (31, 119, 180),
}


def time_series_figure(orbit: pd.DataFrame) -> go.Figure:
    """e and pi against the generation index."""
    long = orbit.melt(id_vars="t", value_vars=["e", "pi"], var_name="variable")
    fig = px.line(long, x="t", y="value", color="variable", title="Orbit", height=400)
    fig.update_layout(xaxis_title="t", yaxis_title="value")
    return fig


def orbit_diagram_figure(sweep: pd.DataFrame, param: str) -> go.Figure:
    """Recorded attractor samples of e and pi against the swept parameter."""
    long = sweep.melt(id_vars="param_value", value_vars=["e", "pi"], var_name="variable")
    fig = px.scatter(
        long,
        x="param_value",
        y="value",
        facet_row="variable",
        title=f"Orbit diagram over {param}",
        height=700,
    )
    fig.update_traces(marker=dict(size=1, color="black"))
    fig.update_yaxes(matches=None)
    fig.update_layout(xaxis_title=param, showlegend=False)
    return fig


def basin_colours(grid: BasinGrid) -> np.ndarray:
    """RGB raster of the label matrix, lowest pi in row 0."""
    image = np.empty(grid.labels.shape + (3,), dtype=np.uint8)
    image[...] = WHITE
    for index, eq in enumerate(grid.attractors):
        image[grid.labels == index] = _LABEL_COLOURS[eq.label]
    return image


def basin_figure(grid: BasinGrid) -> go.Figure:
    """Basins of attraction: green upper, red lower, white unconverged."""
    e_centres, pi_centres = grid.cell_centres()
    de = (grid.e_range[1] - grid.e_range[0]) / grid.resolution
    dpi = (grid.pi_range[1] - grid.pi_range[0]) / grid.resolution
    fig = go.Figure(
        go.Image(
            z=basin_colours(grid),
            x0=float(e_centres[0]),
            dx=de,
            y0=float(pi_centres[0]),
            dy=dpi,
            name="basins",
        )
    )
    # image traces reverse the y axis by default; row 0 is the lowest pi
    fig.update_yaxes(autorange=True)
    fig.update_layout(title="Basins of attraction", height=600)
    for eq in grid.attractors:
        fig.add_scatter(
            x=[eq.e_bar],
            y=[eq.pi_bar],
            mode="markers",
            marker=dict(color="black", size=8),
            name=eq.label.value,
        )
    unconverged = int(np.count_nonzero(grid.labels == UNCONVERGED))
    fig.update_layout(xaxis_title="e", yaxis_title="pi", showlegend=True)
    if unconverged:
        fig.add_annotation(
            text=f"{unconverged} unconverged cells",
            xref="paper",
            yref="paper",
            x=0.0,
            y=1.05,
            showarrow=False,
        )
    return fig


def isocline_figure(isoclines: pd.DataFrame) -> go.Figure:
    """The linear and logistic isoclines, steady states as markers."""
    steady = isoclines["curve"] == "equilibrium"
    fig = px.line(isoclines[~steady], x="e", y="pi", color="curve", title="Isoclines", height=500)
    if steady.any():
        fig.add_scatter(
            x=isoclines.loc[steady, "e"],
            y=isoclines.loc[steady, "pi"],
            mode="markers",
            marker=dict(color="black", size=8),
            name="steady states",
        )
    fig.update_layout(xaxis_title="e", yaxis_title="pi")
    return fig


def save_png(fig: go.Figure, path: Path) -> bool:
    """Export ``fig`` as PNG; log a warning and return False when export is unavailable."""
    try:
        fig.write_image(str(path))
    except (ValueError, ImportError, RuntimeError) as exc:
        logger.warning("PNG export to %s skipped: %s", path, exc)
        return False
    logger.debug("Wrote %s", path)
    return True
