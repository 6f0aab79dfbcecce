"""Plotting helpers."""

from veblen_dyn.plots.figures import (
    basin_colours,
    basin_figure,
    isocline_figure,
    orbit_diagram_figure,
    save_png,
    time_series_figure,
)

__all__ = [
    "basin_colours",
    "basin_figure",
    "isocline_figure",
    "orbit_diagram_figure",
    "save_png",
    "time_series_figure",
]
