from .colormap import INFERNO, ramp
from .svg import (
    Layer,
    PlotError,
    PlotOptions,
    axis_ranges,
    census_census_layer,
    census_census_plot,
    circular_node_link,
    dumps_sidecar,
    heatmap_plot,
    hop_census_layer,
    hop_census_plot,
    superimpose,
)

__all__ = [
    "INFERNO",
    "Layer",
    "PlotError",
    "PlotOptions",
    "axis_ranges",
    "census_census_layer",
    "census_census_plot",
    "circular_node_link",
    "dumps_sidecar",
    "heatmap_plot",
    "hop_census_layer",
    "hop_census_plot",
    "ramp",
    "superimpose",
]
