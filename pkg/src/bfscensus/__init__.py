"""Census graph invariant descriptors, an atlas collider, and SVG plots."""

__version__ = "0.1.0"

from .bmatrix import BMatrix, aggregate, bfs_bmatrix, canonical_bmatrix, serialize_bmatrix
from .census import (
    CensusInstance,
    CensusTriple,
    bfs_census,
    canonical_census,
    census_auc,
    diameter,
    eccentricity,
    radius,
    serialize_census,
)
from .graph import Graph, decode_graph6, encode_graph6, parse_edgelist

__all__ = [
    "BMatrix",
    "CensusInstance",
    "CensusTriple",
    "Graph",
    "aggregate",
    "bfs_bmatrix",
    "bfs_census",
    "canonical_bmatrix",
    "canonical_census",
    "census_auc",
    "decode_graph6",
    "diameter",
    "eccentricity",
    "encode_graph6",
    "parse_edgelist",
    "radius",
    "serialize_bmatrix",
    "serialize_census",
]
