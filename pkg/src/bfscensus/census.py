"""BFS-Census: per-source hop vectors of node, edge and stub degrees."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .graph import Graph, is_connected

CONSTITUENTS = ("node", "edge", "stub")
HEADER_TAGS = {"node": "CN", "edge": "CE", "stub": "CS"}


@dataclass(frozen=True)
class CensusInstance:
    """Bag of vectors for one constituent; ``vectors[s]`` belongs to source ``s``.

    Value ``h - 1`` of a vector is the count collected at hop ``h``.
    """

    constituent: str
    vectors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.constituent not in CONSTITUENTS:
            raise ValueError(f"unknown constituent {self.constituent!r}")

    @property
    def node_count(self) -> int:
        return len(self.vectors)

    def vector(self, source: int) -> tuple[int, ...]:
        if not 0 <= source < len(self.vectors):
            raise KeyError(f"no census vector for source {source}")
        return self.vectors[source]

    @property
    def max_length(self) -> int:
        return max((len(v) for v in self.vectors), default=0)

    @property
    def max_value(self) -> int:
        return max((x for v in self.vectors for x in v), default=0)


@dataclass(frozen=True)
class CensusTriple:
    node: CensusInstance
    edge: CensusInstance
    stub: CensusInstance
    connected: bool = True

    def __post_init__(self):
        shapes = [tuple(len(v) for v in ci.vectors) for ci in (self.node, self.edge, self.stub)]
        if not shapes[0] == shapes[1] == shapes[2]:
            raise ValueError("census instances of one graph must share their shape")

    def __getitem__(self, constituent: str) -> CensusInstance:
        return getattr(self, constituent)

    def __iter__(self):
        return iter((self.node, self.edge, self.stub))


def census_vectors(g: Graph, source: int) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """Node, edge and stub vectors for one BFS source.

    Per hop the current frontier is expanded in ascending node order:
    * a neighbor not yet visited is a newly discovered node;
    * an edge counts the first time either endpoint is expanded;
    * a stub ``(u, v)`` counts unless its complement ``(v, u)`` was collected
      on an earlier hop. Stubs of the running hop only join the visited set
      once the hop is complete, so an edge between two frontier nodes yields
      two stubs while an edge towards the previous layer is blocked.
    The hop that discovers no node is recorded and ends the vector.
    """
    adjacency = g.adjacency
    visited_nodes = {source}
    visited_edges: set[tuple[int, int]] = set()
    visited_stubs: set[tuple[int, int]] = set()
    frontier = [source]
    node_vec, edge_vec, stub_vec = [], [], []
    while True:
        next_hop = []
        current_stubs = []
        node_degree = edge_degree = stub_degree = 0
        for u in frontier:
            for v in adjacency[u]:
                if v not in visited_nodes:
                    visited_nodes.add(v)
                    next_hop.append(v)
                    node_degree += 1
                edge = (u, v) if u < v else (v, u)
                if edge not in visited_edges:
                    visited_edges.add(edge)
                    edge_degree += 1
                if (v, u) not in visited_stubs:
                    current_stubs.append((u, v))
                    stub_degree += 1
        visited_stubs.update(current_stubs)
        node_vec.append(node_degree)
        edge_vec.append(edge_degree)
        stub_vec.append(stub_degree)
        if not next_hop:
            break
        frontier = sorted(next_hop)
    return tuple(node_vec), tuple(edge_vec), tuple(stub_vec)


def _layered_vectors(g: Graph, sources: Sequence[int], chunk: int = 64):
    """Same vectors as ``census_vectors``, computed from BFS layers in bulk.

    With ``d`` the hop distance from the source, the stubs collected at hop
    ``h`` are those ``(u, v)`` with ``d(u) == h - 1`` and ``d(v) >= d(u)``;
    edges are the same set with each same-layer edge counted once.
    """
    n = g.node_count
    us = np.fromiter((u for u, nb in enumerate(g.adjacency) for _ in nb), dtype=np.int64)
    vs = np.fromiter((v for nb in g.adjacency for v in nb), dtype=np.int64)
    matrix = csr_matrix((np.ones(us.size, dtype=np.int8), (us, vs)), shape=(n, n))
    out = []
    sources = list(sources)
    for start in range(0, len(sources), chunk):
        block = sources[start:start + chunk]
        dist = shortest_path(matrix, method="D", unweighted=True, indices=block)
        for row in dist:
            reach = np.isfinite(row)
            d = np.where(reach, row, -1).astype(np.int64)
            length = int(d.max()) + 1
            node_vec = np.bincount(d[reach], minlength=length)[1:].tolist() + [0]
            du, dv = d[us], d[vs]
            live = du >= 0
            forward = live & (dv > du)
            level = live & (dv == du)
            fwd = np.bincount(du[forward], minlength=length)[:length]
            lev = np.bincount(du[level], minlength=length)[:length]
            edge_vec = (fwd + lev // 2).tolist()
            stub_vec = (fwd + lev).tolist()
            out.append((tuple(node_vec), tuple(edge_vec), tuple(stub_vec)))
    return out


LAYERED_THRESHOLD = 256


def bfs_census(g: Graph, sources: Sequence[int] | None = None, method: str = "auto") -> CensusTriple:
    """Census-Node, Census-Edge and Census-Stub of ``g``, in source index order.

    ``method`` picks the per-source traversal (``"traverse"``), the bulk
    layer computation (``"layered"``), or the former below
    ``LAYERED_THRESHOLD`` nodes and the latter above (``"auto"``).
    """
    if sources is None:
        sources = range(g.node_count)
    if method == "auto":
        method = "layered" if g.node_count > LAYERED_THRESHOLD else "traverse"
    if method == "traverse":
        triples = [census_vectors(g, s) for s in sources]
    elif method == "layered":
        triples = _layered_vectors(g, sources)
    else:
        raise ValueError(f"unknown census method {method!r}")
    nodes, edges, stubs = [], [], []
    for cn, ce, cs in triples:
        nodes.append(cn)
        edges.append(ce)
        stubs.append(cs)
    return CensusTriple(
        CensusInstance("node", tuple(nodes)),
        CensusInstance("edge", tuple(edges)),
        CensusInstance("stub", tuple(stubs)),
        connected=is_connected(g),
    )


# --- derived metrics ----------------------------------------------------------

def census_auc(ci: CensusInstance, source: int) -> int:
    return sum(ci.vector(source))


def eccentricity(ct: CensusTriple, source: int) -> int:
    """Eccentricity of ``source`` within its component."""
    return len(ct.node.vector(source)) - 1


def diameter(ct: CensusTriple) -> int:
    """Largest eccentricity; per component when the graph is disconnected (see ``ct.connected``)."""
    return max((len(v) for v in ct.node.vectors), default=1) - 1


def radius(ct: CensusTriple) -> int:
    return min((len(v) for v in ct.node.vectors), default=1) - 1


def degree_sequence(ci: CensusInstance) -> list[int]:
    """First-hop values of Census-Node, sorted descending."""
    return sorted((v[0] for v in ci.vectors), reverse=True)


# --- canonical form and serialization ----------------------------------------

def canonical_vectors(ci: CensusInstance) -> list[tuple[int, ...]]:
    return sorted(ci.vectors, key=lambda v: (len(v), v))


def serialize_census(ci: CensusInstance, canonical: bool = True, header: bool = False) -> bytes:
    """Vectors as comma-joined decimals, joined by ``;``.

    With ``canonical`` the vectors are sorted by (length, lexicographic) and
    source identity is dropped; otherwise source order is kept.
    """
    vectors = canonical_vectors(ci) if canonical else ci.vectors
    body = ";".join(",".join(str(x) for x in v) for v in vectors)
    if header:
        body = f"{HEADER_TAGS[ci.constituent]} n={ci.node_count}\n" + body
    return body.encode("ascii")


def canonical_census(ci: CensusInstance) -> bytes:
    return serialize_census(ci, canonical=True)


def parse_census(data: bytes | str, constituent: str = "node") -> CensusInstance:
    """Inverse of ``serialize_census``; accepts ``;`` or newline separators."""
    text = data.decode("ascii") if isinstance(data, bytes) else data
    lines = text.strip().splitlines()
    if lines and "n=" in lines[0]:
        tag = lines[0].split()[0]
        for name, t in HEADER_TAGS.items():
            if t == tag:
                constituent = name
        lines = lines[1:]
    vectors = []
    for chunk in ";".join(lines).split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        vectors.append(tuple(int(x) for x in chunk.split(",")))
    return CensusInstance(constituent, tuple(vectors))


def measure_bytes(data: bytes) -> int:
    return len(data)
