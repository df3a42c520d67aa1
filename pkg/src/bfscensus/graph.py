"""Undirected simple graphs and their text codecs (Graph6, edgelist)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised when a graph would violate the simple-graph invariants."""


class FormatError(ValueError):
    """Malformed Graph6 or edgelist input.

    ``offset`` is the 0-based byte offset (Graph6) and ``line`` the 1-based
    line number (edgelist), whichever applies.
    """

    def __init__(self, message: str, *, offset: int | None = None, line: int | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"byte {offset}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.offset = offset
        self.line = line


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on nodes ``0..node_count-1``.

    ``adjacency[u]`` is the strictly increasing tuple of neighbors of ``u``.
    Instances are validated on construction and never mutated afterwards.
    """

    node_count: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.node_count
        if n < 0:
            raise GraphError("node_count must be non-negative")
        if len(self.adjacency) != n:
            raise GraphError(f"expected {n} adjacency lists, got {len(self.adjacency)}")
        for u, nbrs in enumerate(self.adjacency):
            prev = -1
            for v in nbrs:
                if v <= prev:
                    raise GraphError(f"neighbors of {u} not strictly increasing")
                if v == u:
                    raise GraphError(f"self-loop at node {u}")
                if not 0 <= v < n:
                    raise GraphError(f"neighbor {v} of {u} out of range")
                prev = v
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if not _contains(self.adjacency[v], u):
                    raise GraphError(f"edge {u}-{v} is not symmetric")

    @classmethod
    def from_edges(cls, node_count: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from undirected pairs; duplicates and reversals collapse."""
        nbrs: list[set[int]] = [set() for _ in range(node_count)]
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at node {u}")
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise GraphError(f"edge {u}-{v} out of range for {node_count} nodes")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(node_count, tuple(tuple(sorted(s)) for s in nbrs))

    @classmethod
    def empty(cls, node_count: int) -> "Graph":
        return cls(node_count, ((),) * node_count)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v`` in ascending lexicographic order."""
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return _contains(self.adjacency[u], v)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the isomorphic copy in which node ``u`` becomes ``perm[u]``."""
        if sorted(perm) != list(range(self.node_count)):
            raise GraphError("relabel expects a permutation of all nodes")
        return Graph.from_edges(self.node_count, ((perm[u], perm[v]) for u, v in self.edges()))

    def __repr__(self) -> str:
        return f"Graph(n={self.node_count}, e={self.edge_count})"


def _contains(sorted_nbrs: tuple[int, ...], v: int) -> bool:
    lo, hi = 0, len(sorted_nbrs)
    while lo < hi:
        mid = (lo + hi) // 2
        if sorted_nbrs[mid] < v:
            lo = mid + 1
        else:
            hi = mid
    return lo < len(sorted_nbrs) and sorted_nbrs[lo] == v


# --- Graph6 -----------------------------------------------------------------

GRAPH6_MAX_NODES = 62


def _upper_triangle_pairs(n: int):
    # Graph6 bit order: column-major over the upper triangle, (0,1),(0,2),(1,2),(0,3),...
    for j in range(1, n):
        for i in range(j):
            yield i, j


def encode_graph6(g: Graph) -> str:
    n = g.node_count
    if n > GRAPH6_MAX_NODES:
        raise GraphError(f"Graph6 encoding supports at most {GRAPH6_MAX_NODES} nodes, got {n}")
    bits = [1 if g.has_edge(i, j) else 0 for i, j in _upper_triangle_pairs(n)]
    bits.extend([0] * (-len(bits) % 6))
    out = [chr(n + 63)]
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k:k + 6]:
            value = (value << 1) | b
        out.append(chr(value + 63))
    return "".join(out)


def decode_graph6(text: str) -> Graph:
    s = text.strip("\r\n")
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise FormatError("empty Graph6 string", offset=0)
    for k, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise FormatError(f"byte {ch!r} outside the Graph6 range 63..126", offset=k)
    n = ord(s[0]) - 63
    if n > GRAPH6_MAX_NODES:
        raise FormatError("extended (n > 62) Graph6 headers are not supported", offset=0)
    npairs = n * (n - 1) // 2
    nbytes = (npairs + 5) // 6
    body = s[1:]
    if len(body) != nbytes:
        problem = "truncated" if len(body) < nbytes else "trailing bytes after"
        raise FormatError(
            f"{problem} bit section: expected {nbytes} bytes for n={n}, got {len(body)}",
            offset=1 + min(len(body), nbytes),
        )
    edges = []
    k = 0
    for i, j in _upper_triangle_pairs(n):
        value = ord(body[k // 6]) - 63
        if (value >> (5 - k % 6)) & 1:
            edges.append((i, j))
        k += 1
    return Graph.from_edges(n, edges)


def read_graph6_lines(text: str) -> list[Graph]:
    """Decode one graph per non-blank line; errors report the line number."""
    graphs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            graphs.append(decode_graph6(line))
        except FormatError as exc:
            raise FormatError(str(exc), offset=exc.offset, line=lineno) from None
    return graphs


# --- edgelist ---------------------------------------------------------------

def parse_edgelist(text: str, node_count_hint: int | None = None) -> Graph:
    """Parse ``"u v"`` lines; ``#`` starts a comment, blank lines are skipped."""
    edges = []
    top = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise FormatError(f"expected two node indices, got {len(tokens)} tokens", line=lineno)
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise FormatError(f"non-integer token in {line!r}", line=lineno) from None
        if u < 0 or v < 0:
            raise FormatError("negative node index", line=lineno)
        if u == v:
            raise FormatError(f"self-loop {u}-{v} rejected", line=lineno)
        edges.append((u, v))
        top = max(top, u, v)
    n = top + 1
    if node_count_hint is not None:
        n = max(n, node_count_hint)
    return Graph.from_edges(n, edges)


def format_edgelist(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges())


# --- traversal helpers ------------------------------------------------------

def bfs_distances(g: Graph, source: int) -> list[int]:
    """Hop distance from ``source`` to every node, -1 where unreachable."""
    dist = [-1] * g.node_count
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def connected_components(g: Graph) -> list[list[int]]:
    seen = [False] * g.node_count
    comps = []
    for s in range(g.node_count):
        if seen[s]:
            continue
        comp = [v for v, d in enumerate(bfs_distances(g, s)) if d >= 0]
        for v in comp:
            seen[v] = True
        comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    if g.node_count == 0:
        return True
    return all(d >= 0 for d in bfs_distances(g, 0))


def induced_subgraph(g: Graph, nodes: Sequence[int]) -> Graph:
    """Subgraph on ``nodes``, relabeled densely in ascending original order."""
    keep = sorted(nodes)
    index = {v: k for k, v in enumerate(keep)}
    return Graph.from_edges(
        len(keep),
        ((index[u], index[v]) for u, v in g.edges() if u in index and v in index),
    )


def largest_component(g: Graph) -> Graph:
    """Largest connected component; ties go to the one holding the smallest node."""
    comps = connected_components(g)
    if not comps:
        return g
    best = max(comps, key=len)  # max keeps the first of equal lengths
    return induced_subgraph(g, best)


def rewire_edge(g: Graph, old_edge: tuple[int, int], new_edge: tuple[int, int]) -> Graph:
    """Move one edge: remove ``old_edge`` and add ``new_edge``."""
    a, b = old_edge
    c, d = new_edge
    if not (0 <= a < g.node_count and 0 <= b < g.node_count) or not g.has_edge(a, b):
        raise GraphError(f"edge {a}-{b} is not in the graph")
    if c == d:
        raise GraphError("rewired edge would be a self-loop")
    if not (0 <= c < g.node_count and 0 <= d < g.node_count):
        raise GraphError(f"edge {c}-{d} out of range")
    if g.has_edge(c, d):
        raise GraphError(f"edge {c}-{d} already present")
    old = (min(a, b), max(a, b))
    edges = [e for e in g.edges() if e != old]
    edges.append((c, d))
    return Graph.from_edges(g.node_count, edges)
