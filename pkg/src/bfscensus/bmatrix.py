"""Hop x degree frequency matrices (network portraits)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .census import CensusInstance
from .graph import Graph


@dataclass(frozen=True)
class BMatrix:
    """``cells[i - 1][j]`` counts sources with value ``j`` at hop ``i``.

    Rows run over hops ``1..H``, columns over degrees ``0..W-1``.
    """

    cells: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.cells), (len(self.cells[0]) if self.cells else 0)

    def cell(self, hop: int, degree: int) -> int:
        """1-based hop, 0-based degree; outside the stored grid reads as 0."""
        if 1 <= hop <= len(self.cells) and 0 <= degree < len(self.cells[hop - 1]):
            return self.cells[hop - 1][degree]
        return 0

    @property
    def max_count(self) -> int:
        return max((c for row in self.cells for c in row), default=0)


def _from_rows(rows: list[list[int]], node_count: int) -> BMatrix:
    """Histogram per hop of equal-length value rows."""
    hops = max((len(r) for r in rows), default=0)
    width = max((x for r in rows for x in r), default=0) + 1
    grid = [[0] * width for _ in range(hops)]
    for r in rows:
        for i, x in enumerate(r):
            grid[i][x] += 1
    if rows and any(sum(row) != node_count for row in grid):
        raise ValueError("BMatrix rows must each sum to the node count")
    return BMatrix(tuple(tuple(row) for row in grid))


def aggregate(ci: CensusInstance, node_count: int | None = None) -> BMatrix:
    """Pad vectors with trailing zeros to the longest one, then count per cell."""
    n = ci.node_count if node_count is None else node_count
    hops = ci.max_length
    rows = [list(v) + [0] * (hops - len(v)) for v in ci.vectors]
    return _from_rows(rows, n)


def bfs_bmatrix(g: Graph) -> BMatrix:
    """Shell-size matrix computed straight from shortest-path distances.

    Each source contributes its shell sizes ``|{v : d(s, v) = i}|`` for
    ``i = 1..`` up to one hop past the global maximum eccentricity.
    """
    n = g.node_count
    shells = []
    for s in range(n):
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.adjacency[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        counts: dict[int, int] = {}
        for d in dist.values():
            if d:
                counts[d] = counts.get(d, 0) + 1
        shells.append(counts)
    hops = max((max(c, default=0) for c in shells), default=0) + 1
    rows = [[c.get(i, 0) for i in range(1, hops + 1)] for c in shells]
    return _from_rows(rows, n)


def serialize_bmatrix(b: BMatrix) -> bytes:
    """``"H W"`` header line, then H rows of W space-separated counts."""
    h, w = b.shape
    lines = [f"{h} {w}"] + [" ".join(str(c) for c in row) for row in b.cells]
    return "\n".join(lines).encode("ascii")


def parse_bmatrix(data: bytes | str) -> BMatrix:
    text = data.decode("ascii") if isinstance(data, bytes) else data
    lines = text.strip().splitlines()
    h, w = (int(x) for x in lines[0].split())
    rows = tuple(tuple(int(x) for x in line.split()) for line in lines[1:1 + h])
    if len(rows) != h or any(len(r) != w for r in rows):
        raise ValueError("BMatrix body does not match its header")
    return BMatrix(rows)


def canonical_bmatrix(b: BMatrix) -> bytes:
    return serialize_bmatrix(b)
