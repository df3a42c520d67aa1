"""Exhaustive small-graph atlas: enumeration, Graph6 import and export."""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field

from .canon import canonical_code, code_to_graph
from .graph import Graph, encode_graph6, is_connected, read_graph6_lines

log = logging.getLogger(__name__)

MAX_ENUMERATION_ORDER = 8
# connected non-isomorphic graphs on 3..10 nodes
KNOWN_CORPUS_SIZES = {3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117, 9: 261080, 10: 11716571}


class AtlasError(ValueError):
    pass


@dataclass
class AtlasCorpus:
    """Connected, pairwise non-isomorphic graphs of one order."""

    order: int
    graphs: list[Graph] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.graphs)

    def graph6(self) -> list[str]:
        return [encode_graph6(g) for g in self.graphs]


def _children(n: int, masks: tuple[int, ...]):
    """Every way to add node ``n`` to a graph on ``n`` nodes."""
    for subset in range(1 << n):
        new = [m | (1 << n) if (subset >> u) & 1 else m for u, m in enumerate(masks)]
        new.append(subset)
        yield new


def _connected_masks(masks) -> bool:
    n = len(masks)
    if n == 0:
        return True
    seen = 1
    frontier = 1
    full = (1 << n) - 1
    while frontier:
        reach = 0
        m = frontier
        while m:
            low = m & -m
            reach |= masks[low.bit_length() - 1]
            m ^= low
        frontier = reach & ~seen
        seen |= reach
    return seen == full


def _masks_from_code(n: int, code: int) -> tuple[int, ...]:
    masks = [0] * n
    k = n * (n - 1) // 2 - 1
    for j in range(1, n):
        for i in range(j):
            if (code >> k) & 1:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
            k -= 1
    return tuple(masks)


def enumerate_all(max_order: int) -> dict[int, list[int]]:
    """Canonical codes of every graph (connected or not) per order ``1..max_order``.

    Each order is grown from the previous one by attaching a new node to
    every subset of existing nodes and keeping one representative per
    canonical code. Codes are returned sorted.
    """
    if max_order > MAX_ENUMERATION_ORDER:
        raise AtlasError(
            f"built-in enumeration stops at order {MAX_ENUMERATION_ORDER}; "
            "ingest larger orders from Graph6 files with ingest_atlas"
        )
    levels: dict[int, list[int]] = {1: [0]}
    for n in range(2, max_order + 1):
        seen: set[int] = set()
        for parent in levels[n - 1]:
            masks = _masks_from_code(n - 1, parent)
            for child in _children(n - 1, masks):
                seen.add(canonical_code(child))
        levels[n] = sorted(seen)
        log.info("order %d: %d graphs", n, len(seen))
    return levels


def enumerate_atlas(max_order: int, min_order: int = 3) -> list[AtlasCorpus]:
    """Connected corpora for orders ``min_order..max_order``."""
    levels = enumerate_all(max_order)
    corpora = []
    for n in range(min_order, max_order + 1):
        graphs = [
            code_to_graph(n, code)
            for code in levels[n]
            if _connected_masks(_masks_from_code(n, code))
        ]
        corpora.append(AtlasCorpus(n, graphs))
    return corpora


def export_atlas(corpus: AtlasCorpus, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for line in corpus.graph6():
            fh.write(line + "\n")


def ingest_atlas(path: str | os.PathLike) -> AtlasCorpus:
    """Read a Graph6 file of one order; disconnected graphs are dropped."""
    with open(path, encoding="ascii") as fh:
        graphs = read_graph6_lines(fh.read())
    orders = {g.node_count for g in graphs}
    if len(orders) > 1:
        raise AtlasError(f"{path}: mixed orders {sorted(orders)} in one atlas file")
    order = orders.pop() if orders else 0
    return AtlasCorpus(order, [g for g in graphs if is_connected(g)])
