"""Canonical labeling of small graphs.

``canonical_label`` is the literal definition: the lexicographically smallest
upper-triangle adjacency bitstring over all ``n!`` relabelings, returned as
the Graph6 text of that relabeling. It is factorial-time and serves as the
isomorphism oracle.

``canonical_form`` is what atlas enumeration uses. It first splits nodes into
an ordered equitable partition by colour refinement; the cell order depends
only on the isomorphism class, so minimizing over relabelings that respect
the cells is still a complete invariant, while the search space shrinks from
``n!`` to the product of the cell factorials.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product

import numpy as np

from .graph import Graph, encode_graph6

DEFAULT_LIMIT = 10
_BATCH = 1 << 16


class CanonicalLimitError(ValueError):
    pass


@lru_cache(maxsize=None)
def _pair_index(n: int) -> tuple[np.ndarray, np.ndarray]:
    rows, cols = [], []
    for j in range(1, n):
        for i in range(j):
            rows.append(i)
            cols.append(j)
    return np.array(rows, dtype=np.intp), np.array(cols, dtype=np.intp)


@lru_cache(maxsize=None)
def _weights(npairs: int) -> np.ndarray:
    # most significant bit first, so integer order == bitstring order
    return (1 << np.arange(npairs - 1, -1, -1, dtype=np.uint64)).astype(np.uint64)


def _min_code(adj: np.ndarray, perms: np.ndarray) -> tuple[int, np.ndarray]:
    """Smallest bit code over the rows of ``perms`` (new position -> old node)."""
    n = adj.shape[0]
    rows, cols = _pair_index(n)
    w = _weights(rows.size)
    codes = adj[perms[:, rows], perms[:, cols]].astype(np.uint64) @ w
    k = int(np.argmin(codes))
    return int(codes[k]), perms[k]


def _adj_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.node_count, g.node_count), dtype=np.uint8)
    for u, nbrs in enumerate(g.adjacency):
        a[u, list(nbrs)] = 1
    return a


def _relabeled(g: Graph, order) -> Graph:
    # order[new] = old
    inverse = [0] * g.node_count
    for new, old in enumerate(order):
        inverse[int(old)] = new
    return g.relabel(inverse)


def canonical_label(g: Graph, limit: int = DEFAULT_LIMIT) -> bytes:
    """Minimal relabeling over all permutations, as Graph6 bytes."""
    n = g.node_count
    if n > limit:
        raise CanonicalLimitError(
            f"brute-force canonical labeling refused for n={n} (limit {limit})"
        )
    if n <= 1:
        return encode_graph6(g).encode()
    if n * (n - 1) // 2 > 64:
        raise CanonicalLimitError("bit code exceeds 64 bits")
    adj = _adj_matrix(g)
    best_code, best_perm = None, None
    it = permutations(range(n))
    while True:
        chunk = list(_take(it, _BATCH))
        if not chunk:
            break
        code, perm = _min_code(adj, np.array(chunk, dtype=np.intp))
        if best_code is None or code < best_code:
            best_code, best_perm = code, perm
    return encode_graph6(_relabeled(g, best_perm)).encode()


def _take(it, k):
    for _ in range(k):
        try:
            yield next(it)
        except StopIteration:
            return


# --- refinement-restricted canonical form ------------------------------------

def refine(masks: list[int]) -> list[list[int]]:
    """Ordered equitable partition of the nodes by iterated colour refinement.

    ``masks[u]`` is the neighbor bitmask of ``u``. Cells are ordered by their
    refinement signatures, which are label-free, so the result commutes with
    relabeling.
    """
    n = len(masks)
    degrees = [bin(m).count("1") for m in masks]
    ranking = {d: r for r, d in enumerate(sorted(set(degrees)))}
    colour = [ranking[d] for d in degrees]
    ncolours = len(ranking)
    while True:
        sigs = []
        for u in range(n):
            m = masks[u]
            counts = [0] * ncolours
            while m:
                low = m & -m
                counts[colour[low.bit_length() - 1]] += 1
                m ^= low
            sigs.append((colour[u], tuple(counts)))
        ranking = {s: r for r, s in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        if len(ranking) == ncolours:
            colour = new
            break
        colour, ncolours = new, len(ranking)
    cells: list[list[int]] = [[] for _ in range(ncolours)]
    for u in range(n):
        cells[colour[u]].append(u)
    return cells


@lru_cache(maxsize=4096)
def _cell_perms(size: int) -> tuple[tuple[int, ...], ...]:
    return tuple(permutations(range(size)))


def _masks_code(masks: list[int], order: list[int]) -> int:
    n = len(order)
    code = 0
    for j in range(1, n):
        mj = masks[order[j]]
        for i in range(j):
            code = (code << 1) | ((mj >> order[i]) & 1)
    return code


def canonical_code(masks: list[int]) -> int:
    """Integer canonical code of the graph given by neighbor bitmasks.

    Bit order follows Graph6 (column-major upper triangle); combined with
    the node count it identifies the isomorphism class.
    """
    n = len(masks)
    if n <= 1:
        return 0
    cells = refine(masks)
    total = 1
    for c in cells:
        for k in range(2, len(c) + 1):
            total *= k
    if total == 1:
        return _masks_code(masks, [c[0] for c in cells])
    if total <= 48:
        best = None
        for choice in product(*(_cell_perms(len(c)) for c in cells)):
            order = [c[i] for c, p in zip(cells, choice) for i in p]
            code = _masks_code(masks, order)
            if best is None or code < best:
                best = code
        return best
    adj = np.zeros((n, n), dtype=np.uint8)
    for u, m in enumerate(masks):
        for v in range(n):
            if (m >> v) & 1:
                adj[u, v] = 1
    perms = _cell_product_perms(tuple(tuple(c) for c in cells))
    best = None
    for start in range(0, perms.shape[0], _BATCH):
        code, _ = _min_code(adj, perms[start:start + _BATCH])
        if best is None or code < best:
            best = code
    return best


def _cell_product_perms(cells: tuple[tuple[int, ...], ...]) -> np.ndarray:
    blocks = []
    for c in cells:
        arr = np.array(_cell_perms(len(c)), dtype=np.intp)
        blocks.append(np.array(c, dtype=np.intp)[arr])
    out = blocks[0]
    for b in blocks[1:]:
        left = np.repeat(out, b.shape[0], axis=0)
        right = np.tile(b, (out.shape[0], 1))
        out = np.concatenate([left, right], axis=1)
    return out


def graph_masks(g: Graph) -> list[int]:
    return [sum(1 << v for v in nbrs) for nbrs in g.adjacency]


def canonical_form(g: Graph) -> bytes:
    """Canonical key for graphs of any size small enough to enumerate cells."""
    n = g.node_count
    code = canonical_code(graph_masks(g))
    return n.to_bytes(1, "big") + code.to_bytes(max(1, (n * (n - 1) // 2 + 7) // 8), "big")


def code_to_graph(n: int, code: int) -> Graph:
    """Rebuild the graph whose Graph6-ordered bit code is ``code``."""
    npairs = n * (n - 1) // 2
    edges = []
    k = npairs - 1
    for j in range(1, n):
        for i in range(j):
            if (code >> k) & 1:
                edges.append((i, j))
            k -= 1
    return Graph.from_edges(n, edges)
