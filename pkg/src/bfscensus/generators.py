"""Seeded random graph models.

Every generator draws from ``numpy.random.Generator(numpy.random.PCG64(seed))``
and consumes variates in a fixed order, so a (seed, parameters) pair always
yields the same graph on any platform numpy supports.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .graph import Graph


def make_rng(seed: int) -> np.random.Generator:
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))


def _check_prob(name: str, p: float):
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {p}")


def _check_n(n: int):
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")


def _pairs_upper(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(n, k=1)


def gen_erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """G(n, p): one uniform draw per unordered pair, pairs in row-major ``i < j`` order."""
    _check_n(n)
    _check_prob("p", p)
    rng = make_rng(seed)
    rows, cols = _pairs_upper(n)
    keep = rng.random(rows.size) < p
    return Graph.from_edges(n, zip(rows[keep].tolist(), cols[keep].tolist()))


def gen_stochastic_block(sizes: Sequence[int], p_in: float, p_out: float, seed: int) -> Graph:
    """Planted partition with consecutive node blocks of the given sizes."""
    _check_prob("p_in", p_in)
    _check_prob("p_out", p_out)
    if any(s < 0 for s in sizes):
        raise ValueError("block sizes must be non-negative")
    n = int(sum(sizes))
    block = np.repeat(np.arange(len(sizes)), sizes)
    rng = make_rng(seed)
    rows, cols = _pairs_upper(n)
    prob = np.where(block[rows] == block[cols], p_in, p_out)
    keep = rng.random(rows.size) < prob
    return Graph.from_edges(n, zip(rows[keep].tolist(), cols[keep].tolist()))


def gen_watts_strogatz(n: int, k: int, p: float, seed: int) -> Graph:
    """Ring lattice of degree ``k`` with each lattice edge rewired w.p. ``p``.

    Edges ``(u, u+j mod n)`` are visited node-major, offset-minor; a rewired
    edge keeps ``u`` and moves its far endpoint to a uniform node that is
    neither ``u`` nor already adjacent to it. Edge count stays ``n*k/2``.
    """
    _check_prob("p", p)
    if k % 2 or k < 0:
        raise ValueError(f"k must be a non-negative even integer, got {k}")
    if k >= n:
        raise ValueError(f"k must be smaller than n, got k={k}, n={n}")
    rng = make_rng(seed)
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u in range(n):
        for j in range(1, k // 2 + 1):
            v = (u + j) % n
            nbrs[u].add(v)
            nbrs[v].add(u)
    for u in range(n):
        for j in range(1, k // 2 + 1):
            v = (u + j) % n
            if rng.random() >= p:
                continue
            # the lattice edge may already have been moved away by an earlier rewire
            if v not in nbrs[u] or len(nbrs[u]) >= n - 1:
                continue
            while True:
                w = int(rng.integers(n))
                if w != u and w not in nbrs[u]:
                    break
            nbrs[u].discard(v)
            nbrs[v].discard(u)
            nbrs[u].add(w)
            nbrs[w].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs))


def gen_barabasi_albert(n: int, m: int, seed: int) -> Graph:
    """Preferential attachment grown from a star on ``m + 1`` nodes.

    Targets are drawn from a degree urn (every edge endpoint listed once),
    redrawing on duplicates until ``m`` distinct targets are found.
    """
    if not 1 <= m < n:
        raise ValueError(f"need 1 <= m < n, got m={m}, n={n}")
    rng = make_rng(seed)
    edges = [(0, v) for v in range(1, m + 1)]
    urn = [x for e in edges for x in e]
    for new in range(m + 1, n):
        targets: list[int] = []
        chosen = set()
        while len(targets) < m:
            t = urn[int(rng.integers(len(urn)))]
            if t not in chosen:
                chosen.add(t)
                targets.append(t)
        for t in targets:
            edges.append((t, new))
            urn.extend((t, new))
    return Graph.from_edges(n, edges)


def gen_random_tree(n: int, seed: int) -> Graph:
    """Random recursive tree: node ``i`` attaches to a uniform earlier node."""
    _check_n(n)
    rng = make_rng(seed)
    return Graph.from_edges(n, ((int(rng.integers(i)), i) for i in range(1, n)))


def complete_graph(n: int) -> Graph:
    _check_n(n)
    return Graph(n, tuple(tuple(v for v in range(n) if v != u) for u in range(n)))


def path_graph(n: int) -> Graph:
    _check_n(n)
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 nodes")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def lcf_graph(n: int, shifts: Sequence[int], repeats: int) -> Graph:
    """Hamiltonian cycle plus chords given in LCF notation ``[shifts]^repeats``."""
    edges = [(i, (i + 1) % n) for i in range(n)]
    seq = list(shifts) * repeats
    for i, s in enumerate(seq):
        edges.append((i, (i + s) % n))
    return Graph.from_edges(n, edges)


def dodecahedron() -> Graph:
    return lcf_graph(20, [10, 7, 4, -4, -7, 10, -4, 7, -7, 4], 2)


def desargues() -> Graph:
    return lcf_graph(20, [5, -5, 9, -9], 5)


GENERATORS = {
    "er": gen_erdos_renyi,
    "ws": gen_watts_strogatz,
    "ba": gen_barabasi_albert,
    "sbm": gen_stochastic_block,
    "tree": gen_random_tree,
}
