"""Collision accounting of invariant descriptors over atlas corpora."""

from __future__ import annotations

import statistics
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .atlas import AtlasCorpus
from .bmatrix import aggregate, bfs_bmatrix, serialize_bmatrix
from .census import bfs_census, canonical_census
from .graph import Graph, bfs_distances, encode_graph6, format_edgelist, is_connected

DESCRIPTORS = (
    "diameter",
    "degree_sequence",
    "census_node",
    "census_edge",
    "census_stub",
    "bmatrix_node",
    "bmatrix_edge",
    "bmatrix_stub",
    "bfs_bmatrix",
    "graph6_baseline",
    "edgelist_baseline",
)
# label-dependent encodings: sized for storage, never grouped for collisions
BASELINES = ("graph6_baseline", "edgelist_baseline")
COLLISION_DESCRIPTORS = tuple(d for d in DESCRIPTORS if d not in BASELINES)
CENSUS_TAGS = (("census_node", "CN"), ("census_edge", "CE"), ("census_stub", "CS"))
MEMBERSHIP_CLASSES = ("None", "CN", "CE", "CS", "CN&CE", "CN&CS", "CE&CS", "CN&CE&CS")


class DisconnectedGraphError(ValueError):
    pass


def diameter_descriptor(g: Graph) -> int:
    if not is_connected(g):
        raise DisconnectedGraphError("diameter descriptor needs a connected graph")
    return max((max(bfs_distances(g, s)) for s in range(g.node_count)), default=0)


def degree_sequence_descriptor(g: Graph) -> list[int]:
    if not is_connected(g):
        raise DisconnectedGraphError("degree sequence descriptor needs a connected graph")
    return sorted((len(a) for a in g.adjacency), reverse=True)


def collision_ceiling(corpus_size: int) -> int:
    if corpus_size < 0:
        raise ValueError("corpus size must be non-negative")
    return corpus_size * (corpus_size - 1) // 2


def descriptor_bytes(g: Graph, descriptors: Iterable[str] = DESCRIPTORS) -> dict[str, bytes]:
    """Serialized form of each requested descriptor of ``g``."""
    wanted = set(descriptors)
    unknown = wanted.difference(DESCRIPTORS)
    if unknown:
        raise KeyError(f"unknown descriptor(s): {sorted(unknown)}")
    out: dict[str, bytes] = {}
    ct = None
    if wanted & {"census_node", "census_edge", "census_stub",
                 "bmatrix_node", "bmatrix_edge", "bmatrix_stub"}:
        ct = bfs_census(g, method="traverse")
    for name in DESCRIPTORS:
        if name not in wanted:
            continue
        if name == "diameter":
            out[name] = str(diameter_descriptor(g)).encode()
        elif name == "degree_sequence":
            out[name] = ",".join(map(str, degree_sequence_descriptor(g))).encode()
        elif name.startswith("census_"):
            out[name] = canonical_census(ct[name[7:]])
        elif name.startswith("bmatrix_"):
            out[name] = serialize_bmatrix(aggregate(ct[name[8:]], g.node_count))
        elif name == "bfs_bmatrix":
            out[name] = serialize_bmatrix(bfs_bmatrix(g))
        elif name == "graph6_baseline":
            out[name] = encode_graph6(g).encode()
        elif name == "edgelist_baseline":
            out[name] = format_edgelist(g).encode()
    return out


def _chunk_keys(args):
    graphs, descriptors = args
    return [descriptor_bytes(g, descriptors) for g in graphs]


def compute_keys(
    graphs: Sequence[Graph],
    descriptors: Sequence[str],
    workers: int = 1,
    chunk_size: int = 2048,
) -> list[dict[str, bytes]]:
    """Descriptor bytes for every graph, in corpus order, for any worker count."""
    chunks = [(list(graphs[i:i + chunk_size]), tuple(descriptors))
              for i in range(0, len(graphs), chunk_size)]
    if workers <= 1 or len(chunks) <= 1:
        results = map(_chunk_keys, chunks)
        return [k for chunk in results for k in chunk]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return [k for chunk in pool.map(_chunk_keys, chunks) for k in chunk]


@dataclass
class DescriptorStats:
    collisions: int
    ceiling: int
    group_sizes: dict[int, int]
    groups: list[list[int]] = field(repr=False)

    @property
    def groups_ge2(self) -> int:
        return sum(1 for g in self.groups if len(g) >= 2)

    @property
    def max_group(self) -> int:
        return max((len(g) for g in self.groups), default=0)


@dataclass
class StorageStats:
    histogram: dict[int, int]

    def _sizes(self) -> list[int]:
        return [b for b, c in sorted(self.histogram.items()) for _ in range(c)]

    @property
    def min(self) -> int:
        return min(self.histogram, default=0)

    @property
    def max(self) -> int:
        return max(self.histogram, default=0)

    @property
    def median(self) -> float:
        sizes = self._sizes()
        return statistics.median(sizes) if sizes else 0


@dataclass
class CollisionReport:
    order: int
    corpus_size: int
    stats: dict[str, DescriptorStats]
    storage: dict[str, StorageStats]
    tags: list[str] | None

    @property
    def ceiling(self) -> int:
        return collision_ceiling(self.corpus_size)

    def collisions(self, descriptor: str) -> int:
        return self.stats[descriptor].collisions


def group_by_key(keys: Sequence[bytes]) -> list[list[int]]:
    """Indices grouped by equal key, groups ordered by their first member."""
    groups: dict[bytes, list[int]] = {}
    for i, k in enumerate(keys):
        groups.setdefault(k, []).append(i)
    return list(groups.values())


def count_collisions(groups: Iterable[Sequence[int]]) -> int:
    return sum(len(g) * (len(g) - 1) // 2 for g in groups)


def membership_tags(report_groups: dict[str, list[list[int]]], size: int) -> list[str]:
    """One of the eight Census collision classes per graph."""
    flags = [[] for _ in range(size)]
    for name, tag in CENSUS_TAGS:
        for grp in report_groups[name]:
            if len(grp) >= 2:
                for i in grp:
                    flags[i].append(tag)
    return ["&".join(f) if f else "None" for f in flags]


def run_collider(
    corpus: AtlasCorpus,
    descriptors: Sequence[str] = DESCRIPTORS,
    workers: int = 1,
    chunk_size: int = 2048,
) -> CollisionReport:
    unknown = set(descriptors).difference(DESCRIPTORS)
    if unknown:
        raise KeyError(f"unknown descriptor(s): {sorted(unknown)}")
    orders = {g.node_count for g in corpus.graphs}
    if len(orders) > 1:
        raise ValueError(f"corpus mixes orders {sorted(orders)}")
    keys = compute_keys(corpus.graphs, descriptors, workers, chunk_size)
    size = len(corpus.graphs)
    stats: dict[str, DescriptorStats] = {}
    storage: dict[str, StorageStats] = {}
    for name in DESCRIPTORS:
        if name not in descriptors:
            continue
        column = [k[name] for k in keys]
        storage[name] = StorageStats(dict(sorted(Counter(len(b) for b in column).items())))
        if name in BASELINES:
            continue
        groups = group_by_key(column)
        stats[name] = DescriptorStats(
            collisions=count_collisions(groups),
            ceiling=collision_ceiling(size),
            group_sizes=dict(sorted(Counter(len(g) for g in groups).items())),
            groups=groups,
        )
    tags = None
    if all(name in stats for name, _ in CENSUS_TAGS):
        tags = membership_tags({n: stats[n].groups for n, _ in CENSUS_TAGS}, size)
    return CollisionReport(corpus.order, size, stats, storage, tags)


def membership_tally(report: CollisionReport) -> dict[str, int]:
    if report.tags is None:
        raise ValueError("membership needs census_node, census_edge and census_stub")
    counts = Counter(report.tags)
    return {cls: counts.get(cls, 0) for cls in MEMBERSHIP_CLASSES}


def collision_tuples(
    corpus: AtlasCorpus,
    descriptor: str,
    max_tuples: int | None = None,
    report: CollisionReport | None = None,
) -> list[list[str]]:
    """Groups of two or more graphs (as Graph6) sharing ``descriptor``."""
    if report is not None and descriptor in report.stats:
        groups = report.stats[descriptor].groups
    else:
        keys = [descriptor_bytes(g, [descriptor])[descriptor] for g in corpus.graphs]
        groups = group_by_key(keys)
    tuples = [[encode_graph6(corpus.graphs[i]) for i in grp] for grp in groups if len(grp) >= 2]
    return tuples if max_tuples is None else tuples[:max_tuples]


def storage_stats(corpus: AtlasCorpus, descriptors: Sequence[str] = DESCRIPTORS) -> dict[str, StorageStats]:
    keys = compute_keys(corpus.graphs, descriptors)
    return {
        name: StorageStats(dict(sorted(Counter(len(k[name]) for k in keys).items())))
        for name in DESCRIPTORS if name in descriptors
    }
