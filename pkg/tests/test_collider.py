import pytest

from bfscensus.atlas import AtlasCorpus
from bfscensus.canon import canonical_label
from bfscensus.collider import (
    COLLISION_DESCRIPTORS,
    DESCRIPTORS,
    MEMBERSHIP_CLASSES,
    DisconnectedGraphError,
    collision_ceiling,
    collision_tuples,
    descriptor_bytes,
    membership_tally,
    run_collider,
    storage_stats,
)
from bfscensus.generators import complete_graph, path_graph
from bfscensus.graph import Graph, decode_graph6

from oracles import pairwise_collisions


def test_ceilings():
    assert collision_ceiling(2) == 1
    assert collision_ceiling(0) == 0
    big = collision_ceiling(11716571)
    assert big == 11716571 * 11716570 // 2 == 68639012140735
    assert round(big / 1e12, 1) == 68.6
    with pytest.raises(ValueError):
        collision_ceiling(-1)


def test_small_descriptors():
    k3 = descriptor_bytes(complete_graph(3))
    p3 = descriptor_bytes(path_graph(3))
    assert k3["diameter"] == b"1" and p3["diameter"] == b"2"
    assert k3["degree_sequence"] == b"2,2,2" and p3["degree_sequence"] == b"2,1,1"
    assert k3["census_node"] == b"2,0;2,0;2,0"
    assert p3["census_node"] == b"2,0;1,1,0;1,1,0"
    assert k3["census_stub"] == b"2,2;2,2;2,2"
    assert k3["bfs_bmatrix"] == k3["bmatrix_node"]
    assert set(k3) == set(DESCRIPTORS)
    with pytest.raises(KeyError):
        descriptor_bytes(k3, ["nope"])


def test_disconnected_rejected():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    for d in ("diameter", "degree_sequence"):
        with pytest.raises(DisconnectedGraphError):
            descriptor_bytes(g, [d])


@pytest.mark.parametrize("order", [3, 4, 5, 6])
def test_counts_match_pairwise_oracle(atlas7, order):
    corpus = atlas7[order]
    report = run_collider(corpus)
    keys = [descriptor_bytes(g) for g in corpus.graphs]
    for d in COLLISION_DESCRIPTORS:
        assert report.collisions(d) == pairwise_collisions([k[d] for k in keys])
        assert report.stats[d].ceiling == report.ceiling
        assert sum(s * c for s, c in report.stats[d].group_sizes.items()) == len(corpus)


def test_known_small_order_counts(atlas7):
    r5 = run_collider(atlas7[5])
    assert [r5.collisions(d) for d in ("census_node", "census_edge", "census_stub")] == [1, 0, 0]
    assert r5.collisions("diameter") == 101
    assert r5.collisions("degree_sequence") == 2
    r6 = run_collider(atlas7[6])
    assert [r6.collisions(d) for d in ("census_node", "census_edge", "census_stub")] == [23, 4, 0]


@pytest.mark.parametrize("order", [4, 5, 6])
def test_refinement_is_monotone(atlas7, order):
    # a census match forces matches in every coarser descriptor
    report = run_collider(atlas7[order])
    keys = [descriptor_bytes(g) for g in atlas7[order].graphs]
    coarser = {
        "census_node": ("bmatrix_node", "degree_sequence", "diameter"),
        "census_edge": ("bmatrix_edge", "diameter"),
        "census_stub": ("bmatrix_stub", "diameter"),
        "bmatrix_node": ("bfs_bmatrix",),
        "bfs_bmatrix": ("bmatrix_node",),
    }
    for fine, coarse in coarser.items():
        for grp in report.stats[fine].groups:
            for c in coarse:
                assert len({keys[i][c] for i in grp}) == 1
            assert report.collisions(fine) <= min(report.collisions(c) for c in coarse)


@pytest.mark.parametrize("order", [5, 6, 7])
def test_membership_partitions_corpus(atlas7, order):
    tally = membership_tally(run_collider(atlas7[order]))
    assert list(tally) == list(MEMBERSHIP_CLASSES)
    assert sum(tally.values()) == len(atlas7[order])


def test_membership_requires_census_descriptors(atlas7):
    report = run_collider(atlas7[4], descriptors=["diameter"])
    with pytest.raises(ValueError):
        membership_tally(report)


def test_tuples_are_non_isomorphic(atlas7):
    corpus = atlas7[6]
    tuples = collision_tuples(corpus, "census_node")
    assert sum(len(t) * (len(t) - 1) // 2 for t in tuples) == 23
    for t in tuples:
        assert len(t) >= 2
        labels = [canonical_label(decode_graph6(s)) for s in t]
        assert len(set(labels)) == len(labels)
    assert len(collision_tuples(corpus, "census_node", max_tuples=2)) == 2
    assert collision_tuples(corpus, "census_stub") == []


def test_storage(atlas7):
    stats = storage_stats(atlas7[7])
    assert stats["bmatrix_stub"].max >= stats["census_stub"].max
    for name, s in stats.items():
        assert s.min > 0
        assert s.max / s.min < 10, name
        assert s.min <= s.median <= s.max
        assert sum(s.histogram.values()) == len(atlas7[7])


def test_worker_count_does_not_change_results(atlas7):
    corpus = atlas7[6]
    a = run_collider(corpus, workers=1, chunk_size=16)
    b = run_collider(corpus, workers=2, chunk_size=16)
    assert a.tags == b.tags
    for d in a.stats:
        assert a.stats[d].groups == b.stats[d].groups
    assert {k: v.histogram for k, v in a.storage.items()} == {k: v.histogram for k, v in b.storage.items()}


def test_empty_and_mixed_corpus():
    empty = run_collider(AtlasCorpus(5, []))
    assert empty.ceiling == 0 and empty.collisions("census_node") == 0
    with pytest.raises(ValueError):
        run_collider(AtlasCorpus(3, [path_graph(3), path_graph(4)]))
