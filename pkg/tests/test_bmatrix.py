import pytest
from hypothesis import given, settings

from bfscensus.bmatrix import (
    BMatrix,
    aggregate,
    bfs_bmatrix,
    canonical_bmatrix,
    parse_bmatrix,
    serialize_bmatrix,
)
from bfscensus.census import bfs_census, canonical_census
from bfscensus.generators import (
    complete_graph,
    desargues,
    dodecahedron,
    gen_barabasi_albert,
    gen_erdos_renyi,
    gen_watts_strogatz,
    path_graph,
)
from bfscensus.graph import Graph

from conftest import graphs, graphs_with_permutation, load_fixture
from oracles import shell_matrix


def test_seven_node_example_cell():
    g = load_fixture("seven_node.edgelist")
    b = aggregate(bfs_census(g).node, g.node_count)
    assert b.cell(3, 0) == 4
    assert b.shape[0] == 4


def test_triangle():
    b = aggregate(bfs_census(complete_graph(3)).node, 3)
    assert b.cells == ((0, 0, 3), (3, 0, 0))
    assert bfs_bmatrix(complete_graph(3)) == b


def test_single_node():
    b = aggregate(bfs_census(Graph.empty(1)).node, 1)
    assert b.cells == ((1,),)
    assert bfs_bmatrix(Graph.empty(1)) == b


def test_path_shells():
    b = bfs_bmatrix(path_graph(3))
    assert (b.cell(1, 1), b.cell(1, 2)) == (2, 1)
    assert (b.cell(2, 1), b.cell(2, 0)) == (2, 1)
    assert b.cell(3, 0) == 3
    assert b.shape == (3, 3)
    assert aggregate(bfs_census(path_graph(3)).node, 3) == b


@settings(max_examples=200, deadline=None)
@given(graphs(max_nodes=9))
def test_bfs_bmatrix_against_shell_oracle(g):
    expected = shell_matrix(g.node_count, g.edges()) if g.node_count else []
    assert [list(r) for r in bfs_bmatrix(g).cells] == expected


@settings(max_examples=200, deadline=None)
@given(graphs(min_nodes=1, max_nodes=9))
def test_row_sums_all_constituents(g):
    ct = bfs_census(g)
    for inst in ct:
        b = aggregate(inst, g.node_count)
        assert all(sum(row) == g.node_count for row in b.cells)
        assert all(c >= 0 for row in b.cells for c in row)


def test_generator_graphs_oracle_equality():
    gs = [gen_erdos_renyi(80, 0.05, s) for s in range(3)]
    gs += [gen_watts_strogatz(60, 4, 0.2, s) for s in range(3)]
    gs += [gen_barabasi_albert(70, 2, s) for s in range(3)]
    for g in gs:
        assert bfs_bmatrix(g) == aggregate(bfs_census(g).node, g.node_count)


def test_row_sum_mismatch_rejected():
    from bfscensus.census import CensusInstance

    with pytest.raises(ValueError):
        aggregate(CensusInstance("node", ((1, 0), (1, 0))), node_count=3)


def test_serialization_round_trip():
    b = bfs_bmatrix(path_graph(4))
    raw = serialize_bmatrix(b)
    assert raw.splitlines()[0] == b"4 3"
    assert parse_bmatrix(raw) == b
    with pytest.raises(ValueError):
        parse_bmatrix("2 2\n1 1\n")


@settings(max_examples=150, deadline=None)
@given(graphs_with_permutation(max_nodes=8))
def test_keys_isomorphism_invariant(gp):
    g, perm = gp
    a, b = bfs_census(g), bfs_census(g.relabel(perm))
    for x, y in zip(a, b):
        assert canonical_bmatrix(aggregate(x)) == canonical_bmatrix(aggregate(y))


@settings(max_examples=150, deadline=None)
@given(graphs(max_nodes=7), graphs(max_nodes=7))
def test_census_equality_implies_bmatrix_equality(g, h):
    if g.node_count != h.node_count:
        return
    cg, ch = bfs_census(g), bfs_census(h)
    for x, y in zip(cg, ch):
        if canonical_census(x) == canonical_census(y):
            assert canonical_bmatrix(aggregate(x)) == canonical_bmatrix(aggregate(y))


def test_dodecahedron_desargues():
    dod, des = load_fixture("dodecahedron.edgelist"), load_fixture("desargues.edgelist")
    assert dod == dodecahedron() and des == desargues()
    cd, cs = bfs_census(dod), bfs_census(des)
    assert canonical_bmatrix(aggregate(cd.node)) == canonical_bmatrix(aggregate(cs.node))
    assert canonical_bmatrix(bfs_bmatrix(dod)) == canonical_bmatrix(bfs_bmatrix(des))
    assert canonical_census(cd.stub) != canonical_census(cs.stub)


def test_empty_matrix():
    b = BMatrix(())
    assert b.shape == (0, 0) and b.max_count == 0 and b.cell(1, 0) == 0
