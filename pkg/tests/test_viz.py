import json
import math
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, settings

from bfscensus.bmatrix import BMatrix, aggregate, bfs_bmatrix
from bfscensus.census import CensusInstance, bfs_census, diameter
from bfscensus.generators import (
    complete_graph,
    cycle_graph,
    gen_barabasi_albert,
    gen_erdos_renyi,
    gen_random_tree,
    gen_watts_strogatz,
    path_graph,
)
from bfscensus.graph import Graph
from bfscensus.viz import (
    PlotError,
    PlotOptions,
    axis_ranges,
    census_census_layer,
    census_census_plot,
    circular_node_link,
    dumps_sidecar,
    heatmap_plot,
    hop_census_layer,
    hop_census_plot,
    superimpose,
)
from bfscensus.viz.colormap import INFERNO, ramp

from conftest import graphs, load_fixture

NS = "{http://www.w3.org/2000/svg}"


def parse(svg):
    return ET.fromstring(svg.encode())


def polylines(svg):
    out = []
    for el in parse(svg).iter(NS + "polyline"):
        pts = [tuple(float(c) for c in p.split(",")) for p in el.get("points").split()]
        out.append((el, pts))
    return out


def data_range(svg, axis):
    axes = parse(svg).find(f"{NS}g[@class='axes']")
    lo, hi = axes.get(f"data-{axis}-range").split()
    return float(lo), float(hi)


def test_colormap_table():
    assert len(INFERNO) == 256
    assert ramp(0) == INFERNO[0] and ramp(1) == INFERNO[-1]
    assert ramp(-3) == INFERNO[0] and ramp(7) == INFERNO[-1]
    # dark to bright
    lum = [sum(int(c[i:i + 2], 16) for i in (1, 3, 5)) for c in INFERNO]
    assert lum[0] < lum[128] < lum[-1]


def test_options_validation():
    for bad in ({"width": 0}, {"height": -1}, {"opacity": 0}, {"opacity": 1.5}, {"color_mode": "rainbow"}):
        with pytest.raises(PlotError):
            PlotOptions(**bad)
    assert PlotOptions().line_opacity(201) == 0.15
    assert PlotOptions().line_opacity(200) == 0.8
    assert PlotOptions(opacity=0.5).line_opacity(5000) == 0.5


@settings(max_examples=60, deadline=None)
@given(graphs(min_nodes=1, max_nodes=9))
def test_hop_plot_shape(g):
    for ci in bfs_census(g):
        svg = hop_census_plot(ci)
        assert svg == hop_census_plot(ci)
        lines = polylines(svg)
        assert len(lines) == g.node_count
        for (el, pts), v in zip(lines, ci.vectors):
            assert pts == [(h + 1, x) for h, x in enumerate(v)]
        xs = [p[0] for _, pts in lines for p in pts]
        ys = [p[1] for _, pts in lines for p in pts]
        assert max(xs) == ci.max_length
        assert max(ys) == ci.max_value
        assert data_range(svg, "x") == (1, ci.max_length)
        assert data_range(svg, "y") == (0, ci.max_value)


@settings(max_examples=60, deadline=None)
@given(graphs(min_nodes=1, max_nodes=9))
def test_census_census_shape(g):
    ct = bfs_census(g)
    svg = census_census_plot(ct.node, ct.stub)
    lines = polylines(svg)
    assert len(lines) == g.node_count
    for (_, pts), vx, vy in zip(lines, ct.node.vectors, ct.stub.vectors):
        assert pts == [(float(a), float(b)) for a, b in zip(vx, vy)]


def test_seven_node_example():
    g = load_fixture("seven_node.edgelist")
    svg = hop_census_plot(bfs_census(g).node)
    lines = polylines(svg)
    assert len(lines) == 7
    assert sum(1 for _, pts in lines if (3.0, 0.0) in pts) == 4


def test_single_node_marker():
    svg = hop_census_plot(bfs_census(Graph.empty(1)).node)
    (el, pts), = polylines(svg)
    assert pts == [(1.0, 0.0)]
    assert len(list(parse(svg).iter(NS + "circle"))) == 1


def test_hop_axes_equal_diameter_plus_one():
    for g in (path_graph(6), cycle_graph(9), gen_random_tree(40, 3), complete_graph(4)):
        ct = bfs_census(g)
        svg = hop_census_plot(ct.stub)
        bars = parse(svg).find(f"{NS}g[@class='hop-axes']")
        assert len(list(bars)) == diameter(ct) + 1


def test_normalized_unit_square():
    ct = bfs_census(gen_erdos_renyi(30, 0.2, 1))
    svg = hop_census_plot(ct.stub, PlotOptions(normalize=True))
    pts = [p for _, line in polylines(svg) for p in line]
    assert min(p[0] for p in pts) == 0 and max(p[0] for p in pts) == 1
    assert max(p[1] for p in pts) == 1
    assert data_range(svg, "x") == (0, 1)


def test_tree_trajectories_on_diagonal():
    for seed in range(5):
        ct = bfs_census(gen_random_tree(50, seed))
        for _, pts in polylines(census_census_plot(ct.node, ct.stub)):
            assert all(x == y for x, y in pts)


@pytest.mark.parametrize("n", [5, 10, 25])
def test_complete_graph_anti_diagonal(n):
    ct = bfs_census(complete_graph(n))
    for _, pts in polylines(census_census_plot(ct.node, ct.stub)):
        assert pts == [(n - 1, n - 1), (0, (n - 1) * (n - 2))]


def test_identical_instance_on_diagonal():
    ct = bfs_census(gen_erdos_renyi(20, 0.2, 5))
    for _, pts in polylines(census_census_plot(ct.edge, ct.edge)):
        assert all(x == y for x, y in pts)


def test_census_census_shape_mismatch():
    a = bfs_census(path_graph(4)).node
    b = bfs_census(complete_graph(4)).stub
    with pytest.raises(PlotError):
        census_census_plot(a, b)
    with pytest.raises(PlotError):
        hop_census_plot(CensusInstance("node", ()))


def cells(svg):
    return {(int(r.get("data-hop")), int(r.get("data-degree"))): (int(r.get("data-count")), r.get("fill"))
            for r in parse(svg).iter(NS + "rect") if r.get("data-hop")}


def test_heatmap_triangle_saturated():
    got = cells(heatmap_plot(bfs_bmatrix(complete_graph(3))))
    assert set(got) == {(1, 2), (2, 0)}
    assert {fill for _, fill in got.values()} == {INFERNO[-1]}


def test_heatmap_seven_node_cell():
    g = load_fixture("seven_node.edgelist")
    got = cells(heatmap_plot(aggregate(bfs_census(g).node)))
    count, fill = got[(3, 0)]
    top = max(c for c, _ in got.values())
    assert count == 4 and fill == ramp(math.log1p(4) / math.log1p(top))
    # brighter than every cell with a smaller count
    assert all(c >= 4 for c, f in got.values() if f == fill)


def test_heatmap_uniform_and_log_scale():
    got = cells(heatmap_plot(BMatrix(((2, 2), (2, 2)))))
    assert len({fill for _, fill in got.values()}) == 1
    b = BMatrix(((9, 1), (0, 10)))
    log = cells(heatmap_plot(b))
    lin = cells(heatmap_plot(b, PlotOptions(log_color=False)))
    assert (2, 0) not in log  # zero cell left as background
    assert log[(1, 1)][1] == ramp(math.log1p(1) / math.log1p(10))
    assert lin[(1, 1)][1] == ramp(0.1)
    assert heatmap_plot(BMatrix(())).count("<rect") == 1


def test_heatmap_normalized():
    b = bfs_bmatrix(cycle_graph(7))
    assert data_range(heatmap_plot(b), "x") == (0, b.shape[0])
    assert data_range(heatmap_plot(b, PlotOptions(normalize=True)), "x") == (0, 1)


def test_circular_layout():
    assert len(list(parse(circular_node_link(Graph.empty(1))).iter(NS + "circle"))) == 1
    svg = circular_node_link(path_graph(3))
    root = parse(svg)
    assert len(list(root.iter(NS + "circle"))) == 3
    assert len(list(root.iter(NS + "line"))) == 2
    ring = parse(circular_node_link(cycle_graph(8)))
    pts = [(float(c.get("cx")), float(c.get("cy"))) for c in ring.iter(NS + "circle")]
    radii = {round(((x - 240) ** 2 + (y - 180) ** 2) ** 0.5, 2) for x, y in pts}
    assert len(radii) == 1
    assert pts[0][0] == 240 and pts[0][1] < 180  # index 0 at the top


def test_color_by_node_index():
    ct = bfs_census(path_graph(5))
    svg = hop_census_plot(ct.node, PlotOptions(color_mode="by_node_index"))
    assert len({el.get("stroke") for el, _ in polylines(svg)}) == 5


def test_superimpose():
    ct = bfs_census(path_graph(4))
    with pytest.raises(PlotError):
        superimpose([])
    with pytest.raises(PlotError):
        superimpose([hop_census_layer(ct.node, PlotOptions(normalize=True))])
    with pytest.raises(PlotError):
        superimpose([hop_census_layer(ct.node), census_census_layer(ct.node, ct.stub)])
    assert superimpose([hop_census_layer(ct.node)]) == hop_census_plot(ct.node)
    assert superimpose([census_census_layer(ct.node, ct.stub)]) == census_census_plot(ct.node, ct.stub)


def test_superimposed_generators_distinct_colors():
    gs = [gen_erdos_renyi(120, 0.05, 1), gen_watts_strogatz(120, 6, 0.1, 1), gen_barabasi_albert(120, 3, 1)]
    layers = [census_census_layer(bfs_census(g).node, bfs_census(g).stub) for g in gs]
    svg = superimpose(layers)
    lines = polylines(svg)
    assert len(lines) == 360
    by_layer = {}
    for el, _ in lines:
        by_layer.setdefault(el.get("data-layer"), set()).add(el.get("stroke"))
    assert all(len(c) == 1 for c in by_layer.values())
    assert len(set.union(*by_layer.values())) == 3
    ranges = axis_ranges(layers)
    assert data_range(svg, "x") == tuple(ranges["x"]) and data_range(svg, "y") == tuple(ranges["y"])
    assert json.loads(dumps_sidecar(ranges)) == ranges
    assert parse(svg).find(f"{NS}g[@class='lines']").get("stroke-opacity") == "0.15"
