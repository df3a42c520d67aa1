"""Command-line pipelines: atlas, census, collide, plot, gen, continuum, check."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import platform
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np
import scipy

from . import __version__
from .atlas import MAX_ENUMERATION_ORDER, AtlasError, enumerate_atlas, export_atlas, ingest_atlas
from .bmatrix import aggregate, bfs_bmatrix, serialize_bmatrix
from .census import (
    CONSTITUENTS,
    bfs_census,
    diameter,
    parse_census,
    radius,
    serialize_census,
)
from .collider import (
    COLLISION_DESCRIPTORS,
    DESCRIPTORS,
    MEMBERSHIP_CLASSES,
    collision_tuples,
    membership_tally,
    run_collider,
)
from .generators import gen_barabasi_albert, gen_erdos_renyi, gen_random_tree, gen_stochastic_block, gen_watts_strogatz
from .graph import FormatError, Graph, format_edgelist, parse_edgelist, read_graph6_lines
from .viz import (
    PlotOptions,
    census_census_layer,
    census_census_plot,
    circular_node_link,
    heatmap_plot,
    hop_census_layer,
    hop_census_plot,
    superimpose,
)

log = logging.getLogger("bfscensus")

SHORT = {"node": "cn", "edge": "ce", "stub": "cs"}
CC_PAIRS = (("node", "edge"), ("node", "stub"), ("edge", "stub"))


class CommandError(RuntimeError):
    pass


class UsageError(CommandError):
    """Bad flag values; reported with the argparse usage exit code."""


# --- shared helpers -------------------------------------------------------------

def read_graph(path: str | os.PathLike) -> Graph:
    """Graph6 (``.g6``, first graph) or edgelist text, chosen by extension."""
    p = Path(path)
    if not p.is_file():
        raise CommandError(f"{p}: no such file")
    text = p.read_text(encoding="ascii")
    if p.suffix in (".g6", ".graph6"):
        graphs = read_graph6_lines(text)
        if not graphs:
            raise CommandError(f"{p}: no graph in file")
        return graphs[0]
    g = parse_edgelist(text)
    if g.node_count == 0:
        raise CommandError(f"{p}: empty graph file")
    return g


def _out_dir(path: str) -> Path:
    out = Path(path)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CommandError(f"cannot create output directory {out}: {exc}") from None
    if not os.access(out, os.W_OK):
        raise CommandError(f"output directory {out} is not writable")
    return out


def _write(path: Path, data: str | bytes) -> None:
    if isinstance(data, str):
        data = data.encode("utf-8")
    path.write_bytes(data)


def write_manifest(out: Path, args: argparse.Namespace) -> None:
    flags = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "config")}
    manifest = {
        "tool": "bfscensus",
        "version": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "command": args.command,
        "flags": flags,
    }
    _write(out / "manifest.json", json.dumps(manifest, indent=2, sort_keys=True, default=str) + "\n")


def _plot_options(args) -> PlotOptions:
    return PlotOptions(
        normalize=args.normalize,
        width=args.width,
        height=args.height,
        opacity=args.opacity,
        color_mode=args.color_mode,
        log_color=not args.linear_color,
    )


def _pmap(func, items, threads: int):
    if threads <= 1 or len(items) <= 1:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))


# --- atlas ----------------------------------------------------------------------

def cmd_atlas(args) -> int:
    if args.max_order > MAX_ENUMERATION_ORDER:
        raise CommandError(
            f"--max-order {args.max_order} exceeds the built-in limit {MAX_ENUMERATION_ORDER}; "
            "supply larger orders as Graph6 files to `collide`"
        )
    out = _out_dir(args.out)
    for corpus in enumerate_atlas(args.max_order, min_order=args.min_order):
        export_atlas(corpus, out / f"atlas_{corpus.order}.g6")
        log.info("atlas_%d.g6: %d graphs", corpus.order, len(corpus))
    write_manifest(out, args)
    return 0


# --- census ---------------------------------------------------------------------

def cmd_census(args) -> int:
    g = read_graph(args.graph)
    out = _out_dir(args.out)
    ct = bfs_census(g)
    for name in CONSTITUENTS:
        _write(out / f"census_{name}.txt", serialize_census(ct[name], canonical=True) + b"\n")
        _write(out / f"census_{name}_by_source.txt", serialize_census(ct[name], canonical=False) + b"\n")
        _write(out / f"bmatrix_{name}.txt", serialize_bmatrix(aggregate(ct[name], g.node_count)) + b"\n")
    stats = {
        "node_count": g.node_count,
        "edge_count": g.edge_count,
        "connected": ct.connected,
        "diameter": diameter(ct),
        "radius": radius(ct),
        "eccentricity": [len(v) - 1 for v in ct.node.vectors],
        "auc": {name: [sum(v) for v in ct[name].vectors] for name in CONSTITUENTS},
    }
    _write(out / "stats.json", json.dumps(stats, indent=2, sort_keys=True) + "\n")
    _write(out / "graph.edgelist", format_edgelist(g))
    _write(out / "graph.nodes", f"{g.node_count}\n")
    write_manifest(out, args)
    return 0


# --- collide --------------------------------------------------------------------

def cmd_collide(args) -> int:
    out = _out_dir(args.out)
    descriptors = args.descriptors or list(DESCRIPTORS)
    corpora = sorted((ingest_atlas(p) for p in args.atlas), key=lambda c: c.order)
    tuples_dir = out / "tuples"
    tuples_dir.mkdir(exist_ok=True)
    collision_rows, membership_rows, storage_rows = [], [], []
    full = {}
    for corpus in corpora:
        report = run_collider(corpus, descriptors, workers=args.threads)
        for name in DESCRIPTORS:
            if name in report.stats:
                s = report.stats[name]
                collision_rows.append([corpus.order, name, report.corpus_size, s.ceiling,
                                       s.collisions, s.groups_ge2, s.max_group])
            if name in report.storage:
                st = report.storage[name]
                storage_rows.append([corpus.order, name, st.min, st.median, st.max])
        entry = {
            "corpus_size": report.corpus_size,
            "ceiling": report.ceiling,
            "collisions": {k: v.collisions for k, v in report.stats.items()},
            "group_size_histogram": {k: {str(a): b for a, b in v.group_sizes.items()}
                                     for k, v in report.stats.items()},
            "storage_histogram": {k: {str(a): b for a, b in v.histogram.items()}
                                  for k, v in report.storage.items()},
        }
        if report.tags is not None:
            tally = membership_tally(report)
            for cls in MEMBERSHIP_CLASSES:
                membership_rows.append([corpus.order, cls, tally[cls]])
            entry["membership"] = tally
            entry["tags"] = report.tags
        full[str(corpus.order)] = entry
        for name in report.stats:
            groups = collision_tuples(corpus, name, args.max_tuples, report=report)
            if groups:
                text = "\n\n".join("\n".join(grp) for grp in groups) + "\n"
                _write(tuples_dir / f"{corpus.order}_{name}.g6", text)
    _write_csv(out / "collisions.csv",
               ["order", "descriptor", "corpus_size", "ceiling", "collisions", "groups_ge2", "max_group"],
               collision_rows)
    _write_csv(out / "membership.csv", ["order", "tag", "count"], membership_rows)
    _write_csv(out / "storage.csv", ["order", "descriptor", "min_bytes", "median_bytes", "max_bytes"],
               storage_rows)
    _write(out / "report.json", json.dumps(full, indent=1, sort_keys=True) + "\n")
    write_manifest(out, args)
    return 0


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="", encoding="ascii") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


# --- plot -----------------------------------------------------------------------

def render_plot_set(g: Graph, opts: PlotOptions) -> dict[str, str]:
    """The ten standard images of one graph, keyed by file name."""
    ct = bfs_census(g)
    files = {}
    for name in CONSTITUENTS:
        files[f"hop_{SHORT[name]}.svg"] = hop_census_plot(ct[name], opts)
    for a, b in CC_PAIRS:
        files[f"cc_{SHORT[a]}_{SHORT[b]}.svg"] = census_census_plot(ct[a], ct[b], opts)
    for name in CONSTITUENTS:
        files[f"heatmap_{SHORT[name]}.svg"] = heatmap_plot(aggregate(ct[name], g.node_count), opts)
    files["nodelink.svg"] = circular_node_link(g, opts)
    return files


def _plot_job(job):
    path, opts = job
    return render_plot_set(read_graph(path), opts)


def cmd_plot(args) -> int:
    out = _out_dir(args.out)
    opts = _plot_options(args)
    graphs = [Path(p) for p in args.graphs]
    stems = [p.stem for p in graphs]
    if len(set(stems)) != len(stems):
        raise CommandError("graph files must have distinct names")
    results = _pmap(_plot_job, [(str(p), opts) for p in graphs], args.threads)
    for stem, files in zip(stems, results):
        target = out / stem if len(graphs) > 1 or args.subdirs else out
        target.mkdir(exist_ok=True)
        for name, svg in files.items():
            _write(target / name, svg)
    if args.superimpose:
        if opts.normalize:
            raise CommandError("--superimpose needs absolute axes; drop --normalize")
        cts = [bfs_census(read_graph(p)) for p in graphs]
        for name in ("node", "stub"):
            _write(out / f"superimposed_hop_{SHORT[name]}.svg",
                   superimpose([hop_census_layer(ct[name], opts) for ct in cts], opts))
        _write(out / "superimposed_cc_cn_cs.svg",
               superimpose([census_census_layer(ct.node, ct.stub, opts) for ct in cts], opts))
    write_manifest(out, args)
    return 0


# --- gen ------------------------------------------------------------------------

def generate(args) -> Graph:
    model = args.model
    need = {"er": ("n", "p"), "ws": ("n", "k", "p"), "ba": ("n", "m"),
            "sbm": ("sizes", "p_in", "p_out"), "tree": ("n",)}[model]
    missing = [f"--{k.replace('_', '-')}" for k in need if getattr(args, k) is None]
    if missing:
        raise UsageError(f"model {model} needs {', '.join(missing)}")
    try:
        if model == "er":
            return gen_erdos_renyi(args.n, args.p, args.seed)
        if model == "ws":
            return gen_watts_strogatz(args.n, args.k, args.p, args.seed)
        if model == "ba":
            return gen_barabasi_albert(args.n, args.m, args.seed)
        if model == "sbm":
            return gen_stochastic_block(args.sizes, args.p_in, args.p_out, args.seed)
        return gen_random_tree(args.n, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_gen(args) -> int:
    g = generate(args)
    out = Path(args.out)
    if out.parent and not out.parent.exists():
        _out_dir(str(out.parent))
    _write(out, format_edgelist(g))
    write_manifest(out.parent, args)
    log.info("%s: %d nodes, %d edges", out, g.node_count, g.edge_count)
    return 0


# --- continuum ------------------------------------------------------------------

def continuum_values(start: float, stop: float, steps: int, integer: bool = False) -> list:
    if steps < 1:
        raise UsageError("--steps must be at least 1")
    if start <= 0 or stop <= 0:
        raise UsageError("geometric series needs positive --start and --stop")
    values = np.geomspace(start, stop, steps).tolist() if steps > 1 else [float(start)]
    if integer:
        return [int(round(v)) for v in values]
    return [float(v) for v in values]


def cmd_continuum(args) -> int:
    out = _out_dir(args.out)
    values = continuum_values(args.start, args.stop, args.steps, integer=args.model == "ba")
    opts = _plot_options(args)
    summary = []
    for step, value in enumerate(values):
        ns = argparse.Namespace(**vars(args))
        ns.seed = args.seed + step
        if args.model == "er":
            ns.p = min(1.0, value)
        elif args.model == "ws":
            ns.p = min(1.0, value)
        elif args.model == "ba":
            ns.m = value
        else:
            raise CommandError(f"continuum supports er, ws and ba, not {args.model}")
        g = generate(ns)
        ct = bfs_census(g)
        _write(out / f"step_{step:02d}.edgelist", format_edgelist(g))
        _write(out / f"step_{step:02d}_cn_cs.svg", census_census_plot(ct.node, ct.stub, opts))
        summary.append({"step": step, "value": value, "seed": ns.seed,
                        "nodes": g.node_count, "edges": g.edge_count})
    _write(out / "continuum.json", json.dumps(summary, indent=2) + "\n")
    write_manifest(out, args)
    return 0


# --- check ----------------------------------------------------------------------

def cmd_check(args) -> int:
    out = _out_dir(args.out)
    checked = 0
    mismatches = []
    for path in args.atlas:
        corpus = ingest_atlas(path)
        for i, g in enumerate(corpus.graphs):
            checked += 1
            if aggregate(bfs_census(g).node, g.node_count) != bfs_bmatrix(g):
                mismatches.append({"source": str(path), "index": i})
    for d in args.census_dir:
        d = Path(d)
        n = int((d / "graph.nodes").read_text().strip())
        g = parse_edgelist((d / "graph.edgelist").read_text(), node_count_hint=n)
        checked += 1
        try:
            ci = parse_census((d / "census_node.txt").read_bytes(), "node")
            ok = ci.node_count == g.node_count and aggregate(ci, g.node_count) == bfs_bmatrix(g)
        except (ValueError, IndexError):
            ok = False
        if not ok:
            mismatches.append({"source": str(d), "index": 0})
    report = {"checked": checked, "mismatches": len(mismatches), "details": mismatches}
    _write(out / "integrity.json", json.dumps(report, indent=2) + "\n")
    write_manifest(out, args)
    print(f"checked {checked} graphs, {len(mismatches)} mismatches")
    return 0 if not mismatches else 1


# --- parser ---------------------------------------------------------------------

def _descriptor_list(text: str) -> list[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    bad = [t for t in names if t not in DESCRIPTORS]
    if bad:
        raise argparse.ArgumentTypeError(
            f"unknown descriptor(s) {', '.join(bad)}; choose from {', '.join(DESCRIPTORS)}")
    return names


def _size_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad block sizes {text!r}") from None


def _add_plot_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--normalize", action="store_true", help="draw inside the unit square")
    p.add_argument("--width", type=int, default=480)
    p.add_argument("--height", type=int, default=360)
    p.add_argument("--opacity", type=float, default=None)
    p.add_argument("--color-mode", choices=("uniform", "by_node_index"), default="uniform")
    p.add_argument("--linear-color", action="store_true", help="linear instead of log heatmap colours")


def _add_gen_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--sizes", type=_size_list)
    p.add_argument("--p-in", type=float)
    p.add_argument("--p-out", type=float)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bfscensus", description=__doc__)
    parser.add_argument("--config", help="JSON file whose keys override flag defaults")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    threads = os.cpu_count() or 1

    p = sub.add_parser("atlas", help="enumerate connected graphs per order as Graph6")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--min-order", type=int, default=3)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_atlas)

    p = sub.add_parser("census", help="Census-Node/Edge/Stub of one graph")
    p.add_argument("graph")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("collide", help="collision counts over atlas files")
    p.add_argument("atlas", nargs="+")
    p.add_argument("--descriptors", type=_descriptor_list, default=None,
                   help="comma-separated subset of: " + ",".join(DESCRIPTORS))
    p.add_argument("--max-tuples", type=int, default=None)
    p.add_argument("--threads", type=int, default=threads)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_collide)

    p = sub.add_parser("plot", help="render the ten standard SVG plots per graph")
    p.add_argument("graphs", nargs="+")
    p.add_argument("--out", required=True)
    p.add_argument("--threads", type=int, default=threads)
    p.add_argument("--superimpose", action="store_true",
                   help="also draw all graphs in one absolute frame")
    p.add_argument("--subdirs", action="store_true", help="one subdirectory per graph even for one graph")
    _add_plot_flags(p)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("gen", help="write a seeded random graph as an edgelist")
    p.add_argument("model", choices=("er", "ws", "ba", "sbm", "tree"))
    _add_gen_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("continuum", help="graphs and CN-CS plots along a geometric parameter series")
    p.add_argument("model", choices=("er", "ws", "ba"))
    _add_gen_flags(p)
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--steps", type=int, default=12)
    p.add_argument("--out", required=True)
    _add_plot_flags(p)
    p.set_defaults(func=cmd_continuum)

    p = sub.add_parser("check", help="BFS-BMatrix against Census-derived BMatrix-Node")
    p.add_argument("atlas", nargs="*", default=[])
    p.add_argument("--census-dir", action="append", default=[],
                   help="output directory of a previous `census` run")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_check)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    with open(known.config, encoding="utf-8") as fh:
        overrides = json.load(fh)
    for action in parser._subparsers._group_actions:  # noqa: SLF001
        for sp in action.choices.values():
            sp.set_defaults(**overrides)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    _apply_config(parser, argv)
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"bfscensus {args.command}: usage error: {exc}", file=sys.stderr)
        return 2
    except (CommandError, AtlasError, FormatError, OSError) as exc:
        print(f"bfscensus {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
