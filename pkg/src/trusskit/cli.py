"""Command-line surface: decompositions, benchmarks, stats, and exports.

Every subcommand reads one edge-list file, writes TSV (or JSON) artifacts
into an output directory, and exits 0 on success, 1 on runtime or
validation failures (one diagnostic line on stderr), 2 on usage errors.
All randomness flows through --seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from xml.sax.saxutils import quoteattr

from . import bench as bench_mod
from .graph import Graph, load_edge_list
from .strong import strong_truss_family, strong_trusses_at, summit_strong_trusses
from .triangles import edge_supports
from .trapeze import trapeze_level_run
from .truss import (
    KClassDecomposition,
    k_classes,
    summit_trusses,
    truss_dendrogram,
    trusses_at,
)
from .weighted import TriangleWeightSpec, weighted_k_classes, weighted_strong_family


class CommandError(Exception):
    """Validation or runtime failure: message for stderr, exit code 1."""


# -- output helpers -------------------------------------------------------


def renumber(clusters: list[tuple[int, frozenset[int] | list[int]]]):
    """Assign output ids 0..C-1 in order of each cluster's first edge."""
    ordered = sorted(clusters, key=lambda kc: min(kc[1]))
    return [(i, k, sorted(edges)) for i, (k, edges) in enumerate(ordered)]


def clusters_tsv(graph: Graph, rows, kind: str | None = None) -> str:
    lines = []
    for idx, k, edges in rows:
        for eid in edges:
            u, v = graph.edge_label_pair(eid)
            cells = [str(k)]
            if kind is not None:
                cells.append(kind)
            cells += [str(idx), u, v]
            lines.append("\t".join(cells))
    return "\n".join(lines) + ("\n" if lines else "")


def clusters_json(graph: Graph, rows, kind: str | None = None) -> str:
    out = []
    for idx, k, edges in rows:
        entry = {
            "k": k,
            "index": idx,
            "edges": [list(graph.edge_label_pair(e)) for e in edges],
        }
        if kind is not None:
            entry["kind"] = kind
        out.append(entry)
    return json.dumps({"clusters": out}, indent=2, sort_keys=True) + "\n"


def labels_tsv(graph: Graph) -> str:
    return "".join(f"{i}\t{label}\n" for i, label in enumerate(graph.labels))


def dendrogram_tsv(family) -> str:
    lines = []
    for merge in family.merges:
        absorbed = ",".join(str(a) for a in merge.absorbed)
        lines.append(f"{merge.level}\t{absorbed}\t{merge.survivor}")
    return "\n".join(lines) + ("\n" if lines else "")


def dot_export(graph: Graph, rows) -> str:
    """One DOT subgraph per cluster, each edge tagged with its cluster."""
    lines = ["graph clusters {"]
    for idx, k, edges in rows:
        lines.append(f"  subgraph cluster_{idx} {{")
        lines.append(f'    label="k={k}";')
        for eid in edges:
            u, v = graph.edge_label_pair(eid)
            lines.append(f'    "{u}" -- "{v}" [cluster={idx}];')
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graphml_export(graph: Graph, decomposition: KClassDecomposition, rows) -> str:
    cluster_of: dict[int, int] = {}
    for idx, _, edges in rows:
        for eid in edges:
            cluster_of[eid] = idx
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">',
        '  <key id="phi" for="edge" attr.name="phi" attr.type="int"/>',
        '  <key id="cluster" for="edge" attr.name="cluster" attr.type="int"/>',
        '  <graph edgedefault="undirected">',
    ]
    for label in graph.labels:
        out.append(f"    <node id={quoteattr(label)}/>")
    for eid, (lo, hi) in enumerate(graph.edges):
        out.append(f"    <edge source={quoteattr(graph.labels[lo])} target={quoteattr(graph.labels[hi])}>")
        out.append(f'      <data key="phi">{decomposition.phi[eid]}</data>')
        out.append(f'      <data key="cluster">{cluster_of.get(eid, -1)}</data>')
        out.append("    </edge>")
    out.append("  </graph>")
    out.append("</graphml>")
    return "\n".join(out) + "\n"


def write(outdir: Path, name: str, text: str) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / name).write_text(text, encoding="utf-8")


def load_input(path: str, weighted: bool) -> Graph:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return load_edge_list(handle, weighted=weighted)
    except OSError as exc:
        raise CommandError(f"cannot read {path}: {exc.strerror}") from exc
    except ValueError as exc:
        raise CommandError(str(exc)) from exc


# -- subcommands ----------------------------------------------------------


def cmd_decompose(args: argparse.Namespace) -> None:
    weighted = args.command == "weighted-truss"
    graph = load_input(args.input, weighted=weighted or args.weighted)
    if weighted:
        fn = "minimum" if args.weight_fn == "min" else "harmonic"
        spec = TriangleWeightSpec(fn, _parse_alpha(args.alpha))
        decomposition = weighted_k_classes(graph, spec)
    else:
        decomposition = k_classes(graph, edge_supports(graph))

    outdir = Path(args.out)
    fmt = args.format
    write(outdir, "labels.tsv", labels_tsv(graph))

    phi_rows = "".join(
        f"{u}\t{v}\t{decomposition.phi[e]}\n"
        for e, (u, v) in ((e, graph.edge_label_pair(e)) for e in range(graph.m))
    )
    write(outdir, "trussness.tsv", phi_rows)

    if args.command in ("truss", "weighted-truss"):
        k = args.k
        if k < 2:
            raise CommandError("k must be at least 2")
        rows = renumber([(k, mem) for mem in trusses_at(decomposition, graph, k).members])
        kind = None
        family = truss_dendrogram(decomposition, graph)
        write(outdir, "dendrogram.tsv", dendrogram_tsv(family))
    elif args.command == "strong-truss":
        k = args.k
        if k < 2:
            raise CommandError("k must be at least 2")
        family = strong_truss_family(graph, decomposition)
        rows = renumber([(k, mem) for mem in strong_trusses_at(family, k)])
        kind = "strong"
        write(outdir, "dendrogram.tsv", dendrogram_tsv(family))
    else:  # summit
        if args.strong:
            family = strong_truss_family(graph, decomposition)
            rows = renumber(summit_strong_trusses(family))
            kind = "strong"
        else:
            rows = renumber(summit_trusses(decomposition, graph))
            kind = None

    if fmt == "tsv":
        write(outdir, "clusters.tsv", clusters_tsv(graph, rows, kind))
    else:
        write(outdir, "clusters.json", clusters_json(graph, rows, kind))
    if args.dot:
        write(outdir, "clusters.dot", dot_export(graph, rows))
    if args.graphml:
        write(outdir, "clusters.graphml", graphml_export(graph, decomposition, rows))
    print(f"{len(rows)} clusters -> {outdir}")


def cmd_trapeze(args: argparse.Namespace) -> None:
    graph = load_input(args.input, weighted=False)
    if args.levels:
        try:
            schedule = [int(tok) for tok in args.levels.split(",") if tok]
        except ValueError as exc:
            raise CommandError(f"bad --levels: {exc}") from exc
    else:
        schedule = [1 << i for i in range(args.geometric + 1)]
    if not schedule or schedule[0] < 1 or any(
        b <= a for a, b in zip(schedule, schedule[1:])
    ):
        raise CommandError("levels must be strictly ascending and at least 1")

    run = trapeze_level_run(graph, schedule)
    outdir = Path(args.out)
    write(outdir, "labels.tsv", labels_tsv(graph))

    want = args.command  # trapeze | strong-trapeze | summit-trapeze
    rows_all: list[tuple[int, int, str, list[int]]] = []
    if want in ("trapeze", "strong-trapeze"):
        source = run.weak if want == "trapeze" else run.strong
        kindname = "weak" if want == "trapeze" else "strong"
        for k in schedule:
            for idx, kk, edges in renumber([(k, m) for m in source[k].members]):
                rows_all.append((kk, idx, kindname, edges))
    else:
        for idx, kk, edges in renumber(list(run.summits)):
            rows_all.append((kk, idx, "summit", edges))

    if args.format == "tsv":
        lines = []
        for k, idx, kind, edges in rows_all:
            for eid in edges:
                u, v = graph.edge_label_pair(eid)
                lines.append(f"{k}\t{kind}\t{idx}\t{u}\t{v}")
        write(outdir, "trapezes.tsv", "\n".join(lines) + ("\n" if lines else ""))
    else:
        payload = [
            {
                "k": k,
                "kind": kind,
                "index": idx,
                "edges": [list(graph.edge_label_pair(e)) for e in edges],
            }
            for k, idx, kind, edges in rows_all
        ]
        write(outdir, "trapezes.json", json.dumps({"trapezes": payload}, indent=2, sort_keys=True) + "\n")
    # summits always accompany a level run
    summit_lines = []
    for idx, kk, edges in renumber(list(run.summits)):
        for eid in edges:
            u, v = graph.edge_label_pair(eid)
            summit_lines.append(f"{kk}\tsummit\t{idx}\t{u}\t{v}")
    write(outdir, "summits.tsv", "\n".join(summit_lines) + ("\n" if summit_lines else ""))
    print(f"{len(rows_all)} entries -> {outdir}")


def cmd_bench(args: argparse.Namespace) -> None:
    if args.sizes:
        try:
            lo, hi = (int(tok) for tok in args.sizes.split(".."))
        except ValueError as exc:
            raise CommandError(f"bad --sizes, expected lo..hi: {args.sizes}") from exc
        group_size: int | tuple[int, int] = (lo, hi)
    elif args.size is not None:
        group_size = args.size
    else:
        raise CommandError("one of --size or --sizes is required")
    try:
        model = bench_mod.PlantedModel(
            l=args.l, group_size=group_size, p=args.p, mu=args.mu,
            seed=args.seed, inter_prob=args.r,
        )
        k_range = range(args.k_min, args.k_max + 1) if args.k_max else None
        report = bench_mod.run_benchmark(
            model, args.method, trials=args.trials, k_range=k_range
        )
    except bench_mod.InfeasibleModelError as exc:
        raise CommandError(str(exc)) from exc
    except ValueError as exc:
        raise CommandError(str(exc)) from exc
    outdir = Path(args.out)
    if args.format == "json":
        rows = [
            {"method": r.method, "k": r.k, "mean_nmi": round(r.mean_nmi, 4), "trials": r.trials}
            for r in report.rows
        ]
        write(outdir, "bench.json", json.dumps({"rows": rows}, indent=2, sort_keys=True) + "\n")
    else:
        write(outdir, "bench.tsv", report.to_tsv())
    print(f"seed={args.seed}")
    print(report.summary(), end="")


def cmd_stats(args: argparse.Namespace) -> None:
    graph = load_input(args.input, weighted=args.weighted)
    supports = edge_supports(graph)
    decomposition = k_classes(graph, supports)
    degrees = sorted(len(a) for a in graph.adj)
    stats = {
        "n": graph.n,
        "m": graph.m,
        "triangles": supports.total_triangles(),
        "max_degree": degrees[-1] if degrees else 0,
        "k_max": decomposition.k_max,
        "class_sizes": {str(k): len(v) for k, v in sorted(decomposition.classes.items())},
    }
    print(json.dumps(stats, indent=2, sort_keys=True))


def _parse_alpha(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise CommandError(f"bad --alpha: {text}") from exc
    if value <= 0:
        raise CommandError("--alpha must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trusskit", description="Truss and trapeze decompositions"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_k=False):
        p.add_argument("input", help="edge list file: 'u v [w]' per line")
        p.add_argument("-o", "--out", default="trusskit-out", help="output directory")
        p.add_argument("--format", choices=("tsv", "json"), default="tsv")
        p.add_argument("--weighted", action="store_true", help="input has edge weights")
        p.add_argument("--dot", action="store_true", help="also write DOT export")
        p.add_argument("--graphml", action="store_true", help="also write GraphML export")
        if needs_k:
            p.add_argument("--k", type=int, required=True, help="support level")

    common(sub.add_parser("truss", help="maximal k-trusses"), needs_k=True)
    common(sub.add_parser("strong-truss", help="strong k-trusses"), needs_k=True)
    p = sub.add_parser("summit", help="summit trusses")
    common(p)
    p.add_argument("--strong", action="store_true", help="summit strong trusses")
    p = sub.add_parser("weighted-truss", help="weighted k-trusses")
    common(p, needs_k=True)
    p.add_argument("--weight-fn", choices=("min", "harmonic"), default="min")
    p.add_argument("--alpha", default="1", help="positive rational scaling constant")

    for name in ("trapeze", "strong-trapeze", "summit-trapeze"):
        p = sub.add_parser(name, help=f"{name.replace('-', ' ')}s over a level schedule")
        p.add_argument("input")
        p.add_argument("-o", "--out", default="trusskit-out")
        p.add_argument("--format", choices=("tsv", "json"), default="tsv")
        p.add_argument("--levels", help="comma-separated ascending support levels")
        p.add_argument(
            "--geometric", type=int, default=6,
            help="use levels 1,2,4,...,2^N when --levels is absent",
        )
        p.add_argument("--check-bipartite", action="store_true",
                       help="report (not enforce) whether the graph is bipartite")

    p = sub.add_parser("bench", help="planted-partition benchmark")
    p.add_argument("--l", type=int, required=True, help="number of groups")
    p.add_argument("--size", type=int, help="nodes per group")
    p.add_argument("--sizes", help="uniform size range lo..hi")
    p.add_argument("--p", type=float, required=True, help="intra-group probability")
    p.add_argument("--mu", type=float, required=True, help="mixing fraction")
    p.add_argument("--r", type=float, help="inter-group probability (overrides --mu)")
    p.add_argument("--method", choices=bench_mod.METHODS, default="truss")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k-min", type=int, default=3)
    p.add_argument("--k-max", type=int, default=0, help="0 = all levels present")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("-o", "--out", default="trusskit-out")

    p = sub.add_parser("stats", help="basic graph statistics")
    p.add_argument("input")
    p.add_argument("--weighted", action="store_true")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command in ("truss", "strong-truss", "summit", "weighted-truss"):
            cmd_decompose(args)
        elif args.command in ("trapeze", "strong-trapeze", "summit-trapeze"):
            if args.check_bipartite:
                graph = load_input(args.input, weighted=False)
                print(f"bipartite: {is_bipartite(graph)}")
            cmd_trapeze(args)
        elif args.command == "bench":
            cmd_bench(args)
        elif args.command == "stats":
            cmd_stats(args)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def is_bipartite(graph: Graph) -> bool:
    color = [-1] * graph.n
    for start in range(graph.n):
        if color[start] >= 0:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for w in graph.adj[v]:
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return False
    return True


if __name__ == "__main__":
    sys.exit(main())
