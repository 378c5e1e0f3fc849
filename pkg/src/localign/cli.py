"""Command line entry points for the alignment pipeline.

Every subcommand accepts --report FILE to drop its measurements as flat
"key value" lines; the same lines go to stdout. Reports never contain wall
times or absolute paths, so identical inputs give identical report bytes.
Errors exit nonzero with the failing subcommand named in the message.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .aligning import find_aligned_pairs, patch_index, read_seeds, write_seeds
from .errors import LocalignError
from .graphs import (
    degree_stats,
    load_edge_list,
    perturb_edges,
    save_edge_list,
    write_degree_stats,
)
from .indexing import IndexParams, create_index, read_index, write_index
from .merging import MergeParams, merge
from .metrics import (
    alignment_score,
    identity_truth,
    largest_connected_alignment,
    node_correctness,
    read_alignment,
    read_truth,
    s3_score,
    unknown_counterparts,
    write_alignment,
)
from .odv import compute_odv, load_weights, orbit_count, read_odv, write_odv
from .pipeline import PipelineParams, run_pipeline, write_report
from .temporal import WindowCaps, build_windows, load_temporal


def _emit(items: list[tuple[str, object]], report_path: str | None) -> None:
    for key, val in items:
        print(f"{key} {val}")
    if report_path:
        write_report(items, report_path)


def _truth_for(args, g1, g2):
    if getattr(args, "truth", None):
        return read_truth(args.truth, g1, g2)
    return identity_truth(g1, g2)


def _eval_items(pairs, g1, g2, truth) -> list[tuple[str, object]]:
    s3v = s3_score(pairs, g1, g2)
    nc = node_correctness(pairs, truth) if pairs else 0.0
    sub = largest_connected_alignment(pairs, g1)
    sub_s3 = s3_score(sub, g1, g2)
    sub_nc = node_correctness(sub, truth) if sub else 0.0
    return [
        ("size", len(pairs)),
        ("s3", s3v),
        ("nc", nc),
        ("score", alignment_score(len(pairs), nc, s3v)),
        ("unknown_truth", unknown_counterparts(pairs, truth)),
        ("connected.in", "graph1"),
        ("connected.size", len(sub)),
        ("connected.s3", sub_s3),
        ("connected.nc", sub_nc),
        ("connected.score", alignment_score(len(sub), sub_nc, sub_s3)),
    ]


def cmd_index(args) -> int:
    g = load_edge_list(args.graph)
    params = IndexParams(k=args.k, top_degrees=args.D)
    entries = create_index(g, params, threads=args.threads)
    write_index(entries, g, args.out)
    _emit([("index.entries", len(entries)),
           ("index.k", params.k),
           ("index.top_degrees", params.top_degrees),
           ("graph.nodes", g.n),
           ("graph.edges", g.m)], args.report)
    return 0


def cmd_align(args) -> int:
    g1 = load_edge_list(args.graph1)
    g2 = load_edge_list(args.graph2)
    entries1 = read_index(args.index1, g1)
    entries2 = read_index(args.index2, g2)
    seeds = find_aligned_pairs(patch_index(entries1, g1),
                               patch_index(entries2, g2))
    write_seeds(seeds, g1, g2, args.out)
    _emit([("seeds.count", len(seeds))], args.report)
    return 0


def cmd_odv(args) -> int:
    g = load_edge_list(args.graph)
    max_size = 5 if args.orbits == 73 else 4
    table = compute_odv(g, max_size)
    write_odv(g, table, args.out)
    _emit([("odv.nodes", g.n),
           ("odv.columns", orbit_count(max_size))], args.report)
    return 0


def cmd_merge(args) -> int:
    g1 = load_edge_list(args.graph1)
    g2 = load_edge_list(args.graph2)
    seeds = read_seeds(args.seeds, g1, g2)
    params = MergeParams(odv_filter=args.m, min_s3=args.t,
                         iterations=args.s, rng_seed=args.rng_seed)
    odvs = None
    weights = None
    if params.odv_filter <= 1.0:
        if not (args.odv1 and args.odv2):
            raise LocalignError(
                "--odv1 and --odv2 are required while --m is at most 1")
        odvs = (read_odv(args.odv1, g1), read_odv(args.odv2, g2))
        if args.odv_weights:
            weights = load_weights(args.odv_weights, odvs[0].shape[1])
    merged = merge(seeds, g1, g2, odvs=odvs, params=params, weights=weights)
    pairs = sorted(merged.forward.items())
    header = {"m": args.m, "t": args.t, "s": args.s,
              "rng_seed": args.rng_seed, "size": len(pairs), "s3": merged.s3}
    write_alignment(pairs, g1, g2, args.out, header=header)
    _emit([("merged.size", len(pairs)),
           ("merged.s3", merged.s3),
           ("seeds.kept", len(merged.seeds))], args.report)
    return 0


def cmd_eval(args) -> int:
    g1 = load_edge_list(args.graph1)
    g2 = load_edge_list(args.graph2)
    pairs = read_alignment(args.alignment, g1, g2)
    truth = _truth_for(args, g1, g2)
    _emit(_eval_items(pairs, g1, g2, truth), args.report)
    return 0


def cmd_pipeline(args) -> int:
    g1 = load_edge_list(args.graph1)
    g2 = load_edge_list(args.graph2)
    params = PipelineParams(
        index=IndexParams(k=args.k, top_degrees=args.D),
        merge=MergeParams(odv_filter=args.m, min_s3=args.t,
                          iterations=args.s, rng_seed=args.rng_seed),
        odv_size=5 if args.orbits == 73 else 4,
        threads=args.threads)
    truth = read_truth(args.truth, g1, g2) if args.truth else None
    report = run_pipeline(g1, g2, args.workdir, params=params, truth=truth)
    _emit(report.file_items(), args.report)
    print(f"alignment written to {report.artifacts['alignment']}",
          file=sys.stderr)
    return 0


def cmd_windows(args) -> int:
    stream = load_temporal(args.stream)
    shifts = [int(tok) for tok in args.shifts.split(",") if tok != ""]
    caps = WindowCaps(max_nodes=args.max_nodes, max_edges=args.max_edges,
                      max_ratio=args.max_ratio)
    built = build_windows(stream, shifts, caps)
    items: list[tuple[str, object]] = [("windows.count", len(built))]
    for p, g in built:
        out = f"{args.out_prefix}.s{p}.el"
        save_edge_list(g, out)
        items.append((f"window.{p}.nodes", g.n))
        items.append((f"window.{p}.edges", g.m))
    _emit(items, args.report)
    return 0


def cmd_perturb(args) -> int:
    g = load_edge_list(args.graph)
    noisy, removed = perturb_edges(g, args.fraction, args.rng_seed)
    save_edge_list(noisy, args.out)
    if args.removed_out:
        with open(args.removed_out, "w", encoding="utf-8") as fh:
            for u, v in removed:
                fh.write(f"{u} {v}\n")
    _emit([("perturb.removed", len(removed)),
           ("perturb.edges_left", noisy.m)], args.report)
    return 0


def cmd_stats(args) -> int:
    g = load_edge_list(args.graph)
    write_degree_stats(g, args.out)
    _emit([("stats.nodes", g.n),
           ("stats.edges", g.m),
           ("stats.distinct_degrees", len(degree_stats(g)))], args.report)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rng-seed", type=int, default=0, dest="rng_seed",
                        help="seed for every random choice (default 0)")
    common.add_argument("--threads", type=int, default=1,
                        help="worker threads for indexing; other stages are "
                             "sequential by design, and CPython threads share "
                             "one interpreter lock anyway")
    common.add_argument("--report", metavar="FILE",
                        help="also write the key-value summary to FILE")

    top = argparse.ArgumentParser(
        prog="localign",
        description="Topology-only local alignment of two undirected graphs.")
    sub = top.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("index", parents=[common],
                       help="index one graph's unambiguous graphlets")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, default=8, help="graphlet size (6..8)")
    p.add_argument("--D", type=int, default=2, dest="D",
                   help="distinct degree values kept per expansion")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("align", parents=[common],
                       help="emit seed alignments from two indexes")
    p.add_argument("--index1", required=True)
    p.add_argument("--graph1", required=True)
    p.add_argument("--index2", required=True)
    p.add_argument("--graph2", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("odv", parents=[common],
                       help="write per-node orbit participation vectors")
    p.add_argument("--graph", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--orbits", type=int, choices=(15, 73), default=15)
    p.set_defaults(func=cmd_odv)

    p = sub.add_parser("merge", parents=[common],
                       help="merge seeds into one large alignment")
    p.add_argument("--seeds", required=True)
    p.add_argument("--graph1", required=True)
    p.add_argument("--graph2", required=True)
    p.add_argument("--odv1")
    p.add_argument("--odv2")
    p.add_argument("--odv-weights", dest="odv_weights")
    p.add_argument("--m", type=float, default=0.95,
                   help="similarity filter threshold; above 1 disables it")
    p.add_argument("--t", type=float, default=0.95,
                   help="edge conservation floor")
    p.add_argument("--s", type=int, default=20000, help="iteration count")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("eval", parents=[common],
                       help="score an alignment file")
    p.add_argument("--alignment", required=True)
    p.add_argument("--graph1", required=True)
    p.add_argument("--graph2", required=True)
    p.add_argument("--truth", help="two-column counterpart file "
                                   "(default: equal labels)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("pipeline", parents=[common],
                       help="index, align, merge, and score in one go")
    p.add_argument("--graph1", required=True)
    p.add_argument("--graph2", required=True)
    p.add_argument("--workdir", default="localign-work")
    p.add_argument("--k", type=int, default=8)
    p.add_argument("--D", type=int, default=2, dest="D")
    p.add_argument("--m", type=float, default=0.95)
    p.add_argument("--t", type=float, default=0.95)
    p.add_argument("--s", type=int, default=20000)
    p.add_argument("--orbits", type=int, choices=(15, 73), default=15)
    p.add_argument("--truth")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("windows", parents=[common],
                       help="cut a timestamped edge stream into windows")
    p.add_argument("--stream", required=True)
    p.add_argument("--shifts", default="0,1,3,5",
                   help="comma-separated loss percentages")
    p.add_argument("--out-prefix", required=True, dest="out_prefix")
    p.add_argument("--max-nodes", type=int, default=20000)
    p.add_argument("--max-edges", type=int, default=400000)
    p.add_argument("--max-ratio", type=int, default=20)
    p.set_defaults(func=cmd_windows)

    p = sub.add_parser("perturb", parents=[common],
                       help="remove a random fraction of edges")
    p.add_argument("--graph", required=True)
    p.add_argument("--fraction", type=float, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--removed-out", dest="removed_out")
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("stats", parents=[common],
                       help="degree histogram as CSV")
    p.add_argument("--graph", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_stats)
    return top


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (LocalignError, ValueError, OSError) as e:
        print(f"localign {args.command}: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
