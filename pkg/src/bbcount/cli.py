"""Command-line driver: convert, count, classify, stats, bench.

Counting output is a single JSON object per run; bench emits CSV.  Exit
codes: 0 success, 1 usage error, 2 data error, 3 expectation mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

from . import ingest, oracle
from .buckets import count_balanced_2k_serial, count_balanced_parallel
from .errors import BBCountError
from .graph import GraphStats, Side, SignedBipartiteGraph
from .tiled import (
    DEFAULT_PARTIAL_MAX,
    DEFAULT_TILE_SIZE,
    DEFAULT_WARP_MAX,
    ScheduleReport,
    TileConfig,
    count_balanced_dynamic,
    count_balanced_tiled,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_MISMATCH = 3

ALGOS = ("oracle", "bb2k", "parallel", "tiled", "dynamic")


@dataclass
class RunResult:
    algo: str
    k: int
    balanced_count: int
    wall_seconds: float
    workers_or_blocks: int
    graph_stats: GraphStats
    total_butterflies: int | None = None
    schedule: ScheduleReport | None = None

    def to_json_dict(self) -> dict:
        out = {
            "algo": self.algo,
            "k": self.k,
            "balanced_count": self.balanced_count,
            "wall_seconds": self.wall_seconds,
            "workers_or_blocks": self.workers_or_blocks,
            "graph_stats": {
                "n_min": self.graph_stats.n_min,
                "d_min_avg": self.graph_stats.d_min_avg,
                "density": self.graph_stats.density,
            },
        }
        if self.total_butterflies is not None:
            out["total_butterflies"] = self.total_butterflies
        if self.schedule is not None:
            out["schedule"] = self.schedule.to_json_dict()
        return out


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage problems; this tool reserves 2 for data
    # errors, so remap.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_policy_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--policy", choices=("explicit", "rating", "random"),
                        default="explicit", help="sign assignment policy")
    parser.add_argument("--threshold", type=float, default=None,
                        help="rating threshold (rating policy)")
    parser.add_argument("--strict", action="store_true",
                        help="rating policy: positive only strictly above the threshold")
    parser.add_argument("--p-pos", type=float, default=0.7,
                        help="random policy: probability of a positive sign")
    parser.add_argument("--seed", type=int, default=0,
                        help="random policy seed")


def _policy_from_args(parser: argparse.ArgumentParser,
                      args: argparse.Namespace) -> ingest.SignPolicy:
    if args.policy == "explicit":
        return ingest.ExplicitSign()
    if args.policy == "rating":
        if args.threshold is None:
            parser.error("--policy rating requires --threshold")
        return ingest.RatingThreshold(args.threshold,
                                      at_or_above_is_positive=not args.strict)
    return ingest.RandomBernoulli(args.p_pos, args.seed)


def _load_graph(parser: argparse.ArgumentParser,
                args: argparse.Namespace) -> SignedBipartiteGraph:
    policy = _policy_from_args(parser, args)
    with open(args.input, "r", encoding="utf-8") as fh:
        return ingest.load_graph(fh, policy)


def _side(token: str) -> Side:
    return Side.U if token == "u" else Side.V


def build_parser() -> _Parser:
    parser = _Parser(prog="bbcount",
                     description="Balanced butterfly and (2,k)-biclique counting "
                                 "in signed bipartite graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="edge list file")
    common.add_argument("--format", choices=("whitespace",), default="whitespace",
                        help="input format (whitespace-separated edge list)")
    common.add_argument("--json", action="store_true",
                        help="machine-readable output where not the default")

    p_convert = sub.add_parser("convert", parents=[common],
                               help="normalize an edge list into signed form")
    _add_policy_flags(p_convert)
    p_convert.add_argument("--output", required=True, help="normalized output file")

    p_count = sub.add_parser("count", parents=[common],
                             help="count balanced butterflies / (2,k)-bicliques")
    _add_policy_flags(p_count)
    p_count.add_argument("--algo", choices=ALGOS, required=True)
    p_count.add_argument("--k", type=int, default=2,
                         help="biclique width (oracle and bb2k only)")
    p_count.add_argument("--threads", type=int, default=1,
                         help="worker processes for --algo parallel")
    p_count.add_argument("--anchor-side", choices=("u", "v"), default="u",
                         help="size-2 side for (2,k) counting")
    p_count.add_argument("--tile-size", type=int, default=DEFAULT_TILE_SIZE)
    p_count.add_argument("--blocks", type=int, default=1,
                         help="block/worker count for tiled and dynamic engines")
    p_count.add_argument("--warp-max", type=int, default=DEFAULT_WARP_MAX)
    p_count.add_argument("--partial-max", type=int, default=DEFAULT_PARTIAL_MAX)
    p_count.add_argument("--report", default=None,
                         help="write the schedule report JSON to this path")
    p_count.add_argument("--expect", type=int, default=None,
                         help="exit 3 unless the balanced count equals this")

    p_classify = sub.add_parser("classify", parents=[common],
                                help="six-way butterfly classification")
    _add_policy_flags(p_classify)

    p_stats = sub.add_parser("stats", parents=[common],
                             help="structural statistics")
    _add_policy_flags(p_stats)

    p_bench = sub.add_parser("bench", parents=[common],
                             help="time engines; CSV output")
    _add_policy_flags(p_bench)
    p_bench.add_argument("--algos", default="bb2k,parallel",
                         help="comma-separated algo list")
    p_bench.add_argument("--threads-list", default="1",
                         help="comma-separated worker counts")
    p_bench.add_argument("--repeat", type=int, default=1,
                         help="repetitions per configuration (min time reported)")

    return parser


def _cmd_convert(parser, args) -> int:
    policy = _policy_from_args(parser, args)
    with open(args.input, "r", encoding="utf-8") as fh:
        parsed = ingest.parse_edge_list(fh)
    signed = ingest.apply_sign_policy(parsed.edges, policy)
    deduped = ingest.dedup_latest(signed)
    g = ingest.to_graph(deduped, parsed.u_ids, parsed.v_ids)
    positive = sum(1 for _, _, s in deduped if s.value > 0)
    fraction = positive / len(deduped) if deduped else 0.0
    with open(args.output, "w", encoding="utf-8") as out:
        ingest.dump_edge_list(g, out)
    summary = {
        "u_count": g.u_count,
        "v_count": g.v_count,
        "edge_count": g.edge_count,
        "positive_fraction": fraction,
    }
    if args.json:
        print(json.dumps(summary))
    else:
        print(f"u={g.u_count} v={g.v_count} edges={g.edge_count} "
              f"positive_fraction={fraction:.6f}")
    return EXIT_OK


def _cmd_count(parser, args) -> int:
    if args.k < 2:
        parser.error("--k must be >= 2")
    if args.algo in ("parallel", "tiled", "dynamic") and args.k != 2:
        parser.error(f"--algo {args.algo} only supports k = 2")
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    if args.blocks < 1:
        parser.error("--blocks must be >= 1")
    if args.tile_size < 1:
        parser.error("--tile-size must be >= 1")
    if args.warp_max >= args.partial_max:
        parser.error("--warp-max must be below --partial-max")
    g = _load_graph(parser, args)
    side = _side(args.anchor_side)
    total_butterflies = None
    schedule = None
    workers_or_blocks = 1

    start = time.perf_counter()
    if args.algo == "oracle":
        if args.k == 2:
            balanced, total_butterflies = oracle.count_balanced_bruteforce(g)
        else:
            balanced = oracle.count_balanced_2k_bruteforce(g, args.k, side)
    elif args.algo == "bb2k":
        balanced = count_balanced_2k_serial(g, args.k, side)
    elif args.algo == "parallel":
        workers_or_blocks = args.threads
        balanced = count_balanced_parallel(g, args.threads)
    elif args.algo == "tiled":
        workers_or_blocks = args.blocks
        balanced, schedule = count_balanced_tiled(
            g, TileConfig(tile_size=args.tile_size, block_count=args.blocks))
    else:
        workers_or_blocks = args.blocks
        balanced, schedule = count_balanced_dynamic(
            g, args.blocks, (args.warp_max, args.partial_max))
    wall = time.perf_counter() - start

    result = RunResult(algo=args.algo, k=args.k, balanced_count=balanced,
                       wall_seconds=wall, workers_or_blocks=workers_or_blocks,
                       graph_stats=g.stats(), total_butterflies=total_butterflies,
                       schedule=schedule)
    if args.report and schedule is not None:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(schedule.to_json_dict(), fh)
    print(json.dumps(result.to_json_dict()))
    if args.expect is not None and balanced != args.expect:
        print(f"expected {args.expect}, got {balanced}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def _cmd_classify(parser, args) -> int:
    g = _load_graph(parser, args)
    counts = oracle.classify_butterflies(g)
    balanced, total = oracle.count_balanced_bruteforce(g)
    if counts.total() != total or counts.balanced() != balanced:
        print("classification invariants violated "
              f"(classes total {counts.total()} vs {total}, "
              f"balanced {counts.balanced()} vs {balanced})", file=sys.stderr)
        return EXIT_MISMATCH
    out = counts.as_dict()
    out["total"] = total
    out["balanced"] = balanced
    print(json.dumps(out))
    return EXIT_OK


def _fmt_sig4(x: float) -> str:
    return f"{x:.4g}"


def _cmd_stats(parser, args) -> int:
    g = _load_graph(parser, args)
    stats = g.stats()
    print(json.dumps({
        "u_count": g.u_count,
        "v_count": g.v_count,
        "edge_count": g.edge_count,
        "n_min": stats.n_min,
        "d_min_avg": stats.d_min_avg,
        "density": stats.density,
        "d_min_avg_4sf": _fmt_sig4(stats.d_min_avg),
        "density_4sf": _fmt_sig4(stats.density),
    }))
    return EXIT_OK


def _cmd_bench(parser, args) -> int:
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for algo in algos:
        if algo not in ALGOS:
            parser.error(f"unknown algo {algo!r}")
    try:
        threads_list = [int(t) for t in args.threads_list.split(",") if t.strip()]
    except ValueError:
        parser.error("--threads-list must be comma-separated integers")
    if args.repeat < 1:
        parser.error("--repeat must be >= 1")
    g = _load_graph(parser, args)

    def run(algo: str, workers: int) -> int:
        if algo == "oracle":
            return oracle.count_balanced_bruteforce(g)[0]
        if algo == "bb2k":
            return count_balanced_2k_serial(g, 2, Side.U)
        if algo == "parallel":
            return count_balanced_parallel(g, workers)
        if algo == "tiled":
            return count_balanced_tiled(
                g, TileConfig(block_count=workers))[0]
        return count_balanced_dynamic(g, workers)[0]

    print("algo,workers,wall_seconds,count")
    counts = set()
    for algo in algos:
        for workers in threads_list:
            best = None
            count = None
            for _ in range(args.repeat):
                start = time.perf_counter()
                count = run(algo, workers)
                elapsed = time.perf_counter() - start
                best = elapsed if best is None else min(best, elapsed)
            counts.add(count)
            print(f"{algo},{workers},{best:.6f},{count}")
    if len(counts) > 1:
        print(f"count disagreement across configurations: {sorted(counts)}",
              file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "convert": _cmd_convert,
        "count": _cmd_count,
        "classify": _cmd_classify,
        "stats": _cmd_stats,
        "bench": _cmd_bench,
    }
    try:
        return handlers[args.command](parser, args)
    except BBCountError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
