"""Command line: ``detect``, ``check`` and ``bench``."""

from __future__ import annotations

import argparse
import csv
import sys
import time

import numpy as np

from ._parallel import default_workers
from .graph import GraphFormatError, load_graph
from .louvain import LouvainParams, louvain
from .quality import (
    MembershipError,
    count_communities,
    disconnected_communities,
    disconnected_fraction,
    read_membership,
    write_membership,
)
from .report import PHASES
from .split import SplitConfig, SplitTechnique, split_disconnected

SPLIT_CHOICES = ["none"] + [f"{m}-{t}" for m in ("last", "pass") for t in ("lp", "lpp", "bfs")]
BENCH_COLUMNS = ["workers", "total_s", *PHASES, "modularity", "disconnected_fraction"]


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _thread_list(text: str) -> list[int]:
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad thread list {text!r}") from None
    if not out or any(x < 1 for x in out):
        raise argparse.ArgumentTypeError(f"thread counts must be positive: {text!r}")
    return out


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("-i", "--input", required=True, help="graph file")
    p.add_argument("--format", choices=["mtx", "edgelist"], default=None,
                   help="input format (default: mtx for *.mtx, else edgelist)")
    p.add_argument("--weighted", action="store_true", help="edge list carries a third weight column")


def _add_param_args(p: argparse.ArgumentParser) -> None:
    d = LouvainParams(workers=1)
    p.add_argument("--split", choices=SPLIT_CHOICES, default="pass-bfs")
    p.add_argument("--tolerance", type=float, default=d.tolerance)
    p.add_argument("--tolerance-drop", type=float, default=d.tolerance_drop)
    p.add_argument("--agg-tolerance", type=float, default=d.aggregation_tolerance)
    p.add_argument("--max-passes", type=_positive_int, default=d.max_passes)
    p.add_argument("--max-iterations", type=_positive_int, default=d.max_iterations)


def _params(args, workers: int) -> LouvainParams:
    return LouvainParams(
        tolerance=args.tolerance,
        tolerance_drop=args.tolerance_drop,
        aggregation_tolerance=args.agg_tolerance,
        max_passes=args.max_passes,
        max_iterations=args.max_iterations,
        split=SplitConfig.parse(args.split),
        workers=workers,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="splitlouvain", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="run community detection")
    _add_graph_args(p)
    _add_param_args(p)
    p.add_argument("--threads", type=_positive_int, default=None,
                   help="worker count (default: available cores)")
    p.add_argument("-o", "--output", help="membership file to write")
    p.add_argument("--report", help="JSON report to write")

    p = sub.add_parser("check", help="find (and optionally split) disconnected communities")
    _add_graph_args(p)
    p.add_argument("-m", "--membership", required=True, help="one label per line")
    p.add_argument("--split", choices=[t.value for t in SplitTechnique], default=None)
    p.add_argument("-o", "--output", help="where to write the split membership")
    p.add_argument("--threads", type=_positive_int, default=None)

    p = sub.add_parser("bench", help="time detection across worker counts, CSV out")
    _add_graph_args(p)
    _add_param_args(p)
    p.add_argument("--threads", type=_thread_list, default=None,
                   help="comma separated worker counts (default: 1,2,4,... up to the core count)")
    p.add_argument("--repeat", type=_positive_int, default=1, help="runs averaged per worker count")
    p.add_argument("-o", "--output", help="CSV file (default: stdout)")
    return parser


def _load(args):
    return load_graph(args.input, args.format, weighted=args.weighted)


def cmd_detect(args) -> int:
    g = _load(args)
    labels, report = louvain(g, _params(args, args.threads or default_workers()))
    if args.output:
        write_membership(args.output, labels)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(report.to_json())
            fh.write("\n")
    print(report.summary())
    return 0


def cmd_check(args) -> int:
    g = _load(args)
    workers = args.threads or default_workers()
    labels = read_membership(args.membership, g.num_vertices)
    flags = disconnected_communities(g, labels, workers)
    ncomm = count_communities(labels)
    bad = np.flatnonzero(flags)
    print(f"communities={ncomm} disconnected={bad.size} "
          f"fraction={disconnected_fraction(flags, ncomm):.6g}")
    if bad.size:
        print("disconnected communities: " + " ".join(map(str, bad.tolist())))
    if args.split:
        out = args.output or f"{args.membership}.split"
        split = split_disconnected(g, labels, SplitTechnique(args.split), workers)
        write_membership(out, split)
        print(f"split membership: {count_communities(split)} communities -> {out}")
    return 0


def _default_threads() -> list[int]:
    out, t = [], 1
    while t <= default_workers():
        out.append(t)
        t *= 2
    return out


def cmd_bench(args) -> int:
    g = _load(args)
    threads = args.threads or _default_threads()
    louvain(g, _params(args, threads[0]))  # warm-up (JIT, caches), discarded
    fh = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        w = csv.writer(fh)
        w.writerow(BENCH_COLUMNS)
        for t in threads:
            rows = []
            for _ in range(args.repeat):
                _, r = louvain(g, _params(args, t))
                rows.append([r.total_runtime_s, r.local_moving_s, r.splitting_s,
                             r.aggregation_s, r.other_s, r.modularity, r.disconnected_fraction])
            mean = np.mean(np.array(rows, dtype=np.float64), axis=0)
            w.writerow([t, *(f"{x:.6g}" for x in mean)])
            fh.flush()
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"detect": cmd_detect, "check": cmd_check, "bench": cmd_bench}[args.command]
    t0 = time.perf_counter()
    try:
        return handler(args)
    except (GraphFormatError, MembershipError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    finally:
        if args.command != "bench":
            print(f"[{args.command}] {time.perf_counter() - t0:.3f}s", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
