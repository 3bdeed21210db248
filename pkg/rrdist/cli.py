"""
Command-line front end.

Summaries go to stdout, machine output to CSV files, diagnostics to stderr.
Exit codes: 0 on success, 2 on invalid input, 3 on I/O failure.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .config import BatchConfig, HistogramConfig, parse_buckets, reference_histograms
from .errors import RrdistError
from .experiments import (
    DEFAULT_THRESHOLDS,
    Mode,
    aggregate,
    deviation_report,
    fit_points,
    linear_fit,
    read_records_csv,
    reduction_profile,
    run_batch,
    sample_histogram,
    write_buckets_csv,
    write_histogram_csv,
    write_records_csv,
)
from .metric import rrd
from .oracle import build_rrg, extremal_distances, verify_fordham
from .registry import get_spec
from .sampling import SampleConfig, Seed, sample_trees
from .transform import Direction, apply_move, parse_move, reduce_pair, rotate
from .tree import Tree, parse_encoding
from .utils import configure_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_IO = 3


def _encodings(args, needed: int) -> List[Tree]:
    texts = list(args.encodings)
    if args.file:
        with open(args.file, encoding="utf-8") as f:
            texts.extend(line.strip() for line in f if line.strip())
    if len(texts) != needed:
        raise ValueError(f"Expected {needed} encoding(s), got {len(texts)}")
    return [parse_encoding(t) for t in texts]


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected comma-separated integers, got {text!r}")


def cmd_dist(args) -> int:
    s, t = _encodings(args, 2)
    result = rrd((s, t), strict=args.strict)
    print(f"distance={result.distance} reduced_size={result.reduced_size}")
    if args.show_types:
        print(f"types={result.describe_types()}")
    return EXIT_OK


def cmd_reduce(args) -> int:
    s, t = _encodings(args, 2)
    reduced = reduce_pair((s, t))
    print(reduced.s.bits)
    print(reduced.t.bits)
    print(f"original_size={reduced.original_size} reduced_size={reduced.size}")
    return EXIT_OK


def cmd_rotate(args) -> int:
    (t,) = _encodings(args, 1)
    if args.move:
        if args.at is not None:
            raise ValueError("Give either --move or --at, not both")
        rotated = apply_move(t, parse_move(args.move))
    elif args.at is not None:
        rotated = rotate(t, args.at, Direction(args.direction))
    else:
        raise ValueError("Give --move or --at")
    print(rotated.bits)
    return EXIT_OK


def cmd_sample(args) -> int:
    config = SampleConfig(args.size, args.count, Seed(args.seed))
    for t in sample_trees(config):
        print(t.bits)
    return EXIT_OK


def cmd_oracle(args) -> int:
    rrg = build_rrg(args.size)
    print(f"vertices={len(rrg.vertices)} edges={rrg.edge_count}")
    if args.dump:
        Path(args.dump).write_text("".join(f"{line}\n" for line in rrg.edge_lines()))
    if args.verify:
        report = verify_fordham(args.size)
        print(f"pairs={report.pairs_checked} mismatches={len(report.mismatches)}")
        for m in report.mismatches[:10]:
            print(f"mismatch {m.s} {m.t} fordham={m.fordham} bfs={m.bfs}", file=sys.stderr)
    if args.extremal:
        report = extremal_distances(args.size)
        print(f"min={report.min_reduced} max={report.max_reduced}")
        print(f"min_witness={' '.join(report.min_attained_by)}")
        print(f"max_witness={' '.join(report.max_attained_by)}")
        print(
            f"reduced_pairs={report.reduced_pairs} "
            f"upper_bound={report.upper_bound} "
            f"attained={'yes' if report.upper_bound_attained else 'no'}"
        )
    return EXIT_OK


def _batch_from_args(args) -> BatchConfig:
    if args.sizes and args.buckets:
        raise ValueError("Give either --sizes or --buckets, not both")
    return BatchConfig(
        sizes=tuple(args.sizes or ()),
        buckets=parse_buckets(args.buckets) if args.buckets else (),
        count_per_size=args.count,
        seed=args.seed,
        threads=args.threads,
    )


def _print_fit(fit, prefix: str = "") -> None:
    print(
        f"{prefix}slope={fit.slope:.6f} intercept={fit.intercept:.6f} "
        f"max_rel_residual={fit.max_relative_residual:.6f} points={fit.count}"
    )


def cmd_experiment(args) -> int:
    overrides = {"seed": args.seed, "threads": args.threads}
    if args.preset:
        spec = get_spec(args.preset)
        if spec.kind == "histogram":
            raise ValueError(f"Preset {args.preset} is a histogram preset, use 'hist --preset'")
        if args.count is not None:
            overrides["count_per_size"] = args.count
        config = spec.make(**overrides)
        mode = Mode.parse(args.mode or spec.mode or "raw")
        if spec.kind == "reduction":
            profile = reduction_profile(
                config.sizes[0], config.count_per_size, config.seed, config.threads
            )
            print(
                f"size={profile.raw_size} count={profile.count} min={profile.min} "
                f"max={profile.max} mean={profile.mean:.3f} median={profile.median} "
                f"mode={profile.mode} mode_count={profile.mode_count}"
            )
            return EXIT_OK
        args.fit = args.fit or spec.kind == "fit"
    else:
        if args.mode is None:
            raise ValueError("Give a mode (table2 or table3) or --preset")
        if args.count is None:
            args.count = 1
        mode = Mode.parse(args.mode)
        config = _batch_from_args(args)

    records = run_batch(config)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "records.csv", "w", encoding="utf-8", newline="") as f:
        write_records_csv(records, f)
    rows = aggregate(records, config.ranges, mode)
    with open(out / "buckets.csv", "w", encoding="utf-8", newline="") as f:
        write_buckets_csv(rows, f)
    print(f"records={len(records)} buckets={len(rows)} mode={mode.value} out={out}")

    if args.fit:
        fit = linear_fit(fit_points(records, mode))
        _print_fit(fit)
    if args.svg:
        from .plots import render_scatter_svg

        render_scatter_svg(records, args.svg, mode)
    return EXIT_OK


def cmd_hist(args) -> int:
    overrides = {"seed": args.seed, "threads": args.threads, "bin_width": args.bin_width}
    if args.count is not None:
        overrides["min_count"] = args.count
    if args.budget is not None:
        overrides["budget"] = args.budget
    if args.preset:
        spec = get_spec(args.preset)
        if spec.kind != "histogram":
            raise ValueError(f"Preset {args.preset} is not a histogram preset")
        config = spec.make(**overrides)
    else:
        if args.size is None:
            raise ValueError("Give --size or --preset")
        config = HistogramConfig(target=args.size, **overrides)

    h = sample_histogram(config)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as f:
            write_histogram_csv(h, f)
    print(
        f"n={h.target_reduced_size} count={h.sample_count} mean={h.sample_mean:.4f} "
        f"sd={h.sample_sd:.4f} skewness={h.skewness:.4f}"
    )
    for ref in reference_histograms():
        if ref.size == h.target_reduced_size:
            print(f"reference count={ref.count} mean={ref.mean} sd={ref.sd}")
    if args.svg:
        from .plots import render_histogram_svg

        render_histogram_svg(h, args.svg)
    return EXIT_OK


def cmd_fit(args) -> int:
    with open(args.input, encoding="utf-8", newline="") as f:
        records = read_records_csv(f)
    mode = Mode.parse(args.mode)
    fit = linear_fit(fit_points(records, mode))
    _print_fit(fit)
    report = deviation_report(records, fit, DEFAULT_THRESHOLDS, mode)
    beyond = " ".join(f"beyond_{t:g}={share:.6f}" for t, share in report.fraction_beyond.items())
    print(f"{beyond} max_rel_deviation={report.max_rel_deviation:.6f}")
    if args.svg:
        from .plots import render_scatter_svg

        render_scatter_svg(records, args.svg, mode, fit)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rrdist", description="Restricted rotation distance tools"
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for progress, -vv for debug")
    subparsers = parser.add_subparsers(dest="command", required=True)

    def encodings_parser(name, help):
        p = subparsers.add_parser(name, help=help)
        p.add_argument("encodings", nargs="*", help="Preorder 0/1 encodings")
        p.add_argument("--file", help="Read encodings from a file, one per line")
        return p

    # Distance
    dist_parser = encodings_parser("dist", "Restricted rotation distance of two trees")
    dist_parser.add_argument("--show-types", action="store_true", help="Print node type pairs")
    dist_parser.add_argument("--strict", action="store_true", help="Reject pairs that still reduce")
    dist_parser.set_defaults(func=cmd_dist)

    reduce_parser = encodings_parser("reduce", "Remove common sibling-leaf pairs")
    reduce_parser.set_defaults(func=cmd_reduce)

    rotate_parser = encodings_parser("rotate", "Rotate a tree")
    rotate_parser.add_argument("--move", help="x0, x0i, x1 or x1i")
    rotate_parser.add_argument("--at", help="Node address, e.g. '' for the root or '01'")
    rotate_parser.add_argument("--direction", choices=[d.value for d in Direction], default="left")
    rotate_parser.set_defaults(func=cmd_rotate)

    sample_parser = subparsers.add_parser("sample", help="Uniform random trees, one per line")
    sample_parser.add_argument("--size", type=int, required=True)
    sample_parser.add_argument("--count", type=int, default=1)
    sample_parser.add_argument("--seed", type=int, default=0)
    sample_parser.set_defaults(func=cmd_sample)

    oracle_parser = subparsers.add_parser("oracle", help="Exhaustive checks on RRG(n)")
    oracle_parser.add_argument("--size", type=int, required=True)
    oracle_parser.add_argument("--verify", action="store_true", help="Compare with BFS on all pairs")
    oracle_parser.add_argument("--extremal", action="store_true", help="Extreme distances of reduced pairs")
    oracle_parser.add_argument("--dump", help="Write the edge list to a file")
    oracle_parser.set_defaults(func=cmd_oracle)

    exp_parser = subparsers.add_parser("experiment", help="Monte Carlo batch run")
    exp_parser.add_argument("mode", nargs="?", choices=["table2", "table3", "raw", "reduced"])
    exp_parser.add_argument("--sizes", type=_int_list, help="Comma-separated raw sizes")
    exp_parser.add_argument("--buckets", help="lo:hi,lo:hi or 'paper' for the reference ranges")
    exp_parser.add_argument("--count", "--counts", type=int, help="Pairs per size or bucket")
    exp_parser.add_argument("--seed", type=int, default=0)
    exp_parser.add_argument("--threads", type=int, default=1)
    exp_parser.add_argument("--out", default=".", help="Output directory for CSV files")
    exp_parser.add_argument("--fit", action="store_true", help="Print a least-squares line")
    exp_parser.add_argument("--svg", help="Write a distance/size scatter plot")
    exp_parser.add_argument("--preset", help="Registered preset id")
    exp_parser.set_defaults(func=cmd_experiment)

    hist_parser = subparsers.add_parser("hist", help="Distance histogram for one reduced size")
    hist_parser.add_argument("--size", type=int, help="Reduced size")
    hist_parser.add_argument("--count", type=int, help="Pairs to keep")
    hist_parser.add_argument("--seed", type=int, default=0)
    hist_parser.add_argument("--budget", type=int, help="Maximum pairs generated")
    hist_parser.add_argument("--bin-width", type=int, default=1)
    hist_parser.add_argument("--threads", type=int, default=1)
    hist_parser.add_argument("--out", help="Histogram CSV file")
    hist_parser.add_argument("--svg", help="Histogram SVG file")
    hist_parser.add_argument("--preset", help="Registered histogram preset id")
    hist_parser.set_defaults(func=cmd_hist)

    fit_parser = subparsers.add_parser("fit", help="Fit a line to a records CSV")
    fit_parser.add_argument("--in", dest="input", required=True, help="records.csv from experiment")
    fit_parser.add_argument("--mode", choices=[m.value for m in Mode], default="reduced")
    fit_parser.add_argument("--svg", help="Scatter plot SVG file")
    fit_parser.set_defaults(func=cmd_fit)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        return args.func(args)
    except (RrdistError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
