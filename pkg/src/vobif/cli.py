"""Command-line interface: ``vobif <command> ...``."""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import analytics, generators, imgio
from .conversion import compute_bifiltration
from .core import Metric

DEFAULT_MAX_ORACLE_PIXELS = 4096


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be positive")
    return n


def _int_list(text: str) -> list[int]:
    try:
        out = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated list of integers") from None
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError(f"{text!r} needs positive integers")
    return out


def _metric_list(text: str) -> list[Metric]:
    try:
        return [Metric.parse(t.strip()) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _load(path: str):
    try:
        return imgio.load_image(path)
    except FileNotFoundError:
        raise OSError(f"cannot read {path}: no such file") from None


def _read_vob(path: str):
    try:
        return imgio.read_entrance_sets(path)
    except FileNotFoundError:
        raise OSError(f"cannot read {path}: no such file") from None


def _report(result, seconds: float) -> None:
    _note(f"pixels {result.num_pixels} values {len(result.values)} "
          f"bigrades {result.total_bigrades} seconds {seconds:.3f}")


def cmd_compute(args) -> int:
    img = _load(args.input)
    t0 = time.perf_counter()
    result = compute_bifiltration(img, args.metric)
    elapsed = time.perf_counter() - t0
    imgio.write_entrance_sets(result, args.output)
    _report(result, elapsed)
    return 0


def _oracle_limit(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get("VOB_MAX_ORACLE_PIXELS")
    if env is None:
        return DEFAULT_MAX_ORACLE_PIXELS
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"VOB_MAX_ORACLE_PIXELS={env!r} is not an integer") from None


def cmd_oracle(args) -> int:
    from .oracle import oracle_bifiltration

    limit = _oracle_limit(args.max_pixels)
    img = _load(args.input)
    if img.num_pixels > limit:
        raise ValueError(
            f"image has {img.num_pixels} pixels, above the oracle limit of {limit}; "
            "raise --max-pixels or VOB_MAX_ORACLE_PIXELS"
        )
    t0 = time.perf_counter()
    result = oracle_bifiltration(img, args.metric)
    elapsed = time.perf_counter() - t0
    imgio.write_entrance_sets(result, args.output)
    _report(result, elapsed)
    return 0


def cmd_gen(args) -> int:
    if args.kind == "random":
        img = generators.gen_random(args.width, args.height, args.values, args.seed)
    elif args.kind == "centralized":
        img = generators.gen_centralized(args.width, args.height, args.values)
    else:
        img = generators.gen_diagonal(args.width, args.height, args.values)
    imgio.save_pgm(img, args.output, plain=args.plain)
    return 0


def cmd_stats(args) -> int:
    rep = analytics.entrance_stats(_read_vob(args.vob))
    print(rep.format())
    return 0


def cmd_compare(args) -> int:
    a = _read_vob(args.a)
    b = _read_vob(args.b)
    print(analytics.compare(a, b).format())
    return 0


def cmd_bench(args) -> int:
    rows = []
    for metric in args.metric:
        new = analytics.bench_run(args.sizes, args.values, metric, args.reps, args.seed)
        for r in new:
            _note(f"{r.metric} {r.width}x{r.height} values {r.num_values}: {r.seconds:.3f}s")
        rows += new
    if args.output == "-":
        analytics.write_bench_csv(rows, sys.stdout)
    else:
        with open(args.output, "w", newline="") as fh:
            analytics.write_bench_csv(rows, fh)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="vobif", description="Value-offset bifiltrations of grayscale images.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    metrics = [m.value for m in Metric]
    for name, func, helptext in (
        ("compute", cmd_compute, "entrance sets with the fast algorithms"),
        ("oracle", cmd_oracle, "entrance sets by brute force (small images only)"),
    ):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("--metric", required=True, choices=metrics)
        s.add_argument("--input", required=True, help="PGM or 8-bit grayscale PNG")
        s.add_argument("--output", required=True, help="VOB file, or - for stdout")
        if name == "oracle":
            s.add_argument("--max-pixels", type=_positive_int, default=None,
                           help=f"refuse larger images (default {DEFAULT_MAX_ORACLE_PIXELS}, "
                                "or VOB_MAX_ORACLE_PIXELS)")
        s.set_defaults(func=func)

    s = sub.add_parser("gen", help="write a synthetic PGM")
    s.add_argument("--kind", required=True, choices=["random", "centralized", "diagonal"])
    s.add_argument("--width", required=True, type=_positive_int)
    s.add_argument("--height", required=True, type=_positive_int)
    s.add_argument("--values", required=True, type=_positive_int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--plain", action="store_true", help="ASCII P2 instead of binary P5")
    s.add_argument("--output", required=True, help="PGM file, or - for stdout")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("stats", help="entrance-set size statistics of a VOB file")
    s.add_argument("vob")
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("compare", help="per-value offset differences between two VOB files")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("bench", help="time the fast algorithms on random images")
    s.add_argument("--sizes", required=True, type=_int_list, help="side lengths, e.g. 128,256")
    s.add_argument("--values", required=True, type=_int_list, help="value counts, e.g. 16,256")
    s.add_argument("--metric", required=True, type=_metric_list, help="taxicab, euclidean, or a comma list of both")
    s.add_argument("--reps", type=int, default=1)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--output", default="-", help="CSV file, or - for stdout")
    s.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
