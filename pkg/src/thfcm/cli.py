"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 I/O or format error, 3 degenerate
(single-valued) image.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import ConfigError, DegenerateImage, ImageFormatError
from .histogram import compute_histogram, smooth_histogram
from .io_formats import (
    format_config_sidecar,
    load_pgm,
    write_diagnostics_csv,
    write_files_atomically,
    write_histogram_csv,
    write_histogram_svg,
    write_pgm,
)
from .segmentation import SegmentationConfig, apply_global_threshold, mean_threshold, segment

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_DEGENERATE = 3

EPILOG = """\
exit codes:
  0  success
  1  usage error (bad flag or invalid parameter value)
  2  I/O or image format error
  3  degenerate image (a single gray value)
"""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def sidecar_path(csv_path) -> Path:
    """Config echo written next to a diagnostics CSV: ``diag.csv`` -> ``diag.csv.config``."""
    csv_path = Path(csv_path)
    return csv_path.with_name(csv_path.name + ".config")


def build_parser() -> argparse.ArgumentParser:
    defaults = SegmentationConfig()
    parser = _Parser(
        prog="thfcm",
        description="Gray-level segmentation by fuzzy c-means on smoothed histogram frequencies.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    seg = sub.add_parser(
        "segment",
        help="segment an image and write a binary mask",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    seg.add_argument("input", help="input PGM (P2 or P5)")
    seg.add_argument("-o", "--output", required=True, help="output mask (P5 PGM, object=255)")
    seg.add_argument("--csv", help="per-gray-level diagnostics CSV; a .config sidecar is written next to it")
    seg.add_argument("--svg", help="smoothed histogram figure with discerner-cluster circles")
    seg.add_argument("--clusters", type=int, default=defaults.cluster_count)
    seg.add_argument("--fuzzifier", type=float, default=defaults.fuzzifier)
    seg.add_argument("--tol", type=float, default=defaults.tolerance)
    seg.add_argument("--max-iter", type=int, default=defaults.max_iterations)
    seg.add_argument("--window", type=int, default=defaults.smoothing_window, help="odd smoothing width")
    seg.add_argument("--init", choices=("quantile", "random"), default=defaults.init)
    seg.add_argument("--seed", type=int, default=defaults.seed, help="seed for --init random")

    thr = sub.add_parser(
        "threshold",
        help="global threshold: white where pixel > T",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    thr.add_argument("input")
    thr.add_argument("-o", "--output", required=True)
    thr.add_argument("--t", dest="t", required=True, help="integer 0-255, or 'mean'")

    hist = sub.add_parser(
        "histogram",
        help="write raw and smoothed histogram CSV without clustering",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    hist.add_argument("input")
    hist.add_argument("-o", "--output", required=True, help="output CSV")
    hist.add_argument("--window", type=int, default=defaults.smoothing_window)
    return parser


def _config_from_args(args) -> SegmentationConfig:
    return SegmentationConfig(
        cluster_count=args.clusters,
        fuzzifier=args.fuzzifier,
        tolerance=args.tol,
        max_iterations=args.max_iter,
        smoothing_window=args.window,
        init=args.init,
        seed=args.seed,
    )


def _parse_threshold(value: str):
    if value == "mean":
        return "mean"
    try:
        t = int(value)
    except ValueError:
        raise UsageError(f"--t must be an integer in [0, 255] or 'mean', got {value!r}") from None
    if not 0 <= t <= 255:
        raise UsageError(f"--t must be an integer in [0, 255] or 'mean', got {value!r}")
    return t


def _run_segment(args) -> None:
    config = _config_from_args(args)
    image = load_pgm(args.input)
    report = segment(image, config)
    outputs = {args.output: write_pgm(report.mask)}
    if args.csv:
        outputs[args.csv] = write_diagnostics_csv(report).encode()
        outputs[sidecar_path(args.csv)] = format_config_sidecar(config.as_dict()).encode()
    if args.svg:
        outputs[args.svg] = write_histogram_svg(report).encode()
    write_files_atomically(outputs)


def _run_threshold(args, t) -> None:
    image = load_pgm(args.input)
    if t == "mean":
        t = mean_threshold(image)
    write_files_atomically({args.output: write_pgm(apply_global_threshold(image, t))})


def _run_histogram(args) -> None:
    image = load_pgm(args.input)
    hist = compute_histogram(image)
    smoothed = smooth_histogram(hist, args.window)
    write_files_atomically(
        {
            args.output: write_histogram_csv(hist, smoothed).encode(),
            sidecar_path(args.output): format_config_sidecar({"smoothing_window": args.window}).encode(),
        }
    )


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        # Validate every numeric override before touching the filesystem.
        if args.command == "segment":
            _config_from_args(args)
        elif args.command == "threshold":
            t = _parse_threshold(args.t)
        elif args.command == "histogram":
            SegmentationConfig(smoothing_window=args.window)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"thfcm: invalid parameter: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.command == "segment":
            _run_segment(args)
        elif args.command == "threshold":
            _run_threshold(args, t)
        else:
            _run_histogram(args)
    except DegenerateImage as exc:
        print(f"thfcm: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except ImageFormatError as exc:
        print(f"thfcm: {args.input}: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"thfcm: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
