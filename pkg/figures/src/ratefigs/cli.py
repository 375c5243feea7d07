"""Batch front end: render every known CSV in a directory to an image.

Exit codes: 0 success, 2 validation failure, 1 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import FigureSpec, render

# known CSV names with their kind, title, and axis labels
KNOWN_FILES = {
    "fig1_exponents.csv": (
        "curves",
        "Random-coding exponents: direct vs split",
        "rate (bits per channel use)",
        "error exponent",
    ),
    "fig2_rates.csv": (
        "curves",
        "Capacity and cutoff rates under splitting",
        "erasure probability",
        "rate (bits per channel use)",
    ),
    "bec_split.csv": (
        "curves",
        "Two-copy split of a binary erasure channel",
        "erasure probability",
        "rate (bits per channel use)",
    ),
    "bsc_split.csv": (
        "curves",
        "Two-copy split of a binary symmetric channel",
        "crossover probability",
        "rate (bits per channel use)",
    ),
    "code_allocation.csv": (
        "allocation",
        "Per-subchannel cutoff-rate allocation",
        "subchannel index",
        "rate (bits)",
    ),
}


def specs_for_directory(csv_dir, out_dir, image_format: str) -> list[FigureSpec]:
    """Specs for every known CSV name present in csv_dir."""
    csv_dir = Path(csv_dir)
    out_dir = Path(out_dir)
    if image_format not in ("png", "svg"):
        raise ValueError(f"image format must be png or svg, got {image_format!r}")
    if not csv_dir.is_dir():
        raise ValueError(f"not a directory: {csv_dir}")
    specs = []
    for name, (kind, title, xlabel, ylabel) in KNOWN_FILES.items():
        path = csv_dir / name
        if not path.exists():
            continue
        specs.append(
            FigureSpec(
                csv_path=path,
                kind=kind,
                title=title,
                xlabel=xlabel,
                ylabel=ylabel,
                out_path=out_dir / f"{path.stem}.{image_format}",
            )
        )
    if not specs:
        raise ValueError(f"no known CSV files in {csv_dir}")
    return specs


def render_directory(csv_dir, out_dir, image_format: str = "png") -> list[Path]:
    """Render all known CSVs under csv_dir; returns the written image paths."""
    specs = specs_for_directory(csv_dir, out_dir, image_format)
    Path(out_dir).mkdir(parents=True, exist_ok=True)
    return [render(spec) for spec in specs]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratefigs",
        description="Render known rate/exponent CSV tables into figures.",
    )
    parser.add_argument("csv_dir", help="directory containing the CSV outputs")
    parser.add_argument("--out", default=None, help="image directory (default: csv_dir)")
    parser.add_argument(
        "--format",
        default="png",
        choices=("png", "svg"),
        help="image format (default: png)",
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out_dir = args.out if args.out is not None else args.csv_dir
    try:
        written = render_directory(args.csv_dir, out_dir, args.format)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
