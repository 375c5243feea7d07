"""Command-line front end: writes the comparison tables and curves as CSV.

Subcommands
-----------
massey      exponent curves for a quaternary erasure channel vs its split
            binary-erasure pair (fig1_exponents.csv), and the capacity /
            cutoff-rate comparison over the erasure probability
            (fig2_rates.csv)
bec-split   two-copy splitting of a binary erasure channel over an
            erasure-probability grid (bec_split.csv)
bsc-split   same for a binary symmetric channel (bsc_split.csv)
kron        rate allocations for Kronecker powers of the 2x2 kernel
            (kron_k{j}_allocation.csv, kron_table.csv)
code        rate allocation for the label map of a systematic generator
            matrix (code_allocation.csv); defaults to the bundled one
channel     cutoff rate, capacity, and random-coding exponents of a
            user-supplied channel JSON (channel_report.json)

Exit codes: 0 success, 2 validation failure, 1 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from importlib import resources
from pathlib import Path

import numpy as np

from . import gf2
from .combine import LabelMap, MapValidationError, TableBudgetError
from .dmc import (
    Channel,
    ChannelValidationError,
    bec,
    bsc,
    capacity,
    cutoff_rate,
    e0,
    load_channel,
    uniform_dist,
)
from .exponents import (
    ExponentCurve,
    er,
    erasure_capacity,
    format_value,
    massey_curves,
    massey_rate_curves,
    write_curves_csv,
)
from .split import (
    ChainModel,
    MemoryBudgetError,
    chain_rates,
    spectral_chain,
    write_allocation_csv,
)

_KERNEL_BITS = np.array([[1, 0], [1, 1]], dtype=np.uint8)
_DEFAULT_RATE_STEP = 0.01


def parse_grid(spec: str) -> np.ndarray:
    """Parse "start:step:end" into an increasing inclusive grid."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be start:step:end, got {spec!r}")
    try:
        start, step, end = (float(p) for p in parts)
    except ValueError:
        raise ValueError(f"grid has non-numeric parts: {spec!r}") from None
    if step <= 0:
        raise ValueError(f"grid step must be positive, got {step}")
    if end < start:
        raise ValueError(f"grid end {end} below start {start}")
    count = int(math.floor((end - start) / step + 1e-9)) + 1
    return start + step * np.arange(count)


def ordered_map(fn, items, threads: int) -> list:
    """Map preserving input order; threads=0 means one worker per CPU."""
    items = list(items)
    if threads == 0:
        threads = os.cpu_count() or 1
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _kernel() -> gf2.BitMatrix:
    return gf2.BitMatrix(_KERNEL_BITS.copy())


def _bundled_generator():
    return resources.files("splitrate").joinpath("data", "golay_dual_p.txt")


# ---------------------------------------------------------------------------
# Subcommand bodies
# ---------------------------------------------------------------------------

def run_massey(args, out: Path) -> None:
    eps = args.eps
    if args.rates is not None:
        rates = parse_grid(args.rates)
    else:
        cap = erasure_capacity(4, eps)
        rates = parse_grid(f"0:{_DEFAULT_RATE_STEP}:{cap}")
    qec, split = massey_curves(eps, rates)
    write_curves_csv(out / "fig1_exponents.csv", [qec, split])

    eps_grid = parse_grid("0:0.01:1")
    write_curves_csv(out / "fig2_rates.csv", massey_rate_curves(eps_grid))


def _split_row(make_channel, eps: float) -> tuple[float, float, float, float]:
    v = make_channel(eps)
    base = e0(1.0, uniform_dist(v.num_inputs), v)
    alloc = chain_rates(ChainModel.uniform(v, LabelMap.linear(_kernel())))
    r = alloc.per_subchannel
    return base, float(r[0]), float(r[1]), alloc.normalized


def run_split_family(args, out: Path, kind: str) -> None:
    make_channel, default_grid = {
        "bec": (bec, "0:0.01:1"),
        "bsc": (bsc, "0:0.01:0.5"),
    }[kind]
    grid = parse_grid(args.eps_grid if args.eps_grid is not None else default_grid)
    rows = ordered_map(lambda e: _split_row(make_channel, float(e)), grid, args.threads)
    data = np.array(rows)
    labels = ["base_cutoff", "split_rate_1", "split_rate_2", "normalized_sum"]
    curves = [ExponentCurve(grid, data[:, j], lab) for j, lab in enumerate(labels)]
    write_curves_csv(out / f"{kind}_split.csv", curves)


def run_kron(args, out: Path) -> None:
    if not 1 <= args.k <= 5:
        raise ValueError(f"k must be in 1..5, got {args.k}")
    ks = list(range(1, args.k + 1))
    allocs = ordered_map(
        lambda j: spectral_chain(args.eps, gf2.kron_power(_kernel(), j)),
        ks,
        args.threads,
    )
    for j, alloc in zip(ks, allocs):
        write_allocation_csv(out / f"kron_k{j}_allocation.csv", alloc)
    lines = ["k,normalized"]
    for j, alloc in zip(ks, allocs):
        lines.append(f"{j},{format_value(alloc.normalized)}")
    (out / "kron_table.csv").write_text("\n".join(lines) + "\n")


def run_code(args, out: Path) -> None:
    if args.generator is not None:
        p = gf2.load_generator(args.generator)
    else:
        with resources.as_file(_bundled_generator()) as path:
            p = gf2.load_generator(path)
    f = gf2.from_generator(p)
    alloc = spectral_chain(args.eps, f)
    write_allocation_csv(out / "code_allocation.csv", alloc)


def run_channel(args, out: Path) -> None:
    w = load_channel(args.file)
    rates = parse_grid(args.rates) if args.rates is not None else np.array([])
    exponents = ordered_map(lambda r: er(float(r), w), rates, args.threads)
    report = {
        "inputs": w.num_inputs,
        "outputs": w.num_outputs,
        "e0_uniform_rho1": e0(1.0, uniform_dist(w.num_inputs), w),
        "cutoff_rate": cutoff_rate(w),
        "capacity": capacity(w),
        "er": [
            {"rate": float(r), "exponent": float(x)}
            for r, x in zip(rates, exponents)
        ],
    }
    (out / "channel_report.json").write_text(json.dumps(report, indent=2) + "\n")


# ---------------------------------------------------------------------------
# Argument parsing and dispatch
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="splitrate",
        description="Cutoff rates and error exponents for combined and split channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out", default=".", help="output directory (default: .)")
        p.add_argument(
            "--threads",
            type=int,
            default=0,
            help="worker threads for grid sweeps; 0 means auto (default: 0)",
        )

    p = sub.add_parser("massey", help="erasure-channel exponent and rate comparisons")
    p.add_argument("--eps", type=float, default=0.25, help="erasure probability (default: 0.25)")
    p.add_argument("--rates", help="rate grid start:step:end (default: 0:0.01:capacity)")
    add_common(p)

    for kind in ("bec", "bsc"):
        p = sub.add_parser(f"{kind}-split", help=f"two-copy splitting of a {kind}")
        p.add_argument(
            "--eps-grid",
            help="parameter grid start:step:end "
            f"(default: {'0:0.01:1' if kind == 'bec' else '0:0.01:0.5'})",
        )
        add_common(p)

    p = sub.add_parser("kron", help="Kronecker-power label maps on a BSC")
    p.add_argument("--k", type=int, required=True, help="largest Kronecker power (1..5)")
    p.add_argument("--eps", type=float, default=0.1, help="crossover probability (default: 0.1)")
    add_common(p)

    p = sub.add_parser("code", help="label map from a systematic generator matrix")
    p.add_argument("--generator", help="generator description file (default: bundled)")
    p.add_argument("--eps", type=float, default=0.1, help="crossover probability (default: 0.1)")
    add_common(p)

    p = sub.add_parser("channel", help="report on a user-supplied channel JSON")
    p.add_argument("--file", required=True, help="channel JSON path")
    p.add_argument("--rates", help="rates for random-coding exponents, start:step:end")
    add_common(p)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        if args.command == "massey":
            run_massey(args, out)
        elif args.command == "bec-split":
            run_split_family(args, out, "bec")
        elif args.command == "bsc-split":
            run_split_family(args, out, "bsc")
        elif args.command == "kron":
            run_kron(args, out)
        elif args.command == "code":
            run_code(args, out)
        elif args.command == "channel":
            run_channel(args, out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (
        ChannelValidationError,
        MapValidationError,
        TableBudgetError,
        MemoryBudgetError,
        gf2.SingularMatrixError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
