"""Read the toolkit's CSV outputs and draw them with matplotlib.

Two table shapes are understood: curve tables with header ``x,<label>,...``
and one row per abscissa point, and allocation tables with header
``index,rate`` plus ``# sum=`` / ``# normalized=`` trailer lines.  The
renderer never recomputes any of the numbers; it only plots what the files
contain.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

_IMAGE_SUFFIXES = (".png", ".svg")
_TRAILER_TOL = 1e-9


@dataclass(frozen=True)
class CurveTable:
    """Column-per-series data over one shared abscissa."""

    x: np.ndarray
    labels: tuple[str, ...]
    series: np.ndarray  # shape (len(labels), x.size)


@dataclass(frozen=True)
class AllocationTable:
    """Per-index rates with the file's sum/normalized trailers."""

    rates: np.ndarray  # entry i belongs to subchannel i+1
    total: float
    normalized: float


@dataclass(frozen=True)
class FigureSpec:
    """One rendering job: a CSV, how to read it, and where the image goes."""

    csv_path: Path
    kind: str  # "curves" or "allocation"
    title: str
    xlabel: str
    ylabel: str
    out_path: Path

    def __post_init__(self):
        if self.kind not in ("curves", "allocation"):
            raise ValueError(f"unknown figure kind {self.kind!r}")
        if self.out_path.suffix not in _IMAGE_SUFFIXES:
            raise ValueError(
                f"output must end in one of {_IMAGE_SUFFIXES}, got {self.out_path.name}"
            )


def _float(cell: str, path: Path) -> float:
    try:
        return float(cell)
    except ValueError:
        raise ValueError(f"{path}: non-numeric cell {cell!r}") from None


def read_curves(path) -> CurveTable:
    """Parse a curve table; raises ValueError on any format problem."""
    path = Path(path)
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0][:1] != ["x"]:
        raise ValueError(f"{path}: expected header starting with 'x'")
    labels = tuple(rows[0][1:])
    if not labels:
        raise ValueError(f"{path}: no data series in header")
    if len(rows) < 2:
        raise ValueError(f"{path}: no data rows")
    data = []
    for row in rows[1:]:
        if len(row) != len(labels) + 1:
            raise ValueError(f"{path}: row has {len(row)} cells, expected {len(labels) + 1}")
        data.append([_float(c, path) for c in row])
    arr = np.array(data, dtype=np.float64)
    return CurveTable(x=arr[:, 0], labels=labels, series=arr[:, 1:].T.copy())


def read_allocation(path) -> AllocationTable:
    """Parse an allocation table; raises ValueError on any format problem."""
    path = Path(path)
    lines = Path(path).read_text().splitlines()
    trailers = {}
    body = []
    for line in lines:
        if line.startswith("#"):
            key, _, value = line.lstrip("# ").partition("=")
            trailers[key] = _float(value, path)
        elif line:
            body.append(line)
    if not body or body[0] != "index,rate":
        raise ValueError(f"{path}: expected 'index,rate' header")
    rates = []
    for pos, line in enumerate(body[1:], start=1):
        cells = line.split(",")
        if len(cells) != 2:
            raise ValueError(f"{path}: malformed row {line!r}")
        if cells[0] != str(pos):
            raise ValueError(f"{path}: expected index {pos}, got {cells[0]!r}")
        rates.append(_float(cells[1], path))
    if not rates:
        raise ValueError(f"{path}: no allocation rows")
    for key in ("sum", "normalized"):
        if key not in trailers:
            raise ValueError(f"{path}: missing '# {key}=' trailer")
    rates = np.array(rates, dtype=np.float64)
    if abs(trailers["sum"] - rates.sum()) > _TRAILER_TOL * max(1.0, abs(trailers["sum"])):
        raise ValueError(f"{path}: sum trailer disagrees with the rows")
    return AllocationTable(
        rates=rates, total=trailers["sum"], normalized=trailers["normalized"]
    )


def build_figure(spec: FigureSpec):
    """Build the matplotlib figure for a spec without writing anything.

    Curves plot each series against column 1; allocations get a stem chart
    of rate versus 1-based subchannel index with the normalized level drawn
    as a reference line.
    """
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    if spec.kind == "curves":
        table = read_curves(spec.csv_path)
        for label, row in zip(table.labels, table.series):
            ax.plot(table.x, row, label=label)
        ax.legend()
    else:
        table = read_allocation(spec.csv_path)
        index = np.arange(1, table.rates.size + 1)
        ax.stem(index, table.rates, basefmt=" ", label="subchannel rate")
        ax.axhline(
            table.normalized,
            linestyle="--",
            color="gray",
            label=f"normalized sum = {table.normalized:.4f}",
        )
        ax.set_xticks(index)
        ax.legend()
    ax.set_title(spec.title)
    ax.set_xlabel(spec.xlabel)
    ax.set_ylabel(spec.ylabel)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    return fig


def render(spec: FigureSpec) -> Path:
    """Render one spec to its image file and return the written path."""
    fig = build_figure(spec)
    try:
        fig.savefig(spec.out_path)
    finally:
        plt.close(fig)
    return spec.out_path
