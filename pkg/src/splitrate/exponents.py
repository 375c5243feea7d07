"""Random-coding exponents and the M-ary erasure channel closed forms.

E_r(R, Q, W) = max over rho in [0, 1] of E0(rho, Q, W) - rho R, located by
golden-section search on the concave maximand.  For erasure channels the
module also provides the classical piecewise closed form (divergence
branch above the critical rate, straight line below) and the curves used
to compare direct coding of a quaternary erasure channel against
independent coding of its two binary-erasure subchannels.

Infinite exponents (zero-error regimes) are represented by float('inf'),
which serializes to "inf" in CSV output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .dmc import Channel, e0, max_e0, validate_dist

_GOLDEN_TOL = 1e-9
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ExponentCurve:
    """A sampled curve: ordinate values over a strictly increasing abscissa."""

    abscissa: np.ndarray = field(repr=False)
    ordinate: np.ndarray = field(repr=False)
    label: str = ""

    def __post_init__(self):
        x = np.asarray(self.abscissa, dtype=np.float64)
        y = np.asarray(self.ordinate, dtype=np.float64)
        if x.shape != y.shape or x.ndim != 1:
            raise ValueError("abscissa and ordinate must be equal-length vectors")
        if x.size > 1 and not np.all(np.diff(x) > 0):
            raise ValueError("abscissa must be strictly increasing")
        object.__setattr__(self, "abscissa", x)
        object.__setattr__(self, "ordinate", y)


@dataclass(frozen=True)
class TradeoffFigures:
    """ML decoding complexity/reliability figures for one operating point."""

    block_length: int
    rate: float
    complexity_exponent: float   # log2 of codebook size, N * R
    error_exponent_bound: float  # N * E_r

    def __post_init__(self):
        if self.block_length < 1:
            raise ValueError("block length must be at least 1")
        if self.error_exponent_bound < 0:
            raise ValueError("error exponent bound cannot be negative")


def divergence(delta: float, eps: float) -> float:
    """Binary KL divergence D(delta || eps) in bits, 0 log 0 = 0.

    For eps in {0, 1} the divergence is 0 when delta matches and infinite
    otherwise (returned as float('inf'), never raised).
    """
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"delta must be in [0, 1], got {delta}")
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"eps must be in [0, 1], got {eps}")
    if eps == 0.0:
        return 0.0 if delta == 0.0 else math.inf
    if eps == 1.0:
        return 0.0 if delta == 1.0 else math.inf
    out = 0.0
    if delta > 0.0:
        out += delta * math.log2(delta / eps)
    if delta < 1.0:
        out += (1.0 - delta) * math.log2((1.0 - delta) / (1.0 - eps))
    return out


def _golden_max(fn, lo: float, hi: float, tol: float = _GOLDEN_TOL) -> float:
    """Golden-section maximization on [lo, hi]; returns the best value seen,
    with the endpoints always evaluated explicitly."""
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = fn(c), fn(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = fn(d)
    return max(fn(lo), fn(hi), fc, fd)


def er_q(rate: float, q, w: Channel) -> float:
    """Random-coding exponent E_r(R, Q, W) at fixed input distribution."""
    if rate < 0:
        raise ValueError(f"rate must be nonnegative, got {rate}")
    q = validate_dist(q, w.num_inputs)
    value = _golden_max(lambda rho: e0(rho, q, w) - rho * rate, 0.0, 1.0)
    if -1e-12 < value < 0.0:
        return 0.0
    return value + 0.0


def er(rate: float, w: Channel) -> float:
    """Random-coding exponent E_r(R, W), maximized over input distributions.

    Evaluates max_Q E0(rho, Q, W) with the dmc fixed-point optimizer at
    each rho; a coarse pre-scan brackets the maximum before golden-section
    refinement.
    """
    if rate < 0:
        raise ValueError(f"rate must be nonnegative, got {rate}")

    def objective(rho: float) -> float:
        return max_e0(rho, w)[0] - rho * rate

    grid = np.linspace(0.0, 1.0, 33)
    values = [objective(r) for r in grid]
    i = int(np.argmax(values))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, len(grid) - 1)]
    value = _golden_max(objective, float(lo), float(hi))
    value = max(value, values[0], values[-1])
    if -1e-12 < value < 0.0:
        return 0.0
    return value + 0.0


# ---------------------------------------------------------------------------
# Erasure-channel closed forms
# ---------------------------------------------------------------------------

def erasure_capacity(m: int, eps: float) -> float:
    """Capacity (1 - eps) log2 M of the M-ary erasure channel."""
    if m < 2:
        raise ValueError(f"need M >= 2, got {m}")
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"eps must be in [0, 1], got {eps}")
    return (1.0 - eps) * math.log2(m)


def erasure_cutoff(m: int, eps: float) -> float:
    """Cutoff rate log2 M - log2[1 + (M-1) eps] of the M-ary erasure channel."""
    if m < 2:
        raise ValueError(f"need M >= 2, got {m}")
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"eps must be in [0, 1], got {eps}")
    return math.log2(m) - math.log2(1.0 + (m - 1) * eps)


def critical_rate(m: int, eps: float) -> float:
    """Critical rate C / [1 + (M-1) eps] of the M-ary erasure channel."""
    return erasure_capacity(m, eps) / (1.0 + (m - 1) * eps)


def mec_exponent(rate: float, m: int, eps: float) -> float:
    """Random-coding exponent of the M-ary erasure channel at rate R.

    Piecewise closed form: R0 - R below the critical rate, the divergence
    D(1 - R/log2 M || eps) between the critical rate and capacity.
    """
    c = erasure_capacity(m, eps)
    if not 0.0 <= rate <= c + 1e-12:
        raise ValueError(f"rate {rate} outside [0, C={c}]")
    rate = min(rate, c)
    if eps == 1.0:
        return 0.0
    rc = critical_rate(m, eps)
    if rate <= rc:
        return erasure_cutoff(m, eps) - rate
    return divergence(1.0 - rate / math.log2(m), eps)


def massey_curves(eps: float, rate_grid) -> tuple[ExponentCurve, ExponentCurve]:
    """Exponent of the quaternary erasure channel vs its split alternative.

    Returns two curves over the given rate grid: the direct exponent
    E_r(R, QEC), and the split-system exponent 2 E_r(R/2, BEC) obtained by
    coding the two binary erasure subchannels independently at rate R/2.
    """
    rates = np.asarray(rate_grid, dtype=np.float64)
    qec = np.array([mec_exponent(r, 4, eps) for r in rates])
    split = np.array([2.0 * mec_exponent(r / 2.0, 2, eps) for r in rates])
    return (
        ExponentCurve(rates, qec, "qec_exponent"),
        ExponentCurve(rates, split, "split_bec_exponent"),
    )


def massey_rate_curves(eps_grid) -> list[ExponentCurve]:
    """Capacity and cutoff-rate comparison for splitting a QEC into two BECs.

    Four series over the erasure-probability grid: C(QEC) = 2(1 - eps),
    R0(QEC) = 2 - log2(1 + 3 eps), the split sum 2 R0(BEC), and the gap
    between the last two.
    """
    eps = np.asarray(eps_grid, dtype=np.float64)
    cap = np.array([erasure_capacity(4, e) for e in eps])
    r0_qec = np.array([erasure_cutoff(4, e) for e in eps])
    split = np.array([2.0 * erasure_cutoff(2, e) for e in eps])
    return [
        ExponentCurve(eps, cap, "qec_capacity"),
        ExponentCurve(eps, r0_qec, "qec_cutoff"),
        ExponentCurve(eps, split, "split_bec_cutoff"),
        ExponentCurve(eps, split - r0_qec, "split_gain"),
    ]


def ml_tradeoff(block_length: int, rate: float, exponent: float) -> TradeoffFigures:
    """Reliability/complexity figures for ML decoding of a block-code ensemble.

    Complexity is proportional to the number of codewords 2^(N R), so its
    exponent is N R; the ensemble error bound 2^(-N E_r) contributes the
    error exponent N E_r.
    """
    if rate < 0:
        raise ValueError(f"rate must be nonnegative, got {rate}")
    return TradeoffFigures(
        block_length=block_length,
        rate=rate,
        complexity_exponent=block_length * rate,
        error_exponent_bound=block_length * exponent,
    )


# ---------------------------------------------------------------------------
# CSV output
# ---------------------------------------------------------------------------

def format_value(v: float) -> str:
    """12-significant-digit rendering; infinities come out as 'inf'."""
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.12g}"


def write_curves_csv(path, curves) -> None:
    """Write curves sharing one abscissa: header x,<label1>,..., one row per point."""
    curves = list(curves)
    if not curves:
        raise ValueError("need at least one curve")
    x = curves[0].abscissa
    for c in curves[1:]:
        if not np.array_equal(c.abscissa, x):
            raise ValueError("all curves must share the same abscissa")
    lines = ["x," + ",".join(c.label for c in curves)]
    for i in range(x.size):
        row = [format_value(float(x[i]))]
        row += [format_value(float(c.ordinate[i])) for c in curves]
        lines.append(",".join(row))
    Path(path).write_text("\n".join(lines) + "\n")
