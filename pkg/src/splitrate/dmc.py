"""Discrete memoryless channels and their basic information functionals.

A channel is a row-stochastic transition matrix W(y|x).  All rates are in
bits (logarithms base 2).  The module provides the Gallager function
E0(rho, Q, W), the cutoff rate R0(W) = max_Q E0(1, Q, W), mutual
information, capacity via Blahut-Arimoto, and the product (independent
parallel use) of two channels.

Zero probabilities follow the usual conventions: 0^a = 0 for a > 0 and
0 log 0 = 0.  A zero total inside a logarithm yields an infinite rate,
returned as float('inf') rather than raising.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

ROW_SUM_TOL = 1e-12

_FIXED_POINT_TOL = 1e-12
_FIXED_POINT_MAX_ITER = 10_000
_CAPACITY_GAP_TOL = 1e-12
_CAPACITY_MAX_ITER = 100_000


class ChannelValidationError(ValueError):
    """Raised when a transition matrix is not a valid channel."""


@dataclass(frozen=True)
class Channel:
    """Finite DMC with transition probabilities prob[x, y] = W(y|x)."""

    prob: np.ndarray = field(repr=False)

    def __post_init__(self):
        p = np.asarray(self.prob, dtype=np.float64)
        object.__setattr__(self, "prob", p)
        if p.ndim != 2:
            raise ChannelValidationError("transition matrix must be 2-D")
        if p.shape[0] < 2 or p.shape[1] < 2:
            raise ChannelValidationError("need at least 2 inputs and 2 outputs")
        if np.any(p < 0):
            x = int(np.argwhere(p < 0)[0][0])
            raise ChannelValidationError(f"negative probability in row {x}")
        sums = p.sum(axis=1)
        bad = np.nonzero(np.abs(sums - 1.0) > ROW_SUM_TOL)[0]
        if bad.size:
            x = int(bad[0])
            raise ChannelValidationError(
                f"row {x} sums to {float(sums[x])!r}, not 1 within {ROW_SUM_TOL}"
            )

    @property
    def num_inputs(self) -> int:
        return self.prob.shape[0]

    @property
    def num_outputs(self) -> int:
        return self.prob.shape[1]


def validate_dist(q, size: int | None = None) -> np.ndarray:
    """Check that q is a probability vector; returns it as float64."""
    q = np.asarray(q, dtype=np.float64)
    if q.ndim != 1:
        raise ValueError("input distribution must be a vector")
    if size is not None and q.shape[0] != size:
        raise ValueError(f"distribution has length {q.shape[0]}, expected {size}")
    if np.any(q < 0) or abs(q.sum() - 1.0) > ROW_SUM_TOL:
        raise ValueError("input distribution must be nonnegative and sum to 1")
    return q


def uniform_dist(n: int) -> np.ndarray:
    return np.full(n, 1.0 / n)


# ---------------------------------------------------------------------------
# Standard constructors
# ---------------------------------------------------------------------------

def bsc(eps: float) -> Channel:
    """Binary symmetric channel with crossover probability eps in [0, 1/2]."""
    if not 0.0 <= eps <= 0.5:
        raise ValueError(f"BSC crossover must be in [0, 1/2], got {eps}")
    return Channel(np.array([[1 - eps, eps], [eps, 1 - eps]]))


def bec(eps: float) -> Channel:
    """Binary erasure channel; outputs ordered (0, 1, ?)."""
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"erasure probability must be in [0, 1], got {eps}")
    return Channel(np.array([[1 - eps, 0.0, eps], [0.0, 1 - eps, eps]]))


def mec(m: int, eps: float) -> Channel:
    """M-ary erasure channel: M inputs, M + 1 outputs, erasure column last."""
    if m < 2:
        raise ValueError(f"need at least 2 inputs, got {m}")
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"erasure probability must be in [0, 1], got {eps}")
    p = np.zeros((m, m + 1))
    np.fill_diagonal(p[:, :m], 1 - eps)
    p[:, m] = eps
    return Channel(p)


def product(w1: Channel, w2: Channel) -> Channel:
    """Independent parallel use of two channels.

    Inputs (x1, x2) and outputs (y1, y2) are indexed lexicographically with
    x1/y1 as the most significant digit, so the matrix is the Kronecker
    product of the factors.
    """
    return Channel(np.kron(w1.prob, w2.prob))


# ---------------------------------------------------------------------------
# Information functionals
# ---------------------------------------------------------------------------

def e0(rho: float, q, w: Channel) -> float:
    """Gallager's function E0(rho, Q, W) in bits.

        E0 = -log2 sum_y [ sum_x Q(x) W(y|x)^(1/(1+rho)) ]^(1+rho)

    Args:
        rho: nonnegative tilting parameter.
        q: input distribution over the channel inputs.
        w: the channel.

    Returns:
        E0 value; float('inf') if the inner total underflows to zero.
    """
    if rho < 0:
        raise ValueError(f"rho must be nonnegative, got {rho}")
    q = validate_dist(q, w.num_inputs)
    alpha = q @ np.power(w.prob, 1.0 / (1.0 + rho))
    total = float(np.sum(np.power(alpha, 1.0 + rho)))
    if total == 0.0:
        return math.inf
    return -math.log2(total)


def mutual_info(q, w: Channel) -> float:
    """Mutual information I(Q, W) in bits, with 0 log 0 = 0."""
    q = validate_dist(q, w.num_inputs)
    py = q @ w.prob
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(w.prob > 0, w.prob / np.where(py > 0, py, 1.0), 1.0)
        terms = np.where(w.prob > 0, w.prob * np.log2(ratio), 0.0)
    return float(q @ np.sum(terms, axis=1))


def _e0_objective_pieces(rho: float, w: Channel):
    """Precompute W^(1/(1+rho)) once for the fixed-point iteration."""
    return np.power(w.prob, 1.0 / (1.0 + rho))


def max_e0(rho: float, w: Channel) -> tuple[float, np.ndarray]:
    """Maximize E0(rho, Q, W) over the input simplex.

    Uses the multiplicative fixed-point iteration
        Q'(x)  proportional to  Q(x) * T(x)^(-1/rho),
        T(x) = sum_y W(y|x)^(1/(1+rho)) * alpha_y^rho,
    an alternating maximization that increases E0 monotonically.  Starts
    uniform, stops when successive values change by < 1e-12, and falls
    back to a refining simplex grid for small input alphabets if the
    iteration hits its cap without converging.

    Returns:
        (max E0 value, maximizing distribution).
    """
    if rho < 0:
        raise ValueError(f"rho must be nonnegative, got {rho}")
    m = w.num_inputs
    if rho == 0.0:
        return 0.0, uniform_dist(m)

    p = _e0_objective_pieces(rho, w)
    q = uniform_dist(m)
    logq = np.log(q)
    value = e0(rho, q, w)
    converged = False
    for _ in range(_FIXED_POINT_MAX_ITER):
        alpha = q @ p
        t = p @ np.power(alpha, rho)
        # log-domain update avoids overflow in T^(-1/rho) for small rho
        logq = logq - np.log(t) / rho
        logq -= logq.max()
        q = np.exp(logq)
        q /= q.sum()
        new_value = e0(rho, q, w)
        if abs(new_value - value) < _FIXED_POINT_TOL:
            value = max(value, new_value)
            converged = True
            break
        value = new_value
    if not converged and m <= 4:
        grid_value, grid_q = _simplex_grid_max(lambda qq: e0(rho, qq, w), m)
        if grid_value > value:
            value, q = grid_value, grid_q
    uniform_value = e0(rho, uniform_dist(m), w)
    if uniform_value > value:
        value, q = uniform_value, uniform_dist(m)
    return value, q


def _simplex_grid_max(fn, m: int, levels: int = 10):
    """Refining-grid maximization over the m-simplex (fallback path)."""
    steps = 8
    grid = [np.array(c, dtype=np.float64) / steps for c in _compositions(steps, m)]
    best_q = max(grid, key=fn)
    best = fn(best_q)
    step = 1.0 / steps
    for _ in range(levels):
        step /= 2.0
        improved = True
        while improved:
            improved = False
            for i in range(m):
                for j in range(m):
                    if i == j or best_q[i] < step:
                        continue
                    cand = best_q.copy()
                    cand[i] -= step
                    cand[j] += step
                    val = fn(cand)
                    if val > best + 1e-15:
                        best, best_q = val, cand
                        improved = True
    return best, best_q


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def cutoff_rate(w: Channel) -> float:
    """Channel cutoff rate R0(W) = max_Q E0(1, Q, W) in bits."""
    value, _ = max_e0(1.0, w)
    return value


def capacity(w: Channel) -> float:
    """Channel capacity in bits via the Blahut-Arimoto iteration.

    Iterates until the standard upper/lower capacity bounds agree to
    1e-12, so the result is well inside the 1e-9 contract.
    """
    prob = w.prob
    mask = prob > 0
    q = uniform_dist(w.num_inputs)
    for _ in range(_CAPACITY_MAX_ITER):
        py = q @ prob
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(mask, prob / np.where(py > 0, py, 1.0), 1.0)
            d = np.sum(np.where(mask, prob * np.log2(ratio), 0.0), axis=1)
        lower = float(q @ d)
        upper = float(d.max())
        if upper - lower < _CAPACITY_GAP_TOL:
            return max(lower, 0.0)
        q = q * np.exp2(d - d.max())
        q /= q.sum()
    return max(lower, 0.0)


# ---------------------------------------------------------------------------
# JSON channel files
# ---------------------------------------------------------------------------

def channel_to_json(w: Channel, meta: dict | None = None) -> dict:
    doc = {
        "inputs": w.num_inputs,
        "outputs": w.num_outputs,
        "rows": [list(map(float, row)) for row in w.prob],
    }
    if meta:
        doc["meta"] = meta
    return doc


def channel_from_json(doc: dict) -> Channel:
    try:
        n, m = int(doc["inputs"]), int(doc["outputs"])
        rows = doc["rows"]
    except (KeyError, TypeError) as exc:
        raise ChannelValidationError(f"missing channel field: {exc}") from exc
    arr = np.asarray(rows, dtype=np.float64)
    if arr.shape != (n, m):
        raise ChannelValidationError(
            f"rows have shape {arr.shape}, expected ({n}, {m})"
        )
    return Channel(arr)


def load_channel(path) -> Channel:
    with open(Path(path)) as fh:
        return channel_from_json(json.load(fh))


def save_channel(w: Channel, path, meta: dict | None = None) -> None:
    with open(Path(path), "w") as fh:
        json.dump(channel_to_json(w, meta), fh, indent=2)
        fh.write("\n")
