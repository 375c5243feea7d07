"""Successive-cancellation splitting of a combined channel.

A combined channel on n input coordinates splits into n subchannels: the
decoder for coordinate i sees the full output vector plus the already
decoded coordinates u_1..u_{i-1}.  Each subchannel has a conditional
cutoff rate

    R0(U_i, Z | U_1..U_{i-1})
        = -log2 sum_v P(v) sum_z [ sum_u P(u|v) sqrt(P(z|u, v)) ]^2

with P(z|u, v) obtained by marginalizing the later coordinates under the
chain's product input law.  The chain sum of these rates, and the sum
divided by n, are the quantities of interest; they can exceed n times and
one times the base channel's cutoff rate respectively.

Two evaluation paths:

* brute force: materialize the combined table and contract one coordinate
  at a time (any base channel, any label map; limited by table size), and
* spectral: for a binary symmetric base channel, a linear label map, and
  uniform inputs, the v-sum collapses at v = 0 and each stage reduces to
  a Walsh-Hadamard transform over the dual of the span of the future map
  rows, handling sizes up to n = 26 without materializing the table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import gf2
from .combine import LabelMap, TableBudgetError
from .dmc import Channel, uniform_dist, validate_dist
from .exponents import format_value

_BRUTE_OUTPUT_BITS = 16          # brute force requires n*log2|Y| <= 16
_MEMORY_BUDGET_BYTES = 2 << 30   # dense-path working set cap
_SPECTRAL_MAX_BITS = 26
_RATE_CLAMP = 1e-12


class MemoryBudgetError(ValueError):
    """Dense evaluation would exceed the working-memory cap."""


@dataclass(frozen=True)
class ChainModel:
    """A base channel, a label map on n copies, and per-coordinate inputs."""

    base: Channel
    map: LabelMap
    dists: tuple = field(repr=False)

    def __post_init__(self):
        if self.map.alphabet_size != self.base.num_inputs:
            raise ValueError(
                f"map alphabet {self.map.alphabet_size} != "
                f"channel inputs {self.base.num_inputs}"
            )
        if len(self.dists) != self.map.copies:
            raise ValueError(
                f"need {self.map.copies} input distributions, got {len(self.dists)}"
            )
        dists = tuple(validate_dist(q, self.base.num_inputs) for q in self.dists)
        object.__setattr__(self, "dists", dists)

    @classmethod
    def uniform(cls, base: Channel, label_map: LabelMap) -> "ChainModel":
        q = uniform_dist(base.num_inputs)
        return cls(base=base, map=label_map, dists=(q,) * label_map.copies)

    @property
    def copies(self) -> int:
        return self.map.copies


@dataclass(frozen=True)
class RateAllocation:
    """Per-subchannel conditional cutoff rates with their sum and mean."""

    per_subchannel: np.ndarray = field(repr=False)
    sum: float
    normalized: float

    def __post_init__(self):
        r = np.asarray(self.per_subchannel, dtype=np.float64)
        if r.ndim != 1 or r.size == 0:
            raise ValueError("per_subchannel must be a nonempty vector")
        if not np.all(np.isfinite(r)) or r.min() < 0:
            raise ValueError("rates must be finite and nonnegative")
        object.__setattr__(self, "per_subchannel", r)

    @classmethod
    def from_rates(cls, rates) -> "RateAllocation":
        r = np.asarray(rates, dtype=np.float64)
        if r.size == 0:
            raise ValueError("per_subchannel must be a nonempty vector")
        total = float(np.sum(r))
        return cls(per_subchannel=r, sum=total, normalized=total / r.size)


def write_allocation_csv(path, alloc: RateAllocation) -> None:
    """index,rate rows (1-based) with # sum= and # normalized= trailers."""
    lines = ["index,rate"]
    for i, r in enumerate(alloc.per_subchannel, start=1):
        lines.append(f"{i},{format_value(float(r))}")
    lines.append(f"# sum={format_value(alloc.sum)}")
    lines.append(f"# normalized={format_value(alloc.normalized)}")
    Path(path).write_text("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# Brute-force path: explicit conditional tables
# ---------------------------------------------------------------------------

def _full_table(chain: ChainModel) -> np.ndarray:
    """Dense combined table W(z|u), rows indexed by the u-vector rank.

    Built here rather than through combine.synthesize because the split
    budget differs: the output alphabet is capped at 2^16 vectors and the
    working set at the memory cap, not at the synthesis cell budget.
    """
    base, label_map = chain.base, chain.map
    n = label_map.copies
    out_bits = n * math.log2(base.num_outputs)
    if out_bits > _BRUTE_OUTPUT_BITS + 1e-9:
        raise TableBudgetError(
            f"output alphabet needs {out_bits:.1f} bits (cap {_BRUTE_OUTPUT_BITS}); "
            "use spectral_chain instead"
        )
    cells = (base.num_inputs * base.num_outputs) ** n
    if 16 * cells > _MEMORY_BUDGET_BYTES:
        raise MemoryBudgetError(
            f"dense table working set {16 * cells} bytes exceeds "
            f"{_MEMORY_BUDGET_BYTES}"
        )
    prod = base.prob
    for _ in range(n - 1):
        prod = np.kron(prod, base.prob)
    return prod[chain.map.image_indices()]


def _chain_tables(chain: ChainModel):
    """Yield (i, P(z | u_1..u_i)) for i = n down to 1.

    Each step contracts the last remaining coordinate with its input
    distribution; the table for stage i has shape (q^i, |Y|^n).
    """
    table = _full_table(chain)
    q = chain.base.num_inputs
    yield chain.copies, table
    for i in range(chain.copies, 1, -1):
        m = table.reshape(-1, q, table.shape[-1])
        table = np.einsum("u,vuz->vz", chain.dists[i - 1], m)
        yield i - 1, table


def _prefix_dist(chain: ChainModel, count: int) -> np.ndarray:
    """Joint law of the first ``count`` coordinates (product of dists)."""
    p = np.ones(1)
    for q in chain.dists[:count]:
        p = np.kron(p, q)
    return p


def _clamp_rate(rate: float) -> float:
    return 0.0 if -_RATE_CLAMP < rate < 0.0 else rate + 0.0


def _stage_rate(table: np.ndarray, prefix: np.ndarray, q: np.ndarray) -> float:
    m = table.reshape(prefix.size, q.size, -1)
    inner = np.einsum("u,vuz->vz", q, np.sqrt(m))
    per_v = np.einsum("vz,vz->v", inner, inner)
    return _clamp_rate(-math.log2(float(prefix @ per_v)))


def _entropy_rows(p: np.ndarray) -> np.ndarray:
    """-sum p log2 p along the last axis, with 0 log 0 = 0."""
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(p > 0.0, p * np.log2(np.where(p > 0.0, p, 1.0)), 0.0)
    return -t.sum(axis=-1)


def _stage_mutual_info(table: np.ndarray, prefix: np.ndarray, q: np.ndarray) -> float:
    m = table.reshape(prefix.size, q.size, -1)
    cond_ent = _entropy_rows(m) @ q
    marg_ent = _entropy_rows(np.einsum("u,vuz->vz", q, m))
    return float(prefix @ (marg_ent - cond_ent))


def conditional_cutoff(i: int, chain: ChainModel) -> float:
    """Cutoff rate of subchannel i given the earlier coordinates, in bits."""
    if not 1 <= i <= chain.copies:
        raise IndexError(f"subchannel index {i} out of range 1..{chain.copies}")
    for stage, table in _chain_tables(chain):
        if stage == i:
            return _stage_rate(table, _prefix_dist(chain, i - 1), chain.dists[i - 1])
    raise AssertionError("unreachable")


def chain_rates(chain: ChainModel) -> RateAllocation:
    """All n conditional cutoff rates of the chain, by brute force."""
    rates = np.empty(chain.copies)
    for i, table in _chain_tables(chain):
        rates[i - 1] = _stage_rate(table, _prefix_dist(chain, i - 1), chain.dists[i - 1])
    return RateAllocation.from_rates(rates)


def chain_mutual_info(chain: ChainModel) -> np.ndarray:
    """Vector of I(U_i; Z | U_1..U_{i-1}) in bits, from the same joint law."""
    info = np.empty(chain.copies)
    for i, table in _chain_tables(chain):
        info[i - 1] = _stage_mutual_info(
            table, _prefix_dist(chain, i - 1), chain.dists[i - 1]
        )
    return info


# ---------------------------------------------------------------------------
# Spectral path: BSC base, linear map, uniform inputs
# ---------------------------------------------------------------------------

_POP16 = np.array([bin(x).count("1") for x in range(1 << 16)], dtype=np.uint8)


def _popcount(words: np.ndarray) -> np.ndarray:
    return _POP16[words & 0xFFFF] + _POP16[(words >> 16) & 0xFFFF]


def _subset_xor(words) -> np.ndarray:
    """XOR of every subset of ``words``; index bit j selects words[j]."""
    out = np.zeros(1 << len(words), dtype=np.int64)
    for j, w in enumerate(words):
        half = 1 << j
        out[half : 2 * half] = out[:half] ^ int(w)
    return out


def _fwht(a: np.ndarray) -> np.ndarray:
    """In-place unnormalized Walsh-Hadamard transform of a 2^k vector."""
    h = 1
    while h < a.size:
        view = a.reshape(-1, 2 * h)
        left = view[:, :h].copy()
        np.add(left, view[:, h:], out=view[:, :h])
        np.subtract(left, view[:, h:], out=view[:, h:])
        h *= 2
    return a


def _spectral_stage(eps: float, f: gf2.BitMatrix, i: int) -> float:
    """Conditional cutoff rate of stage i for bsc(eps) behind linear map f.

    With uniform inputs and a linear map the conditioning value can be
    fixed at v = 0.  P(z | u_i, v=0) is then uniform on a coset of the
    span S of the future rows, convolved with the product noise law; its
    Walsh transform is supported on the dual of S, where the noise
    transform is (1-2eps)^weight.  The Bhattacharyya sum reduces to
    2^-i * sum_t sqrt(G(t) G(t xor c)) over the i-bit dual coordinates,
    with G the transform of the dual-restricted noise spectrum and c the
    dual coordinates of row i.
    """
    n = f.rows
    future = gf2.BitMatrix(f.bits[i:])
    dual = gf2.row_space_dual(future)
    dual_words = gf2.rows_to_ints(dual)
    row_word = int(gf2.rows_to_ints(gf2.BitMatrix(f.bits[i - 1 : i]))[0])

    c = 0
    for j, w in enumerate(dual_words):
        c |= (bin(int(w) & row_word).count("1") & 1) << j

    spectrum_weights = _popcount(_subset_xor(dual_words))
    g = np.power(1.0 - 2.0 * eps, spectrum_weights, dtype=np.float64)
    _fwht(g)
    np.maximum(g, 0.0, out=g)
    np.sqrt(g, out=g)
    paired = g[np.arange(g.size, dtype=np.int64) ^ c]
    b = math.ldexp(float(g @ paired), -i)
    return _clamp_rate(1.0 - math.log2(1.0 + b))


def spectral_chain(eps: float, f: gf2.BitMatrix) -> RateAllocation:
    """Chain rates for bsc(eps) behind the linear map f, uniform inputs.

    Mathematically identical to chain_rates on the same system but never
    materializes the combined table; per-stage cost is one length-2^i
    Walsh-Hadamard transform, so n up to 26 is feasible.
    """
    if not 0.0 <= eps <= 0.5:
        raise ValueError(f"crossover probability must be in [0, 1/2], got {eps}")
    if f.rows != f.cols:
        raise ValueError(f"map matrix must be square, got {f.rows}x{f.cols}")
    if f.rows > _SPECTRAL_MAX_BITS:
        raise MemoryBudgetError(
            f"spectral path supports up to n={_SPECTRAL_MAX_BITS}, got {f.rows}"
        )
    gf2.invert(f)  # raises SingularMatrixError for non-bijective maps
    rates = np.empty(f.rows)
    for i in range(1, f.rows + 1):
        rates[i - 1] = _spectral_stage(eps, f, i)
    return RateAllocation.from_rates(rates)


def syndrome_structure(f: gf2.BitMatrix, k: int, eps: float) -> np.ndarray:
    """Effective crossover probabilities of the syndrome subchannels.

    For a map built by gf2.from_generator, subchannel i <= n-k carries the
    noise XORed along row i of the parity-check matrix H = [I | P^T],
    whose weight w_i gives an effective crossover of
    (1 - (1-2eps)^w_i) / 2, the odd-parity probability of w_i noise bits.
    The unconditioned first-stage rate of spectral_chain must match the
    cutoff rate of a plain BSC at this crossover.
    """
    n = f.rows
    if f.cols != n:
        raise ValueError(f"map matrix must be square, got {f.rows}x{f.cols}")
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
    if not 0.0 <= eps <= 0.5:
        raise ValueError(f"crossover probability must be in [0, 1/2], got {eps}")
    r = n - k
    bits = f.bits
    eye_r = np.eye(r, dtype=np.uint8)
    eye_k = np.eye(k, dtype=np.uint8)
    if (
        not np.array_equal(bits[:r, :r], eye_r)
        or bits[:r, r:].any()
        or not np.array_equal(bits[r:, r:], eye_k)
    ):
        raise ValueError("matrix does not have the generator block structure")
    weights = 1 + bits[r:, :r].sum(axis=0, dtype=np.int64)
    return 0.5 * (1.0 - np.power(1.0 - 2.0 * eps, weights, dtype=np.float64))
